#pragma once

#include <string>
#include <vector>

#include "hgfq/counting.hpp"
#include "hgfq/lfun.hpp"
#include "json.hpp"

namespace hgfq::cli {

using Json = nlohmann::ordered_json;

struct Cell {
  Json json;
  std::string text;
};

Cell cell(const std::string& s);
Cell cell(const char* s);
Cell cell(u64 v);
Cell cell(bool v);
Cell cell(const Cyclo& c);
Cell cell(const Weights& w);
Cell cell_poly(const TPoly& p);

Json cyclo_json(const Cyclo& c);
std::string cyclo_decimal(const Cyclo& c);
std::string poly_text(const TPoly& p);
Json integer_json(const mpz_class& z);
Json field_json(const FieldCtx& F);
std::string weights_text(const Weights& w);

struct Report {
  std::string command;
  Json config = Json::object();
  Json field;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  Json summary = Json::object();
  std::string status = "ok";
  std::string message;

  void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

std::string render(const Report& r, const std::string& format);

}  // namespace hgfq::cli
