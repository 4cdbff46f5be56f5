#pragma once

#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace hgfq::cli {

struct Options {
  u64 p = 0;
  unsigned f = 1;
  std::string format = "text";
  std::string out;
  std::string mode = "auto";

  u64 d = 0;
  std::optional<std::size_t> n;
  std::vector<u64> h;
  std::string lambda;
  std::string r = "1";
  std::string cls = "all";
  std::string verify = "none";

  std::vector<i64> chars;
  std::vector<i64> alpha, beta;
  std::vector<i64> ks;

  unsigned oracle_r = 0;
  unsigned extra = 3;
  unsigned terms = 8;
  std::string suite = "all";
  std::optional<u64> fault;
};

// Each command fills the report; the return value is the exit code.
int cmd_gauss(const Options& o, Report& rep);
int cmd_jacobi(const Options& o, Report& rep);
int cmd_hyperf(const Options& o, Report& rep);
int cmd_count(const Options& o, Report& rep);
int cmd_lfunction(const Options& o, Report& rep);
int cmd_zeta(const Options& o, Report& rep);
int cmd_verify(const Options& o, Report& rep);

FieldPtr field_of(const Options& o);
Elem parse_lambda(const FieldCtx& F, const std::string& s);
std::string lambda_text(const FieldCtx& F, Elem x);

}  // namespace hgfq::cli
