#include "report.hpp"

#include <mpfr.h>

#include <algorithm>
#include <sstream>

namespace hgfq::cli {

namespace {

std::string mpfr_text(const BigFloat& x) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.15Rg", x.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

}  // namespace

std::string cyclo_decimal(const Cyclo& c) {
  if (auto q = c.as_rational()) {
    if (q->get_den() == 1) return q->get_num().get_str();
    BigFloat v(*q, 80);
    return mpfr_text(v);
  }
  ComplexApprox a = c.approx(80);
  if (c == c.conj()) return mpfr_text(a.re);
  std::string re = c + c.conj() == Cyclo() ? std::string() : mpfr_text(a.re);
  BigFloat im = a.im;
  bool neg = mpfr_sgn(im.get()) < 0;
  if (neg) im = -im;
  if (re.empty()) return (neg ? "-" : "") + mpfr_text(im) + "i";
  return re + (neg ? " - " : " + ") + mpfr_text(im) + "i";
}

Json cyclo_json(const Cyclo& c0) {
  Cyclo c = c0.minimal();
  Json j = Json::object();
  j["N"] = c.order();
  Json coeffs = Json::array();
  for (const auto& x : c.coefficients()) coeffs.push_back(x.get_str());
  j["coeffs"] = coeffs;
  j["decimal"] = cyclo_decimal(c);
  return j;
}

Json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

std::string weights_text(const Weights& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

std::string poly_text(const TPoly& p) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].is_zero()) continue;
    std::string mon = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
    auto q = p[i].as_rational();
    if (q) {
      mpq_class a = abs(*q);
      bool neg = sgn(*q) < 0;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      if (a != 1 || mon.empty()) os << a.get_str();
      os << mon;
    } else {
      os << (first ? "" : " + ") << "(" << p[i].minimal().to_string() << ")" << mon;
    }
    first = false;
  }
  return first ? "0" : os.str();
}

Json field_json(const FieldCtx& F) {
  Json j = Json::object();
  j["p"] = F.p();
  j["f"] = F.f();
  j["q"] = F.q();
  j["modulus"] = F.modulus();
  j["generator"] = F.generator();
  return j;
}

Cell cell(const std::string& s) { return {Json(s), s}; }
Cell cell(const char* s) { return cell(std::string(s)); }
Cell cell(u64 v) { return {Json(v), std::to_string(v)}; }
Cell cell(bool v) { return {Json(v), v ? "true" : "false"}; }
Cell cell(const Cyclo& c) { return {cyclo_json(c), c.minimal().to_string()}; }

Cell cell(const Weights& w) {
  Json j = Json::array();
  for (u64 x : w) j.push_back(x);
  return {j, weights_text(w)};
}

Cell cell_poly(const TPoly& p) {
  Json j = Json::array();
  for (const auto& c : p) {
    auto q = c.as_rational();
    if (q && q->get_den() == 1)
      j.push_back(integer_json(q->get_num()));
    else
      j.push_back(cyclo_json(c));
  }
  return {j, poly_text(p)};
}

std::string render(const Report& r, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    Json j = Json::object();
    j["schema"] = 1;
    j["command"] = r.command;
    j["config"] = r.config;
    if (!r.field.is_null()) j["field"] = r.field;
    Json results = Json::array();
    for (const auto& row : r.rows) {
      Json o = Json::object();
      for (std::size_t i = 0; i < r.columns.size(); ++i) o[r.columns[i]] = row[i].json;
      results.push_back(o);
    }
    j["results"] = results;
    j["summary"] = r.summary;
    j["status"] = r.status;
    if (!r.message.empty()) j["message"] = r.message;
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << csv_escape(r.columns[i]);
    os << "\n";
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i].text);
      os << "\n";
    }
  } else {
    os << "command: " << r.command << "\n";
    for (const auto& [k, v] : r.config.items()) os << "  " << k << ": " << scalar_text(v) << "\n";
    if (!r.field.is_null())
      os << "field: F_" << r.field["q"].get<u64>() << " modulus " << r.field["modulus"].dump() << ", generator "
         << r.field["generator"].get<u64>() << "\n";
    os << "\n";
    std::vector<std::size_t> width(r.columns.size());
    for (std::size_t i = 0; i < r.columns.size(); ++i) width[i] = r.columns[i].size();
    for (const auto& row : r.rows)
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].text.size());
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        s += cells[i];
        if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
      }
      os << s << "\n";
    };
    line(r.columns);
    for (const auto& row : r.rows) {
      std::vector<std::string> t;
      for (const auto& c : row) t.push_back(c.text);
      line(t);
    }
    if (!r.summary.empty()) {
      os << "\n";
      for (const auto& [k, v] : r.summary.items()) os << k << ": " << scalar_text(v) << "\n";
    }
    os << "status: " << r.status << "\n";
    if (!r.message.empty()) os << "message: " << r.message << "\n";
  }
  return os.str();
}

}  // namespace hgfq::cli
