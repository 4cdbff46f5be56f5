#include "commands.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "hgfq/charsum.hpp"
#include "hgfq/error.hpp"
#include "hgfq/hyperf.hpp"
#include "hgfq/suites.hpp"

namespace hgfq::cli {

namespace {

Cell null_cell() { return {Json(), ""}; }

i64 parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  i64 v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw DomainError("cannot parse " + what + " '" + s + "'");
  return v;
}

std::vector<unsigned> parse_levels(const std::string& spec) {
  std::vector<unsigned> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto dash = part.find('-', 1);
    i64 lo = 0, hi = 0;
    if (dash == std::string::npos) {
      lo = hi = parse_int(part, "level");
    } else {
      lo = parse_int(part.substr(0, dash), "level");
      hi = parse_int(part.substr(dash + 1), "level");
    }
    if (lo < 1 || hi < lo || hi > 64) throw DomainError("invalid level range '" + part + "'");
    for (i64 r = lo; r <= hi; ++r) out.push_back(static_cast<unsigned>(r));
  }
  if (out.empty()) throw DomainError("empty level range");
  return out;
}

std::string join_levels(const std::vector<unsigned>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

Surface surface_of(const Options& o, const FieldPtr& F) {
  if (o.d == 0) throw DomainError("--d is required");
  std::vector<u64> h = o.h.empty() ? std::vector<u64>(o.d, 1) : o.h;
  if (o.n && *o.n != h.size()) throw DomainError("--n does not match the length of --h");
  Elem lam = o.lambda.empty() ? F->exp(1) : parse_lambda(*F, o.lambda);
  return Surface(F, o.d, h, lam);
}

std::vector<Weights> select_classes(const Options& o, const Surface& s) {
  if (o.cls == "all") return classes(s);
  if (o.cls == "trivial") return {canonical_class(s, Weights(s.n(), 0))};
  Weights w;
  std::stringstream ss(o.cls);
  std::string part;
  while (std::getline(ss, part, ',')) {
    i64 v = parse_int(part, "class entry");
    if (v < 0) throw DomainError("class entries are residues mod d");
    w.push_back(static_cast<u64>(v) % s.d);
  }
  if (w.size() != s.n() || !in_W(s, w)) throw DomainError("'" + o.cls + "' is not a character of the surface group");
  return {canonical_class(s, w)};
}

std::string chars_text(const std::vector<i64>& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

Cell counts_cell(const std::vector<Cyclo>& c) {
  Json j = Json::array();
  std::string t;
  for (std::size_t i = 0; i < c.size(); ++i) {
    j.push_back(cyclo_json(c[i]));
    t += (i ? " " : "") + c[i].minimal().to_string();
  }
  return {j, t};
}

Json levels_json(const std::vector<unsigned>& v) {
  Json j = Json::array();
  for (unsigned x : v) j.push_back(x);
  return j;
}

Backend backend_of(const Options& o) {
  if (o.mode == "exact") return Backend::Exact;
  if (o.mode == "numeric") return Backend::Modular;
  return Backend::Auto;
}

}  // namespace

FieldPtr field_of(const Options& o) {
  if (o.p == 0) throw DomainError("--p is required");
  if (o.f == 0) throw DomainError("--f must be positive");
  return build_field(o.p, o.f);
}

Elem parse_lambda(const FieldCtx& F, const std::string& s) {
  if (s.rfind("g^", 0) == 0) return F.exp(parse_int(s.substr(2), "lambda exponent"));
  i64 v = parse_int(s, "lambda");
  if (v == 0) return 0;
  if (F.f() != 1) throw DomainError("integer literals for lambda need a prime field; use g^k");
  return F.from_int(v);
}

std::string lambda_text(const FieldCtx& F, Elem x) {
  if (x == 0) return "0";
  if (F.f() == 1) return std::to_string(x);
  return "g^" + std::to_string(F.dlog(x));
}

int cmd_gauss(const Options& o, Report& rep) {
  FieldPtr F = field_of(o);
  rep.field = field_json(*F);
  rep.columns = {"k", "order", "value", "decimal", "norm_check"};
  std::vector<i64> ks = o.ks;
  if (ks.empty())
    for (u64 k = 0; k < F->order(); ++k) ks.push_back(static_cast<i64>(k));
  const Cyclo q(static_cast<long>(F->q()));
  bool ok = true;
  for (i64 k : ks) {
    Char eta(F, k);
    Cyclo g = gauss(eta);
    bool norm = g * g.conj() == (eta.trivial() ? Cyclo(1L) : q);
    ok = ok && norm;
    rep.add_row({cell(eta.k), cell(eta.order()), cell(g), cell(cyclo_decimal(g)), cell(norm)});
  }
  rep.summary["characters"] = ks.size();
  rep.summary["norm_checks"] = ok ? "pass" : "fail";
  if (!ok) {
    rep.status = "mismatch";
    return 4;
  }
  return 0;
}

int cmd_jacobi(const Options& o, Report& rep) {
  FieldPtr F = field_of(o);
  if (o.chars.empty()) throw DomainError("--chars is required");
  rep.field = field_json(*F);
  rep.columns = {"chars", "value", "decimal", "direct", "branch", "branch_check"};
  std::vector<Char> cs;
  std::vector<i64> ex;
  bool all_trivial = true;
  Char prod(F, 0);
  for (i64 e : o.chars) {
    cs.emplace_back(F, e);
    ex.push_back(static_cast<i64>(cs.back().k));
    all_trivial = all_trivial && cs.back().trivial();
    prod = prod * cs.back();
  }
  Cyclo j = jacobi(cs);

  double work = 1;
  for (std::size_t i = 1; i < cs.size(); ++i) work *= static_cast<double>(F->order());
  Cell direct = null_cell();
  bool ok = true;
  if (work <= 4e6) {
    bool same = jacobi_direct(cs) == j;
    ok = same;
    direct = cell(same ? "match" : "mismatch");
  } else {
    direct = cell("skipped");
  }

  std::string branch = "gauss quotient";
  Cell check = null_cell();
  if (all_trivial) {
    branch = "all trivial: (1 - (1-q)^n)/q";
  } else if (prod.trivial()) {
    Elem m1 = F->neg(1);
    Cyclo expect = cs.size() == 1 ? Cyclo() : cs.back()(m1);
    if (cs.size() > 2) expect *= jacobi(std::vector<Char>(cs.begin(), cs.end() - 1));
    bool same = cs.size() >= 2 && expect == j;
    if (cs.size() >= 2) ok = ok && same;
    branch = cs.size() == 2 ? "trivial product: eta_2(-1)" : "trivial product: eta_n(-1) j(eta_1, ..., eta_{n-1})";
    check = cell(same);
  }
  rep.add_row({cell(chars_text(ex)), cell(j), cell(cyclo_decimal(j)), direct, cell(branch), check});
  rep.summary["n"] = cs.size();
  rep.summary["product_trivial"] = prod.trivial();
  if (!ok) {
    rep.status = "mismatch";
    return 4;
  }
  return 0;
}

int cmd_hyperf(const Options& o, Report& rep) {
  FieldPtr F = field_of(o);
  HGParams P(F, o.alpha, o.beta);
  if (P.alphas.empty()) throw DomainError("--alpha and --beta are required");
  rep.field = field_json(*F);
  const Backend be = backend_of(o);

  std::vector<Char> common;
  HGParams red = cancel_common(P, &common);
  const bool one_f_zero = P.alphas.size() == 1 && P.betas[0].trivial() && !P.alphas[0].trivial();

  std::vector<Elem> lams;
  if (o.lambda.empty() || o.lambda == "all")
    for (Elem l = 0; l < F->q(); ++l) lams.push_back(l);
  else
    lams.push_back(parse_lambda(*F, o.lambda));

  rep.columns = {"lambda", "value", "decimal", "reduced", "closed_form", "note"};
  std::vector<Cyclo> vals = hyperF_multi(P, lams, be);
  bool ok = true;
  for (std::size_t i = 0; i < lams.size(); ++i) {
    Elem l = lams[i];
    Cell reduced = null_cell(), closed = null_cell();
    std::string note;
    if (l == 0) note = "F(0) = 0 by convention";
    if (!common.empty() && l != 0) reduced = cell(hyperF_red(P, l, be));
    if (one_f_zero) {
      Elem om = F->sub(1, l);
      Cyclo expect = om == 0 ? Cyclo() : P.alphas[0].inverse()(om);
      bool same = l == 0 || expect == vals[i];
      ok = ok && same;
      closed = cell(same ? "conj(alpha)(1 - lambda): match" : "conj(alpha)(1 - lambda): mismatch");
    }
    rep.add_row({cell(lambda_text(*F, l)), cell(vals[i]), cell(cyclo_decimal(vals[i])), reduced, closed, cell(note)});
  }
  rep.summary["parameters"] = P.describe();
  rep.summary["disjoint"] = P.disjoint();
  Json cj = Json::array();
  for (const auto& c : common) cj.push_back(c.k);
  rep.summary["common"] = cj;
  rep.summary["reduction"] = common.empty() ? "not applicable" : "applicable: " + red.describe();
  if (!ok) {
    rep.status = "mismatch";
    return 4;
  }
  return 0;
}

int cmd_count(const Options& o, Report& rep) {
  FieldPtr F = field_of(o);
  Surface s = surface_of(o, F);
  if (o.verify != "none" && o.verify != "oracle") throw DomainError("--verify must be none or oracle");
  const bool oracle = o.verify == "oracle";
  auto levels = parse_levels(o.r);
  auto ws = select_classes(o, s);
  rep.field = field_json(*F);
  rep.summary["surface"] = s.describe();
  rep.columns = {"w", "r", "method", "N", "oracle", "match"};
  bool ok = true;
  Json totals = Json::object(), plains = Json::object();
  try {
    for (unsigned r : levels) {
      Cyclo total;
      for (const auto& w : ws) {
        FormulaResult res;
        if (s.lambda == 0)
          res = {fermat_N(s, w, r), "fermat"};
        else
          res = formula_N_detail(s, w, r);
        total += res.value;
        Cell oc = null_cell(), mc = null_cell();
        if (oracle) {
          Cyclo ov = oracle_N(s, r, w);
          bool same = ov == res.value;
          ok = ok && same;
          oc = cell(ov);
          mc = cell(same);
        }
        rep.add_row({cell(w), cell(static_cast<u64>(r)), cell(res.method), cell(res.value), oc, mc});
      }
      if (o.cls == "all") {
        auto z = total.as_integer();
        totals[std::to_string(r)] = z ? integer_json(*z) : Json(total.to_string());
        if (oracle) {
          u64 plain = oracle_count_plain(s, r);
          plains[std::to_string(r)] = plain;
          ok = ok && total == Cyclo(mpq_class(plain));
        }
      }
    }
  } catch (const BudgetError& e) {
    rep.status = "budget";
    rep.message = e.what();
    return 3;
  } catch (const MismatchError& e) {
    rep.status = "mismatch";
    rep.message = e.what();
    return 4;
  }
  if (!totals.empty()) rep.summary["projective_totals"] = totals;
  if (!plains.empty()) rep.summary["plain_oracle_totals"] = plains;
  if (oracle) rep.summary["oracle"] = ok ? "all match" : "mismatch";
  if (!ok) {
    rep.status = "mismatch";
    return 4;
  }
  return 0;
}

int cmd_lfunction(const Options& o, Report& rep) {
  FieldPtr F = field_of(o);
  Surface s = surface_of(o, F);
  auto ws = select_classes(o, s);
  rep.field = field_json(*F);
  rep.summary["surface"] = s.describe();
  rep.columns = {"w", "k", "numerator", "denominator", "charpoly", "certified", "verified_r", "oracle_r", "weil", "counts", "provenance"};
  LOptions opt;
  opt.extra = o.extra;
  opt.oracle_max_r = o.oracle_r;
  bool ok = true;
  try {
    for (const auto& w : ws) {
      LSeries L = artin_L(s, w, opt);
      Cell weil = null_cell();
      if (L.rational && L.k > 0) {
        WeilResult W = weil_check(L.charpoly, F->q(), static_cast<unsigned>(s.n() - 2));
        ok = ok && W.pass;
        weil = cell(W.pass ? "pass" : "fail: " + W.witness);
      }
      Cell num = L.rational ? cell_poly(L.numerator) : null_cell();
      Cell den = L.rational ? cell_poly(L.denominator) : null_cell();
      Cell cp = L.rational ? cell_poly(L.charpoly) : null_cell();
      Cell cnt = L.rational ? null_cell() : counts_cell(L.counts);
      std::vector<unsigned> verified;
      for (unsigned r = 1; r <= L.certified_through; ++r) verified.push_back(r);
      Cell vr{levels_json(verified), verified.empty() ? "" : "1-" + std::to_string(L.certified_through)};
      Cell orr{levels_json(L.oracle_levels), join_levels(L.oracle_levels)};
      rep.add_row({cell(w), cell(static_cast<u64>(L.k)), num, den, cp, cell(L.certified), vr, orr, weil, cnt, cell(L.provenance)});
    }
  } catch (const BudgetError& e) {
    rep.status = "budget";
    rep.message = e.what();
    return 3;
  } catch (const MismatchError& e) {
    rep.status = "mismatch";
    rep.message = e.what();
    return 4;
  }
  if (!ok) {
    rep.status = "mismatch";
    return 4;
  }
  return 0;
}

int cmd_zeta(const Options& o, Report& rep) {
  FieldPtr F = field_of(o);
  Surface s = surface_of(o, F);
  rep.field = field_json(*F);
  rep.summary["surface"] = s.describe();
  rep.columns = {"w", "k", "numerator", "denominator", "certified", "verified_r"};
  LOptions opt;
  opt.extra = o.extra;
  opt.oracle_max_r = o.oracle_r;
  bool ok = true;
  try {
    Zeta Z = zeta(s, opt);
    for (const auto& L : Z.factors) {
      Cell num = L.rational ? cell_poly(L.numerator) : null_cell();
      Cell den = L.rational ? cell_poly(L.denominator) : null_cell();
      Cell vr{Json(L.certified_through), std::to_string(L.certified_through)};
      rep.add_row({cell(L.w), cell(static_cast<u64>(L.k)), num, den, cell(L.certified), vr});
    }
    rep.summary["numerator"] = poly_text(Z.numerator);
    rep.summary["denominator"] = poly_text(Z.denominator);
    rep.summary["integral"] = Z.integral;
    TPoly series = Z.expand(o.terms);
    rep.summary["series"] = cell_poly(series).json;
    ok = Z.integral;
    if (s.is_dwork() && s.d == 4 && s.lambda != 0 && s.smooth()) {
      Json cp = Json::object();
      for (u64 m = 1; m <= 3; ++m) {
        K3Closed K = k3_closed(F, s.lambda, m);
        TPoly b = series_div({Cyclo(1L)}, K.denominator, o.terms);
        bool same = b == series;
        bool integral = true;
        for (const auto& c : K.Q) integral = integral && c.as_integer().has_value();
        CheckResult div = verify_main5(F, m, s.lambda, 1);
        ok = ok && same && integral && div.pass;
        Json e = Json::object();
        e["Q"] = poly_text(K.Q);
        e["series_match"] = same;
        e["Q_integral"] = integral;
        e["alpha_divides"] = div.pass;
        cp["m=" + std::to_string(m)] = e;
      }
      rep.summary["closed_product"] = cp;
    }
  } catch (const BudgetError& e) {
    rep.status = "budget";
    rep.message = e.what();
    return 3;
  } catch (const MismatchError& e) {
    rep.status = "mismatch";
    rep.message = e.what();
    return 4;
  }
  if (!ok) {
    rep.status = "mismatch";
    return 4;
  }
  return 0;
}

namespace {

struct FieldSpec {
  u64 p;
  unsigned f;
};

bool field_selected(const Options& o, const FieldSpec& fs) { return o.p == 0 || (o.p == fs.p && o.f == fs.f); }

using SuiteFn = std::function<std::vector<SuiteCheck>()>;

void plan_identities(const Options& o, std::vector<SuiteFn>& plan) {
  const std::vector<FieldSpec> defaults{{5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {2, 4}, {17, 1}};
  bool any = false;
  for (const auto& fs : defaults)
    if (field_selected(o, fs)) {
      plan.push_back([fs] { return identity_suite(build_field(fs.p, fs.f)); });
      any = true;
    }
  if (!any) {
    FieldPtr F = field_of(o);
    plan.push_back([F] { return identity_suite(F); });
  }
}

void plan_counts(const Options& o, std::vector<SuiteFn>& plan) {
  struct Spec {
    FieldSpec fs;
    u64 d;
    std::vector<u64> h;
  };
  const std::vector<Spec> defaults{{{7, 1}, 3, {1, 1, 1}}, {{13, 1}, 3, {1, 1, 1}}, {{13, 1}, 4, {1, 1, 1, 1}}, {{17, 1}, 4, {1, 1, 2}}};
  struct Ext {
    FieldSpec fs;
    u64 d;
    std::vector<Elem> lambdas;
    unsigned r_max;
  };
  const std::vector<Ext> ext{{{7, 1}, 3, {3, 5}, 3}, {{13, 1}, 4, {2}, 2}};
  bool any = false;
  for (const auto& sp : defaults)
    if (field_selected(o, sp.fs) && (o.d == 0 || o.d == sp.d) && (o.h.empty() || o.h == sp.h)) {
      plan.push_back([sp] { return count_suite(build_field(sp.fs.p, sp.fs.f), sp.d, sp.h); });
      any = true;
    }
  for (const auto& e : ext)
    if (field_selected(o, e.fs) && (o.d == 0 || o.d == e.d) && (o.h.empty() || o.h == std::vector<u64>(e.d, 1)))
      plan.push_back([e] { return dwork_extension_suite(build_field(e.fs.p, e.fs.f), e.d, e.lambdas, e.r_max); });
  if (!any) {
    FieldPtr F = field_of(o);
    if (o.d == 0) throw DomainError("--d is required for a non-default count suite");
    std::vector<u64> h = o.h.empty() ? std::vector<u64>(o.d, 1) : o.h;
    u64 d = o.d;
    plan.push_back([F, d, h] { return count_suite(F, d, h); });
  }
}

void plan_relations(const Options& o, std::vector<SuiteFn>& plan) {
  const std::vector<std::pair<FieldSpec, u64>> defaults{{{7, 1}, 3}, {{13, 1}, 3}, {{13, 1}, 4}};
  bool any = false;
  for (const auto& [fs, d] : defaults)
    if (field_selected(o, fs) && (o.d == 0 || o.d == d)) {
      plan.push_back([fs = fs, d = d] { return relation_suite(build_field(fs.p, fs.f), d, 3); });
      any = true;
    }
  if (!any) {
    FieldPtr F = field_of(o);
    if (o.d == 0) throw DomainError("--d is required for a non-default relation suite");
    u64 d = o.d;
    plan.push_back([F, d] { return relation_suite(F, d, 3); });
  }
}

void plan_lfun(const Options& o, std::vector<SuiteFn>& plan) {
  auto sel = [&](FieldSpec fs, u64 d) { return field_selected(o, fs) && (o.d == 0 || o.d == d); };
  std::size_t before = plan.size();
  if (sel({7, 1}, 3)) plan.push_back([] { return hesse_suite(build_field(7, 1), 3); });
  for (u64 p : {7u, 13u})
    if (sel({p, 1}, 3)) plan.push_back([p] { return permutation_suite(build_field(p, 1), 3); });
  for (u64 p : {7u, 13u})
    if (sel({p, 1}, 3))
      plan.push_back([p] {
        FieldPtr F = build_field(p, 1);
        std::vector<Elem> ls;
        for (Elem l = 1; l < F->q(); ++l)
          if (F->pow(l, 3) != 1) ls.push_back(l);
        return weil_suite(F, 3, ls);
      });
  if (sel({13, 1}, 4)) plan.push_back([] { return k3_suite(build_field(13, 1), 2); });
  if (plan.size() == before) throw DomainError("no L-function checks for this field and degree");
}

}  // namespace

int cmd_verify(const Options& o, Report& rep) {
  const std::string& su = o.suite;
  if (su != "identities" && su != "counts" && su != "relations" && su != "lfun" && su != "all")
    throw DomainError("unknown suite '" + su + "'");
  if (o.p) rep.field = field_json(*field_of(o));
  std::vector<SuiteFn> plan;
  if (su == "identities" || su == "all") plan_identities(o, plan);
  if (su == "counts" || su == "all") plan_counts(o, plan);
  if (su == "relations" || su == "all") plan_relations(o, plan);
  if (su == "lfun" || su == "all") plan_lfun(o, plan);

  rep.columns = {"suite", "check", "scope", "cases", "status", "witness"};
  u64 passed = 0, failed = 0, cases = 0;
  auto finish = [&] {
    rep.summary["checks"] = passed + failed;
    rep.summary["passed"] = passed;
    rep.summary["failed"] = failed;
    rep.summary["cases"] = cases;
  };
  try {
    for (const auto& fn : plan) {
      for (const auto& c : fn()) {
        std::cerr << "[time] " << c.suite << "/" << c.name << " (" << c.scope << "): " << c.seconds << " s\n";
        (c.pass ? passed : failed)++;
        cases += c.cases;
        rep.add_row({cell(c.suite), cell(c.name), cell(c.scope), cell(c.cases), cell(c.pass ? "pass" : "fail"),
                     cell(c.pass ? std::string() : c.witness)});
      }
    }
  } catch (const BudgetError& e) {
    finish();
    rep.status = "budget";
    rep.message = e.what();
    return 3;
  }
  finish();
  if (failed) {
    rep.status = "mismatch";
    return 4;
  }
  return 0;
}

}  // namespace hgfq::cli
