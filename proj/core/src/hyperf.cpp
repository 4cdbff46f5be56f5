#include "hgfq/hyperf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "hgfq/error.hpp"

namespace hgfq {

namespace {

std::vector<u64> exps(const std::vector<Char>& cs) {
  std::vector<u64> out;
  for (const auto& c : cs) out.push_back(c.k);
  std::sort(out.begin(), out.end());
  return out;
}

using TableKey = std::tuple<const FieldCtx*, std::vector<u64>, std::vector<u64>>;
std::mutex g_table_mutex;
std::map<TableKey, std::vector<Cyclo>> g_tables;
using ValueKey = std::tuple<const FieldCtx*, std::vector<u64>, std::vector<u64>, Elem, int>;
std::map<ValueKey, Cyclo> g_values;

Cyclo mul_char(const Cyclo& x, const Char& eta, Elem lambda) {
  if (lambda == 0) return Cyclo();
  return x.mul_root(eta.modulus(), static_cast<i64>(eta.exponent_at(lambda)));
}

}  // namespace

HGParams::HGParams(FieldPtr f, const std::vector<i64>& alpha_exps, const std::vector<i64>& beta_exps) : field(std::move(f)) {
  if (alpha_exps.size() != beta_exps.size())
    throw DomainError("hypergeometric functions need as many numerator as denominator parameters");
  for (i64 a : alpha_exps) alphas.emplace_back(field, a);
  for (i64 b : beta_exps) betas.emplace_back(field, b);
}

HGParams::HGParams(std::vector<Char> a, std::vector<Char> b) : alphas(std::move(a)), betas(std::move(b)) {
  if (alphas.size() != betas.size())
    throw DomainError("hypergeometric functions need as many numerator as denominator parameters");
  if (!alphas.empty()) field = alphas.front().field;
  else if (!betas.empty()) field = betas.front().field;
  for (const auto& c : alphas)
    if (c.field != field) throw DomainError("parameters over different fields");
  for (const auto& c : betas)
    if (c.field != field) throw DomainError("parameters over different fields");
}

HGParams HGParams::canonical() const {
  HGParams out = *this;
  auto by_k = [](const Char& x, const Char& y) { return x.k < y.k; };
  std::sort(out.alphas.begin(), out.alphas.end(), by_k);
  std::sort(out.betas.begin(), out.betas.end(), by_k);
  return out;
}

bool HGParams::disjoint() const {
  for (const auto& a : alphas)
    for (const auto& b : betas)
      if (a == b) return false;
  return true;
}

std::string HGParams::describe() const {
  std::ostringstream os;
  os << "F(";
  for (std::size_t i = 0; i < alphas.size(); ++i) os << (i ? "," : "") << "phi^" << alphas[i].k;
  os << "; ";
  for (std::size_t i = 0; i < betas.size(); ++i) os << (i ? "," : "") << "phi^" << betas[i].k;
  os << ") over F_" << (field ? field->q() : 0);
  return os.str();
}

Cyclo poch(const Char& alpha, const Char& nu) { return gauss(alpha * nu) * gauss_inverse(alpha); }

Cyclo poch_circ(const Char& alpha, const Char& nu) { return gauss_circ(alpha * nu) * gauss_circ_inverse(alpha); }

CheckResult poch_multiplication(const Char& alpha, const Char& nu, u64 m) {
  const auto& F = alpha.field;
  if (m == 0 || F->order() % m != 0) throw DomainError("m must divide q - 1");
  Char phim = char_of_order(F, m);
  Cyclo mm = nu(F->pow(F->from_int(static_cast<i64>(m % F->p())), static_cast<i64>(m)));
  CheckResult res;
  for (int circ = 0; circ < 2; ++circ) {
    auto P = circ ? poch_circ : poch;
    Cyclo lhs = P(alpha.pow(static_cast<i64>(m)), nu.pow(static_cast<i64>(m)));
    Cyclo rhs = mm;
    for (u64 i = 0; i < m; ++i) rhs *= P(alpha * phim.pow(static_cast<i64>(i)), nu);
    if (lhs != rhs) {
      std::ostringstream os;
      os << "Pochhammer multiplication (" << (circ ? "circled" : "plain") << ") fails over F_" << F->q() << " at alpha=phi^"
         << alpha.k << ", nu=phi^" << nu.k << ", m=" << m;
      return {false, os.str()};
    }
  }
  return res;
}

GaussSeries hyper_series(const HGParams& params) {
  GaussSeries s;
  s.field = params.field;
  s.scalar = mpq_class(1) / mpq_class(1 - static_cast<long>(params.field->q()));
  for (const auto& a : params.alphas) {
    s.factors.push_back({static_cast<i64>(a.k), 1, 1, false});
    s.factors.push_back({static_cast<i64>(a.k), 0, -1, false});
  }
  for (const auto& b : params.betas) {
    s.factors.push_back({static_cast<i64>(b.k), 1, -1, true});
    s.factors.push_back({static_cast<i64>(b.k), 0, 1, true});
  }
  return s;
}

std::vector<Cyclo> hyperF_multi(const HGParams& params, const std::vector<Elem>& lambdas, Backend backend) {
  if (params.alphas.size() != params.betas.size())
    throw DomainError("hypergeometric functions need as many numerator as denominator parameters");
  if (!params.field) throw DomainError("hypergeometric parameters without a field");
  auto vals = evaluate(hyper_series(params.canonical()), lambdas, backend);
  for (auto& v : vals) {
    auto r = v.restrict_order(params.field->order());
    if (!r) throw MismatchError("hypergeometric value outside Q(zeta_{q-1}) for " + params.describe());
    v = *r;
  }
  return vals;
}

Cyclo hyperF(const HGParams& params, Elem lambda, Backend backend) {
  ValueKey key{params.field.get(), exps(params.alphas), exps(params.betas), lambda, static_cast<int>(backend)};
  {
    std::lock_guard<std::mutex> lock(g_table_mutex);
    auto it = g_values.find(key);
    if (it != g_values.end()) return it->second;
  }
  Cyclo v = hyperF_multi(params, {lambda}, backend).at(0);
  std::lock_guard<std::mutex> lock(g_table_mutex);
  g_values.emplace(key, v);
  return v;
}

const std::vector<Cyclo>& hyperF_table(const HGParams& params) {
  TableKey key{params.field.get(), exps(params.alphas), exps(params.betas)};
  {
    std::lock_guard<std::mutex> lock(g_table_mutex);
    auto it = g_tables.find(key);
    if (it != g_tables.end()) return it->second;
  }
  std::vector<Elem> all(params.field->q());
  for (Elem x = 0; x < all.size(); ++x) all[x] = x;
  auto vals = hyperF_multi(params, all);
  std::lock_guard<std::mutex> lock(g_table_mutex);
  return g_tables.emplace(key, std::move(vals)).first->second;
}

HGParams cancel_common(const HGParams& params, std::vector<Char>* common) {
  HGParams out = params.canonical();
  std::vector<Char> a, b, c;
  std::size_t i = 0, j = 0;
  while (i < out.alphas.size() || j < out.betas.size()) {
    if (j == out.betas.size() || (i < out.alphas.size() && out.alphas[i].k < out.betas[j].k)) {
      a.push_back(out.alphas[i++]);
    } else if (i == out.alphas.size() || out.betas[j].k < out.alphas[i].k) {
      b.push_back(out.betas[j++]);
    } else {
      c.push_back(out.alphas[i]);
      ++i;
      ++j;
    }
  }
  out.alphas = std::move(a);
  out.betas = std::move(b);
  if (common) *common = std::move(c);
  return out;
}

HGParams cancel_listed(const HGParams& params, const std::vector<Char>& listed) {
  HGParams out = params;
  for (const auto& c : listed) {
    auto ia = std::find(out.alphas.begin(), out.alphas.end(), c);
    auto ib = std::find(out.betas.begin(), out.betas.end(), c);
    if (ia == out.alphas.end() || ib == out.betas.end())
      throw DomainError("character " + hgfq::describe(c) + " is not a common parameter");
    out.alphas.erase(ia);
    out.betas.erase(ib);
  }
  if (!out.disjoint()) throw DomainError("residual parameter lists are not disjoint: " + out.describe());
  return out;
}

Cyclo hyperF_reduced(const HGParams& params, const std::vector<Char>& listed, Elem lambda) {
  return hyperF(cancel_listed(params, listed), lambda);
}

Cyclo hyperF_red(const HGParams& params, Elem lambda, Backend backend) { return hyperF(cancel_common(params), lambda, backend); }

Cyclo Reduction::recombined() const {
  Cyclo r = reduced;
  if (delta) r *= mpq_class(static_cast<long>(reduced_params.field->q()));
  return r + remainder;
}

Reduction reduce_with_remainder(const HGParams& params, Elem lambda, Backend backend) {
  Reduction red;
  red.reduced_params = cancel_common(params, &red.common);
  for (std::size_t i = 1; i < red.common.size(); ++i)
    if (red.common[i] == red.common[i - 1])
      throw DomainError("repeated common parameter " + hgfq::describe(red.common[i]) + " in " + params.describe());
  const auto& F = params.field;
  for (const auto& c : red.common)
    if (c.trivial()) red.delta = 1;
  red.reduced = hyperF(red.reduced_params, lambda, backend);
  mpq_class factor = red.delta ? mpq_class(1) : mpq_class(1, static_cast<long>(F->q()));
  Cyclo rem;
  if (lambda != 0) {
    for (const auto& c : red.common) {
      Char ci = c.inverse();
      GaussSeries s;
      s.field = F;
      s.nu_sum = false;
      for (const auto& a : red.reduced_params.alphas) {
        s.factors.push_back({static_cast<i64>((a * ci).k), 0, 1, false});
        s.factors.push_back({static_cast<i64>(a.k), 0, -1, false});
      }
      for (const auto& b : red.reduced_params.betas) {
        s.factors.push_back({static_cast<i64>((b * ci).k), 0, -1, true});
        s.factors.push_back({static_cast<i64>(b.k), 0, 1, true});
      }
      rem += mul_char(evaluate_product(s, backend).raise_order(F->order()), ci, lambda);
    }
  }
  red.remainder = (rem * factor);
  auto r = red.remainder.restrict_order(F->order());
  if (r) red.remainder = *r;
  return red;
}

void clear_hyperf_cache() {
  std::lock_guard<std::mutex> lock(g_table_mutex);
  g_tables.clear();
  g_values.clear();
}

}  // namespace hgfq
