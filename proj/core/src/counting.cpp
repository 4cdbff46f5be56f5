#include "hgfq/counting.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "hgfq/charsum.hpp"
#include "hgfq/error.hpp"
#include "hgfq/hyperf.hpp"
#include "hgfq/parallel.hpp"

namespace hgfq {

namespace {

constexpr u64 kTableCap = u64{1} << 28;

mpz_class zpow(u64 b, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

// (1 - Q^k)/(1 - Q) = 1 + Q + ... + Q^{k-1}
mpz_class geometric(u64 Q, unsigned k) {
  mpz_class s = 0, t = 1;
  for (unsigned i = 0; i < k; ++i) {
    s += t;
    t *= static_cast<unsigned long>(Q);
  }
  return s;
}

mpq_class sign(std::size_t e) { return (e % 2) ? mpq_class(-1) : mpq_class(1); }

std::string weights_str(const Weights& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

TowerPtr level(const Surface& s, unsigned r) { return build_tower(s.field, r); }

Elem d_times(const FieldCtx& F, u64 d, Elem x) { return F.mul(F.from_int(static_cast<i64>(d % F.p())), x); }

bool all_zero(const Weights& w) {
  return std::all_of(w.begin(), w.end(), [](u64 x) { return x == 0; });
}
bool any_zero(const Weights& w) {
  return std::any_of(w.begin(), w.end(), [](u64 x) { return x == 0; });
}

// ---------------------------------------------------------------- twisted oracle

struct TwistKey {
  const FieldCtx* field;
  u64 d;
  std::vector<u64> h;
  Elem lambda;
  unsigned r;
  bool torus, full;
  bool operator<(const TwistKey& o) const {
    return std::tie(field, d, h, lambda, r, torus, full) < std::tie(o.field, o.d, o.h, o.lambda, o.r, o.torus, o.full);
  }
};

struct TwistData {
  std::vector<std::vector<u64>> elements;  // s vectors with s_1 = 0
  std::vector<u64> counts;
};

std::mutex g_twist_mutex;
std::map<TwistKey, std::shared_ptr<const TwistData>> g_twist;

std::vector<std::vector<u64>> group_elements(const Surface& s, bool full) {
  std::vector<std::vector<u64>> out;
  const std::size_t n = s.n();
  std::vector<u64> v(n, 0);
  while (true) {
    u64 hs = 0;
    for (std::size_t i = 0; i < n; ++i) hs += s.h[i] * v[i];
    if (full || hs % s.d == 0) out.push_back(v);
    std::size_t i = n;
    while (i-- > 1) {
      if (++v[i] < s.d) break;
      v[i] = 0;
    }
    if (i == 0) break;
  }
  return out;
}

class TwistCounter {
 public:
  TwistCounter(const Surface& s, unsigned r, bool torus, const Budgets& b) : S(s), torus_(torus) {
    auto T = level(s, r);
    F = T->ext;
    Q = F->q();
    M = F->order();
    dl = s.lambda == 0 ? 0 : d_times(*F, s.d, T->embed(s.lambda));
    const u64 d = s.d;
    if (d * Q * Q > kTableCap) throw BudgetError("twisted oracle root table too large for F_" + std::to_string(Q));
    u64 work = 0;
    std::size_t n = s.n();
    for (std::size_t i0 = 0; i0 + 1 < n; ++i0) {
      u64 w = 1;
      for (std::size_t j = i0 + 1; j + 1 < n; ++j) w *= Q;
      work += w;
      if (torus) break;
    }
    u64 group = 1;
    for (std::size_t i = 1; i < n; ++i) group *= d;
    if (work > b.twisted / std::max<u64>(group, 1))
      throw BudgetError("twisted oracle over F_" + std::to_string(Q) + " exceeds the candidate budget");
    hn = s.h.back();
    table.assign(d * Q * Q, 0);
    for (u64 c = 0; c < d; ++c) {
      for (u64 b = 0; b < Q; ++b) {
        std::uint8_t* row = &table[(c * Q + b) * Q];
        for (u64 t = 0; t < M; ++t) {
          Elem a = F->exp(static_cast<i64>(c + d * t));
          Elem by = b == 0 ? 0 : F->mul(static_cast<Elem>(b), F->exp(static_cast<i64>(hn * t)));
          row[F->sub(a, by)]++;
        }
      }
    }
  }

  u64 count(const std::vector<u64>& sv) const {
    u64 total = 0;
    const std::size_t n = S.n();
    for (std::size_t i0 = 0; i0 + 1 < n; ++i0) {
      std::vector<u64> cls(n);
      for (std::size_t j = 0; j < n; ++j) cls[j] = (sv[j] + S.d - sv[i0]) % S.d;
      total += walk(cls, i0, i0 + 1, 1, 0, i0 > 0);
      if (torus_) break;
    }
    return total;
  }

 private:
  u64 walk(const std::vector<u64>& cls, std::size_t i0, std::size_t j, Elem sum, u64 T, bool prod_zero) const {
    const std::size_t n = S.n();
    const u64 d = S.d;
    const u64 dM = d * M;
    if (j + 1 == n) {
      u64 total = 0;
      if (!torus_ && sum == 0) ++total;
      u64 c = cls[j];
      Elem b = 0;
      if (!prod_zero && dl != 0) {
        u64 e = (T + hn * c) % dM;
        if (e % d != 0) throw Error("twisted oracle: non-integral monomial exponent");
        b = F->mul(dl, F->exp(static_cast<i64>(e / d)));
      }
      total += table[(c * Q + b) * Q + F->neg(sum)];
      return total;
    }
    u64 total = 0;
    if (!torus_) total += walk(cls, i0, j + 1, sum, T, true);
    for (u64 t = 0; t < M; ++t) {
      u64 e = cls[j] + d * t;
      total += walk(cls, i0, j + 1, F->add(sum, F->exp(static_cast<i64>(e))), (T + S.h[j] * e) % dM, prod_zero);
    }
    return total;
  }

  const Surface& S;
  bool torus_;
  FieldPtr F;
  u64 Q = 0, M = 0, hn = 0;
  Elem dl = 0;
  std::vector<std::uint8_t> table;
};

std::shared_ptr<const TwistData> twist_data(const Surface& s, unsigned r, bool torus, bool full, const Budgets& b) {
  TwistKey key{s.field.get(), s.d, s.h, s.lambda, r, torus, full};
  {
    std::lock_guard<std::mutex> lock(g_twist_mutex);
    auto it = g_twist.find(key);
    if (it != g_twist.end()) return it->second;
  }
  auto data = std::make_shared<TwistData>();
  data->elements = group_elements(s, full);
  TwistCounter counter(s, r, torus, b);
  data->counts.resize(data->elements.size());
  parallel_for(data->elements.size(), [&](std::size_t i) { data->counts[i] = counter.count(data->elements[i]); });
  std::lock_guard<std::mutex> lock(g_twist_mutex);
  return g_twist.emplace(key, data).first->second;
}

Cyclo average(const Surface& s, const TwistData& data, const Weights& w) {
  std::vector<i64> by_exp(s.d, 0);
  for (std::size_t i = 0; i < data.elements.size(); ++i) {
    u64 e = 0;
    for (std::size_t k = 0; k < w.size(); ++k) e += w[k] * data.elements[i][k];
    by_exp[e % s.d] += static_cast<i64>(data.counts[i]);
  }
  return Cyclo::from_exponent_counts(s.d, by_exp) / mpq_class(static_cast<long>(data.elements.size()));
}

// ---------------------------------------------------------------- formulas

Cyclo jacobi_level(const Surface& s, const Weights& w, unsigned r) { return jacobi_w(s, w).pow(r); }

Cyclo fermat_single(const Surface& s, const Weights& w, unsigned r, bool torus) {
  const u64 Q = ipow(s.field->q(), r);
  const std::size_t n = s.n();
  if (torus) {
    if (!all_zero(w)) return jacobi_level(s, w, r) * sign(n);
    mpq_class one_minus_q = mpq_class(1) - mpq_class(static_cast<unsigned long>(Q));
    mpq_class p = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) p *= one_minus_q;
    return Cyclo(sign(n) * (mpq_class(1) - p) / mpq_class(static_cast<unsigned long>(Q)));
  }
  if (all_zero(w)) return Cyclo(mpq_class(geometric(Q, static_cast<unsigned>(n - 1))));
  if (any_zero(w)) return Cyclo();
  return jacobi_level(s, w, r) * sign(n);
}

HGParams fw_hgparams(const Surface& s, const Weights& w, unsigned r, Elem* arg) {
  FwParams p = fw_params(s, w, r);
  if (arg) *arg = p.argument;
  return HGParams(p.field, p.alphas, p.betas);
}

}  // namespace

// ---------------------------------------------------------------- surface

Surface::Surface(FieldPtr f, u64 degree, std::vector<u64> weights, Elem lam)
    : field(std::move(f)), d(degree), h(std::move(weights)), lambda(lam) {
  if (!field) throw DomainError("surface without a field");
  if (d < 2) throw DomainError("degree must be at least 2");
  if (h.size() < 2) throw DomainError("need at least two variables");
  u64 sum = 0, g = d;
  for (u64 x : h) {
    if (x == 0) throw DomainError("weights must be positive");
    sum += x;
    g = gcd(g, x);
  }
  if (sum != d) throw DomainError("weights must sum to the degree");
  if (g != 1) throw DomainError("gcd(d, h_1, ..., h_n) must be 1");
  if (field->order() % d != 0) throw DomainError("d must divide q - 1");
  if (!field->contains(lambda)) throw DomainError("lambda outside the field");
}

Surface Surface::dwork(FieldPtr f, u64 degree, Elem lam) { return Surface(std::move(f), degree, std::vector<u64>(degree, 1), lam); }

bool Surface::is_dwork() const {
  return n() == d && std::all_of(h.begin(), h.end(), [](u64 x) { return x == 1; });
}

bool Surface::smooth() const {
  Elem v = field->pow(lambda, static_cast<i64>(d));
  for (u64 x : h) v = field->mul(v, field->pow(field->from_int(static_cast<i64>(x % field->p())), static_cast<i64>(x)));
  return v != 1;
}

bool Surface::hyper_route(unsigned r) const {
  u64 Qm1 = ipow(field->q(), r) - 1;
  for (u64 x : h)
    if (Qm1 % (d * x) != 0) return false;
  return true;
}

Surface Surface::with_lambda(Elem lam) const { return Surface(field, d, h, lam); }

std::string Surface::describe() const {
  std::ostringstream os;
  os << "D(d=" << d << ", h=" << weights_str(h) << ", lambda=";
  if (lambda == 0)
    os << "0";
  else
    os << "g^" << field->dlog(lambda);
  os << ") over F_" << field->q();
  return os.str();
}

bool in_W(const Surface& s, const Weights& w) {
  if (w.size() != s.n()) return false;
  u64 t = 0;
  for (u64 x : w) {
    if (x >= s.d) return false;
    t += x;
  }
  return t % s.d == 0;
}

std::vector<Weights> class_members(const Surface& s, const Weights& w) {
  if (!in_W(s, w)) throw DomainError("weight vector " + weights_str(w) + " is not in W");
  std::vector<Weights> out;
  for (u64 m = 0; m < s.d; ++m) {
    Weights v(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = (w[i] + m * s.h[i]) % s.d;
    out.push_back(v);
  }
  return out;
}

Weights canonical_class(const Surface& s, const Weights& w) {
  auto m = class_members(s, w);
  return *std::min_element(m.begin(), m.end());
}

int trivial_shift(const Surface& s, const Weights& w) {
  auto m = class_members(s, Weights(w.size(), 0));
  for (std::size_t k = 0; k < m.size(); ++k)
    if (m[k] == w) return static_cast<int>(k);
  return -1;
}

std::vector<Weights> full_lattice(const Surface& s) {
  std::vector<Weights> out;
  const std::size_t n = s.n();
  Weights v(n, 0);
  while (true) {
    if (in_W(s, v)) out.push_back(v);
    std::size_t i = n;
    while (i-- > 0) {
      if (++v[i] < s.d) break;
      v[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::vector<Weights> classes(const Surface& s) {
  std::vector<Weights> out;
  for (const auto& w : full_lattice(s))
    if (canonical_class(s, w) == w) out.push_back(w);
  return out;
}

int dwork_delta(const Weights& w) { return std::find(w.begin(), w.end(), 0) != w.end() ? 1 : 0; }

std::vector<u64> multiplicities(u64 d, const Weights& w) {
  std::vector<u64> m(d, 0);
  for (u64 x : w) m.at(x)++;
  return m;
}

bool is_permutation_class(const Weights& w) {
  auto m = multiplicities(w.size(), w);
  return std::all_of(m.begin(), m.end(), [](u64 x) { return x == 1; });
}

Budgets default_budgets() {
  Budgets b;
  if (const char* v = std::getenv("HGFQ_BUDGET_PLAIN")) b.plain = std::strtoull(v, nullptr, 10);
  if (const char* v = std::getenv("HGFQ_BUDGET_TWISTED")) b.twisted = std::strtoull(v, nullptr, 10);
  return b;
}

// ---------------------------------------------------------------- oracles

u64 oracle_count_plain(const Surface& s, unsigned r, const Budgets& b) {
  auto T = level(s, r);
  const FieldCtx& F = *T->ext;
  const u64 Q = F.q();
  const std::size_t n = s.n();
  if (Q * Q > kTableCap) throw BudgetError("plain oracle table too large for F_" + std::to_string(Q));
  u64 work = 0;
  for (std::size_t i0 = 0; i0 + 1 < n; ++i0) {
    u64 w = 1;
    for (std::size_t j = i0 + 1; j + 1 < n; ++j) w *= Q;
    work += w;
  }
  if (work > b.plain) throw BudgetError("plain oracle over F_" + std::to_string(Q) + " exceeds the lookup budget");
  Elem dl = d_times(F, s.d, T->embed(s.lambda));
  const u64 hn = s.h.back();
  std::vector<Elem> xd(Q), xh(Q);
  for (Elem x = 0; x < Q; ++x) {
    xd[x] = F.pow(x, static_cast<i64>(s.d));
    xh[x] = F.pow(x, static_cast<i64>(hn));
  }
  // table[c][v] = #{x : x^d - c x^{h_n} = v}
  std::vector<std::uint8_t> table(Q * Q, 0);
  for (Elem c = 0; c < Q; ++c)
    for (Elem x = 0; x < Q; ++x) table[c * Q + F.sub(xd[x], F.mul(c, xh[x]))]++;
  std::vector<std::vector<Elem>> xw(n);
  for (std::size_t i = 0; i < n; ++i) {
    xw[i].resize(Q);
    for (Elem x = 0; x < Q; ++x) xw[i][x] = F.pow(x, static_cast<i64>(s.h[i]));
  }
  u64 total = 0;
  for (std::size_t i0 = 0; i0 + 1 < n; ++i0) {
    std::size_t free = n - 2 - i0;
    Elem P0 = i0 > 0 ? 0 : 1;
    if (free == 0) {
      total += table[F.mul(dl, P0) * Q + F.neg(1)];
      continue;
    }
    // split on the first free coordinate across workers
    std::vector<u64> part(Q, 0);
    parallel_for(Q, [&](std::size_t x1) {
      u64 acc = 0;
      std::vector<Elem> idx(free, 0);
      idx[0] = static_cast<Elem>(x1);
      while (true) {
        Elem S = 1, P = P0;
        for (std::size_t k = 0; k < free; ++k) {
          S = F.add(S, xd[idx[k]]);
          P = F.mul(P, xw[i0 + 1 + k][idx[k]]);
        }
        acc += table[F.mul(dl, P) * Q + F.neg(S)];
        std::size_t k = free;
        while (k-- > 1) {
          if (++idx[k] < Q) break;
          idx[k] = 0;
        }
        if (k == 0) break;
      }
      part[x1] = acc;
    });
    for (u64 v : part) total += v;
  }
  return total;
}

u64 oracle_count_twisted(const Surface& s, unsigned r, const std::vector<u64>& xi, bool torus_only, const Budgets& b) {
  if (xi.size() != s.n()) throw DomainError("twist has the wrong length");
  std::vector<u64> v(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) v[i] = (xi[i] % s.d + s.d - xi[0] % s.d) % s.d;
  TwistCounter counter(s, r, torus_only, b);
  return counter.count(v);
}

Cyclo oracle_N(const Surface& s, unsigned r, const Weights& w, bool torus_only, bool full_group, const Budgets& b) {
  if (!in_W(s, w)) throw DomainError("weight vector " + weights_str(w) + " is not in W");
  auto data = twist_data(s, r, torus_only, full_group, b);
  return average(s, *data, w);
}

std::vector<Cyclo> oracle_N_all(const Surface& s, unsigned r, bool torus_only, const Budgets& b) {
  auto data = twist_data(s, r, torus_only, false, b);
  std::vector<Cyclo> out;
  for (const auto& w : classes(s)) out.push_back(average(s, *data, w));
  return out;
}

// ---------------------------------------------------------------- formulas

Cyclo jacobi_w(const Surface& s, const Weights& w) {
  GaussSeries gs;
  gs.field = s.field;
  gs.nu_sum = false;
  gs.scalar = mpq_class(1, static_cast<long>(s.field->q()));
  const u64 step = s.field->order() / s.d;
  for (u64 x : w) gs.factors.push_back({static_cast<i64>(x * step), 0, 1, false});
  Cyclo v = evaluate_product(gs);
  return v.raise_order(s.field->order()).minimal();
}

FwParams fw_params(const Surface& s, const Weights& w, unsigned r) {
  if (!s.hyper_route(r)) throw DomainError("d h_i must divide q^r - 1 for the hypergeometric route");
  auto T = level(s, r);
  FwParams p;
  p.field = T->ext;
  const u64 M = p.field->order();
  for (std::size_t i = 0; i < s.n(); ++i) {
    u64 step = M / (s.d * s.h[i]);
    for (u64 j = 0; j < s.h[i]; ++j) p.alphas.push_back(static_cast<i64>(step * (w[i] + s.d * j)));
  }
  for (u64 k = 0; k < s.d; ++k) p.betas.push_back(static_cast<i64>(M / s.d * k));
  const FieldCtx& F = *p.field;
  Elem c = 1;
  for (u64 x : s.h) c = F.mul(c, F.pow(F.from_int(static_cast<i64>(x % F.p())), static_cast<i64>(x)));
  p.argument = s.lambda == 0 ? 0 : F.mul(c, F.pow(T->embed(s.lambda), static_cast<i64>(s.d)));
  return p;
}

Cyclo koblitz_N_star(const Surface& s, const Weights& w, unsigned r) {
  if (s.lambda == 0) throw DomainError("N* formulas need lambda != 0; use fermat_N");
  if (!in_W(s, w)) throw DomainError("weight vector " + weights_str(w) + " is not in W");
  auto T = level(s, r);
  const FieldPtr& F = T->ext;
  const u64 Q = F->q();
  const u64 M = F->order();
  const std::size_t n = s.n();
  GaussSeries gs;
  gs.field = F;
  gs.scalar = sign(n) / mpq_class(1 - static_cast<long>(Q));
  gs.arg_power = static_cast<i64>(s.d);
  u64 wsum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    gs.factors.push_back({static_cast<i64>(M / s.d * w[i]), static_cast<i64>(s.h[i]), 1, false});
    wsum += w[i];
  }
  gs.factors.push_back({static_cast<i64>(M / s.d * wsum), static_cast<i64>(s.d), -1, true});
  Cyclo v = evaluate_one(gs, d_times(*F, s.d, T->embed(s.lambda)));
  if (trivial_shift(s, w) >= 0) {
    mpq_class one_minus_q = mpq_class(1) - mpq_class(static_cast<unsigned long>(Q));
    mpq_class p = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) p *= one_minus_q;
    v += Cyclo(sign(n - 1) * p / mpq_class(static_cast<unsigned long>(Q)));
  }
  return v;
}

Cyclo hyper_N_star(const Surface& s, const Weights& w, unsigned r) {
  if (s.lambda == 0) throw DomainError("N* formulas need lambda != 0; use fermat_N");
  Elem arg = 0;
  HGParams hp = fw_hgparams(s, w, r, &arg);
  const u64 Q = hp.field->q();
  const std::size_t n = s.n();
  Cyclo F = hyperF(hp, arg);
  int m = trivial_shift(s, w);
  Cyclo j = jacobi_level(s, w, r);
  if (m < 0) return j * F * sign(n);
  mpq_class one_minus_q = mpq_class(1) - mpq_class(static_cast<unsigned long>(Q));
  mpq_class p = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) p *= one_minus_q;
  Cyclo tail(sign(n - 1) * p / mpq_class(static_cast<unsigned long>(Q)));
  if (m == 0) return F * (sign(n) / mpq_class(static_cast<unsigned long>(Q))) + tail;
  return j * F * sign(n) + tail;
}

Cyclo formula_N_star(const Surface& s, const Weights& w, unsigned r) {
  Cyclo k = koblitz_N_star(s, w, r);
  if (s.hyper_route(r)) {
    Cyclo h = hyper_N_star(s, w, r);
    if (k != h)
      throw MismatchError("N* routes disagree for " + s.describe() + ", w=" + weights_str(w) + ", r=" + std::to_string(r) +
                          ": Jacobi route " + k.to_string() + ", hypergeometric route " + h.to_string());
  }
  return k;
}

Cyclo fermat_N(const Surface& s, const Weights& w, unsigned r, bool torus_only, bool full_group) {
  if (!in_W(s, w)) throw DomainError("weight vector " + weights_str(w) + " is not in W");
  if (full_group) return fermat_single(s, w, r, torus_only);
  Cyclo total;
  for (const auto& v : class_members(s, w)) total += fermat_single(s, v, r, torus_only);
  return total;
}

Cyclo correction_C(const Surface& s, const Weights& w, unsigned r) {
  Cyclo c;
  for (const auto& v : class_members(s, w))
    if (any_zero(v) && !all_zero(v)) c += jacobi_level(s, v, r);
  return c * sign(s.n() - 1);
}

Cyclo decomposition_N(const Surface& s, const Weights& w, unsigned r) {
  Cyclo v = koblitz_N_star(s, w, r);
  return v + fermat_N(s, w, r, false) - fermat_N(s, w, r, true);
}

FormulaResult general_N_detail(const Surface& s, const Weights& w, unsigned r) {
  if (s.lambda == 0) throw DomainError("formula_N needs lambda != 0; use fermat_N");
  if (!in_W(s, w)) throw DomainError("weight vector " + weights_str(w) + " is not in W");
  FormulaResult res;
  if (!s.hyper_route(r)) {
    res.value = decomposition_N(s, w, r);
    res.method = "koblitz";
    return res;
  }
  const u64 Q = ipow(s.field->q(), r);
  const std::size_t n = s.n();
  int m = trivial_shift(s, w);
  Elem arg = 0;
  HGParams hp = fw_hgparams(s, w, r, &arg);
  Cyclo C = correction_C(s, w, r);
  if (m < 0) {
    res.value = jacobi_level(s, w, r) * hyperF(hp, arg) * sign(n) + C;
    res.method = "projective";
    return res;
  }
  const u64 M = hp.field->order();
  Char phim(hp.field, static_cast<i64>(M / s.d * static_cast<u64>(m)));
  HGParams red = hp;
  auto ia = std::find(red.alphas.begin(), red.alphas.end(), phim);
  auto ib = std::find(red.betas.begin(), red.betas.end(), phim);
  if (ia == red.alphas.end() || ib == red.betas.end()) throw Error("reduction: parameter missing");
  red.alphas.erase(ia);
  red.betas.erase(ib);
  Cyclo Fr = hyperF(red, arg);
  Cyclo v = m == 0 ? Fr : jacobi_level(s, w, r) * Fr;
  res.value = v * sign(n) + Cyclo(mpq_class(geometric(Q, static_cast<unsigned>(n - 1)))) + C;
  res.method = "reduced";
  return res;
}

FormulaResult formula_N_detail(const Surface& s, const Weights& w, unsigned r, bool cross_check) {
  if (s.lambda == 0) throw DomainError("formula_N needs lambda != 0; use fermat_N");
  if (!in_W(s, w)) throw DomainError("weight vector " + weights_str(w) + " is not in W");
  FormulaResult res;
  if (s.is_dwork()) {
    res.value = dwork_N(s, w, r);
    res.method = "dwork";
  } else {
    res = general_N_detail(s, w, r);
    if (res.method == "koblitz") return res;
  }
  if (!cross_check) return res;
  Cyclo reference = decomposition_N(s, w, r);
  if (res.value != reference)
    throw MismatchError("projective formula disagrees with the N* decomposition for " + s.describe() + ", w=" + weights_str(w) +
                        ", r=" + std::to_string(r) + ": " + res.value.to_string() + " vs " + reference.to_string());
  return res;
}

Cyclo formula_N(const Surface& s, const Weights& w, unsigned r, bool cross_check) {
  return formula_N_detail(s, w, r, cross_check).value;
}

Cyclo dwork_F_red(const Surface& s, const Weights& w, unsigned r) {
  if (!s.is_dwork()) throw DomainError("not a Dwork surface: " + s.describe());
  auto T = level(s, r);
  const u64 M = T->ext->order();
  std::vector<i64> a, b;
  for (u64 x : w) a.push_back(static_cast<i64>(M / s.d * x));
  for (u64 k = 0; k < s.d; ++k) b.push_back(static_cast<i64>(M / s.d * k));
  HGParams hp(T->ext, a, b);
  return hyperF_red(hp, T->ext->pow(T->embed(s.lambda), static_cast<i64>(s.d)));
}

Cyclo dwork_N(const Surface& s, const Weights& w, unsigned r) {
  if (!s.is_dwork()) throw DomainError("not a Dwork surface: " + s.describe());
  if (s.lambda == 0) throw DomainError("dwork_N needs lambda != 0");
  if (!in_W(s, w)) throw DomainError("weight vector " + weights_str(w) + " is not in W");
  const u64 q = s.field->q();
  const u64 Q = ipow(q, r);
  const u64 d = s.d;
  int delta = dwork_delta(w);
  if (trivial_shift(s, w) >= 0) {
    Cyclo F = dwork_F_red(s, w, r);
    Cyclo v = delta ? F : jacobi_level(s, w, r) * F;
    return v * sign(d) + Cyclo(mpq_class(geometric(Q, static_cast<unsigned>(d - 1))));
  }
  if (is_permutation_class(w)) {
    Elem ld = s.field->pow(s.lambda, static_cast<i64>(d));
    if (ld != 1) return Cyclo();
    u64 e = static_cast<u64>(r) * (d * d - 1) * (q - 1) / (8 * d);
    mpz_class v = zpow(q, static_cast<unsigned>(r * (d - 1) / 2));
    return Cyclo(mpq_class(e % 2 ? -v : v));
  }
  Cyclo j = jacobi_w(s, w);
  if (delta) j *= mpq_class(static_cast<unsigned long>(q));
  return j.pow(r) * dwork_F_red(s, w, r) * sign(d);
}

void clear_counting_caches() {
  std::lock_guard<std::mutex> lock(g_twist_mutex);
  g_twist.clear();
}

}  // namespace hgfq
