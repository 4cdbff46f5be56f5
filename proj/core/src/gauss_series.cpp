#include "hgfq/gauss_series.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <tuple>

#include "hgfq/charsum.hpp"
#include "hgfq/error.hpp"
#include "hgfq/parallel.hpp"

namespace hgfq {

namespace {

thread_local std::size_t t_last_primes = 0;

constexpr u64 kNaiveDftLimit = 2048;
constexpr u64 kExactDimLimit = 192;

u64 reduce_exp(i64 v, u64 M) { return static_cast<u64>(mod(v, static_cast<i64>(M))); }

// ---------------------------------------------------------------- exact

Cyclo exact_factor(const FieldPtr& F, u64 k, int power, bool circled) {
  Char eta(F, static_cast<i64>(k));
  if (power >= 0) return (circled ? gauss_circ(eta) : gauss(eta)).pow(static_cast<unsigned>(power));
  return (circled ? gauss_circ_inverse(eta) : gauss_inverse(eta)).pow(static_cast<unsigned>(-power));
}

struct FactorCache {
  const FieldPtr& F;
  std::map<std::tuple<u64, int, bool>, Cyclo> values;
  const Cyclo& get(u64 k, int power, bool circled) {
    auto key = std::make_tuple(k, power, circled);
    auto it = values.find(key);
    if (it == values.end()) it = values.emplace(key, exact_factor(F, k, power, circled)).first;
    return it->second;
  }
};

std::vector<Cyclo> exact_eval(const GaussSeries& s, const std::vector<Elem>& args) {
  const FieldPtr& F = s.field;
  const u64 M = F->order();
  const u64 N = F->p() * M;
  FactorCache cache{F, {}};
  Cyclo constant(1L);
  for (const auto& f : s.factors)
    if (f.nu == 0 || !s.nu_sum) constant *= cache.get(reduce_exp(f.base, M), f.power, f.circled);
  constant = constant.raise_order(N);
  constant *= s.scalar;
  if (!s.nu_sum) {
    auto r = constant.restrict_order(M);
    return {balanced(s) && r ? *r : constant};
  }
  std::vector<Cyclo> terms(M);
  mpz_class D = 1;
  for (u64 v = 0; v < M; ++v) {
    Cyclo t = constant;
    for (const auto& f : s.factors) {
      if (f.nu == 0) continue;
      t *= cache.get(reduce_exp(f.base + f.nu * static_cast<i64>(v), M), f.power, f.circled);
    }
    terms[v] = t.raise_order(N);
    D = lcm(D, terms[v].denominator());
  }
  auto ord = CycloOrder::get(N);
  std::vector<Cyclo> out;
  out.reserve(args.size());
  for (Elem a : args) {
    if (a == 0) {
      out.emplace_back();
      continue;
    }
    u64 c = reduce_exp(s.arg_power * static_cast<i64>(F->dlog(a)), M);
    std::vector<mpz_class> acc(N);
    for (u64 v = 0; v < M; ++v) {
      const auto& t = terms[v];
      mpz_class scale = D / t.denominator();
      u64 shift = static_cast<u64>(static_cast<u128>(F->p()) * v % N * c % N);
      const auto& num = t.numerators();
      for (std::size_t i = 0; i < num.size(); ++i) {
        if (sgn(num[i]) == 0) continue;
        acc[(ord->basis_exponent(i) + shift) % N] += num[i] * scale;
      }
    }
    Cyclo v = Cyclo::from_exponent_counts(N, acc) / mpq_class(D);
    if (balanced(s)) {
      auto r = v.restrict_order(M);
      if (!r) throw MismatchError("balanced Gauss series left Q(zeta_" + std::to_string(M) + ")");
      v = *r;
    }
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------- modular

// Forward transform leaves the output in bit-reversed order; inverse expects it.
struct Ntt {
  const Montgomery& mt;
  std::size_t L;
  std::vector<u64> tw, itw;  // tw[len + k] = w_{2 len}^k
  u64 inv_len;

  Ntt(const Montgomery& m, std::size_t len, u64 root_of_len) : mt(m), L(len), tw(len), itw(len) {
    std::size_t half = L / 2;
    u64 w = mt.to(root_of_len), iw = mt.inv(w);
    u64 a = mt.one(), b = mt.one();
    for (std::size_t k = 0; k < half; ++k) {
      tw[half + k] = a;
      itw[half + k] = b;
      a = mt.mul(a, w);
      b = mt.mul(b, iw);
    }
    for (std::size_t l = half / 2; l >= 1; l /= 2)
      for (std::size_t k = 0; k < l; ++k) {
        tw[l + k] = tw[2 * l + 2 * k];
        itw[l + k] = itw[2 * l + 2 * k];
      }
    inv_len = mt.inv(mt.to(L % mt.modulus()));
  }

  void forward(std::vector<u64>& a) const {
    for (std::size_t len = L / 2; len >= 1; len /= 2)
      for (std::size_t i = 0; i < L; i += 2 * len) {
        const u64* w = &tw[len];
        for (std::size_t k = 0; k < len; ++k) {
          u64 u = a[i + k], v = a[i + k + len];
          a[i + k] = mt.add(u, v);
          a[i + k + len] = mt.mul(mt.sub(u, v), w[k]);
        }
      }
  }

  void inverse(std::vector<u64>& a) const {
    for (std::size_t len = 1; len < L; len *= 2)
      for (std::size_t i = 0; i < L; i += 2 * len) {
        const u64* w = &itw[len];
        for (std::size_t k = 0; k < len; ++k) {
          u64 u = a[i + k], v = mt.mul(a[i + k + len], w[k]);
          a[i + k] = mt.add(u, v);
          a[i + k + len] = mt.sub(u, v);
        }
      }
    for (auto& x : a) x = mt.mul(x, inv_len);
  }
};

struct Plan {
  FieldPtr F;
  u64 M = 0, e = 0, p = 0;
  bool bluestein = false;
  std::size_t L = 0;
  u64 step = 0;
  std::vector<u64> units;      // units mod e
  std::vector<u64> lifts;      // lifts coprime to M
  std::vector<u64> alt_lift;   // second lift of units[0] when e < M
  CycloOrderPtr ord;
  std::vector<i64> exps;       // arg exponents (per argument) or empty
  std::vector<bool> zero_arg;
  int bits = 0;
  mpz_class D;
  mpz_class Dnum;  // numerator of the scalar
};

// Values σ_k(D·x) mod ℓ for each unit, then coordinates in the basis of Q(ζ_e).
std::vector<std::vector<u64>> modular_prime(const Plan& P, const GaussSeries& s, u64 ell) {
  Montgomery mt(ell);
  const u64 M = P.M;
  u64 r = primitive_root(ell);
  u64 omega_std = powmod(r, (ell - 1) / M, ell);
  u64 omega_p_std = powmod(r, (ell - 1) / P.p, ell);
  u64 omega = mt.to(omega_std);
  std::vector<u64> pw(M);
  pw[0] = mt.one();
  for (u64 j = 1; j < M; ++j) pw[j] = mt.mul(pw[j - 1], omega);
  std::vector<u64> pp(P.p);
  pp[0] = mt.one();
  u64 wp = mt.to(omega_p_std);
  for (u64 j = 1; j < P.p; ++j) pp[j] = mt.mul(pp[j - 1], wp);
  const FieldCtx& F = *P.F;
  std::vector<u64> x(M);
  for (u64 j = 0; j < M; ++j) x[j] = pp[F.trace(F.exp(static_cast<i64>(j)))];

  // G[a] = -Σ_j ω^{aj} ψ(g^j)
  std::vector<u64> G(M);
  if (!P.bluestein) {
    for (u64 a = 0; a < M; ++a) {
      u64 acc = 0, idx = 0;
      for (u64 j = 0; j < M; ++j) {
        acc = mt.add(acc, mt.mul(pw[idx], x[j]));
        idx += a;
        if (idx >= M) idx -= M;
      }
      G[a] = mt.neg(acc);
    }
  } else {
    // aj = (a^2 + j^2 - (a-j)^2)/2 with β^2 = ω
    u64 beta = mt.to(powmod(r, (ell - 1) / (2 * M), ell));
    std::vector<u64> bpw(2 * M);
    bpw[0] = mt.one();
    for (u64 t = 1; t < 2 * M; ++t) bpw[t] = mt.mul(bpw[t - 1], beta);
    // t^2 mod 2M, and β^{-s} = β^{2M - s}
    std::vector<u64> sq(M);
    for (u64 t = 0, v = 0; t < M; ++t) {
      sq[t] = v;
      v += 2 * t + 1;
      while (v >= 2 * M) v -= 2 * M;
    }
    auto chirp = [&](u64 t) { return bpw[sq[t]]; };
    auto chirp_inv = [&](u64 t) { return sq[t] == 0 ? mt.one() : bpw[2 * M - sq[t]]; };
    std::vector<u64> A(P.L, 0), B(P.L, 0);
    for (u64 j = 0; j < M; ++j) A[j] = mt.mul(x[j], chirp(j));
    for (u64 t = 0; t < M; ++t) {
      u64 c = chirp_inv(t);
      B[t] = c;
      if (t) B[P.L - t] = c;
    }
    Ntt ntt(mt, P.L, powmod(r, (ell - 1) / P.L, ell));
    ntt.forward(A);
    ntt.forward(B);
    for (std::size_t i = 0; i < P.L; ++i) A[i] = mt.mul(A[i], B[i]);
    ntt.inverse(A);
    for (u64 a = 0; a < M; ++a) G[a] = mt.neg(mt.mul(A[a], chirp(a)));
  }

  u64 Qm = mt.to(F.q() % ell);
  // tables per (power, circled)
  std::map<std::pair<int, bool>, std::vector<u64>> tables;
  std::vector<u64> Ginv;
  auto ensure_inv = [&] {
    if (!Ginv.empty()) return;
    // batch inversion
    Ginv.resize(M);
    std::vector<u64> pref(M + 1);
    pref[0] = mt.one();
    for (u64 a = 0; a < M; ++a) {
      if (G[a] == 0) throw Error("Gauss sum vanished modulo a CRT prime");
      pref[a + 1] = mt.mul(pref[a], G[a]);
    }
    u64 inv = mt.inv(pref[M]);
    for (u64 a = M; a-- > 0;) {
      Ginv[a] = mt.mul(inv, pref[a]);
      inv = mt.mul(inv, G[a]);
    }
  };
  // Q-scaled inverses keep everything integral: D carries Q^{#negative}.
  for (const auto& f : s.factors) {
    auto key = std::make_pair(f.power, f.circled);
    if (tables.count(key)) continue;
    std::vector<u64> T(M);
    if (f.power >= 0) {
      for (u64 a = 0; a < M; ++a) {
        u64 g = G[a];
        if (f.circled && a == 0) g = mt.mul(g, Qm);
        T[a] = f.power == 1 ? g : mt.pow(g, static_cast<u64>(f.power));
      }
    } else {
      ensure_inv();
      for (u64 a = 0; a < M; ++a) {
        u64 g = mt.mul(Ginv[a], Qm);
        if (f.circled && a == 0) g = mt.one();  // Q / g°(ε) = 1
        T[a] = f.power == -1 ? g : mt.pow(g, static_cast<u64>(-f.power));
      }
    }
    tables.emplace(key, std::move(T));
  }

  mpz_class red = P.Dnum % mpz_class(static_cast<unsigned long>(ell));
  if (red < 0) red += static_cast<unsigned long>(ell);
  u64 scal = mt.to(red.get_ui());

  std::size_t nargs = s.nu_sum ? P.exps.size() : 1;
  auto sigma = [&](u64 k) {
    std::vector<u64> val(nargs, 0);
    u64 cst = scal;
    std::vector<const std::vector<u64>*> vt;
    std::vector<u64> idx, stepv;
    for (const auto& f : s.factors) {
      const auto& T = tables.at({f.power, f.circled});
      u64 b = static_cast<u64>(static_cast<u128>(reduce_exp(f.base, M)) * k % M);
      if (f.nu == 0 || !s.nu_sum) {
        cst = mt.mul(cst, T[b]);
      } else {
        vt.push_back(&T);
        idx.push_back(b);
        stepv.push_back(reduce_exp(f.nu, M));
      }
    }
    if (!s.nu_sum) {
      val[0] = cst;
      return val;
    }
    std::vector<u64> acc(nargs, 0), pos(nargs, 0), cs(nargs);
    for (std::size_t a = 0; a < nargs; ++a) cs[a] = P.zero_arg[a] ? 0 : static_cast<u64>(P.exps[a]);
    for (u64 v = 0; v < M; ++v) {
      u64 t = mt.one();
      for (std::size_t i = 0; i < vt.size(); ++i) {
        t = mt.mul(t, (*vt[i])[idx[i]]);
        idx[i] += stepv[i];
        if (idx[i] >= M) idx[i] -= M;
      }
      for (std::size_t a = 0; a < nargs; ++a) {
        acc[a] = mt.add(acc[a], mt.mul(t, pw[pos[a]]));
        pos[a] += cs[a];
        if (pos[a] >= M) pos[a] -= M;
      }
    }
    for (std::size_t a = 0; a < nargs; ++a) val[a] = P.zero_arg[a] ? 0 : mt.mul(cst, acc[a]);
    return val;
  };

  std::vector<std::vector<u64>> vals(P.units.size());
  for (std::size_t u = 0; u < P.units.size(); ++u) vals[u] = sigma(P.lifts[u]);
  for (u64 k : P.alt_lift) {
    if (sigma(k) != vals[0]) throw MismatchError("Gauss series value is not fixed by the expected Galois group");
  }

  // dual basis of the powerful basis of Q(ζ_e)
  const auto& comps = P.ord->components();
  std::size_t dim = P.ord->dim();
  std::vector<std::vector<std::vector<u64>>> dual(comps.size());  // [c][a][unit]
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& c = comps[ci];
    u64 Wexp = M / c.m;  // ζ_{m_c} = ζ_M^{M/m_c}
    u64 minv = mt.inv(mt.to(c.m % ell));
    dual[ci].assign(c.phi, std::vector<u64>(P.units.size()));
    for (u64 a = 0; a < c.phi; ++a) {
      u64 a2 = (a % c.t) + (c.prime - 1) * c.t;
      for (std::size_t u = 0; u < P.units.size(); ++u) {
        u64 k = P.units[u] % c.m;
        u64 e1 = (c.m - (k * a) % c.m) % c.m;
        u64 e2 = (c.m - (k * a2) % c.m) % c.m;
        dual[ci][a][u] = mt.mul(mt.sub(pw[e1 * Wexp % M], pw[e2 * Wexp % M]), minv);
      }
    }
  }
  std::vector<std::vector<u64>> coords(nargs, std::vector<u64>(dim, 0));
  std::vector<u64> row(P.units.size());
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t u = 0; u < P.units.size(); ++u) row[u] = mt.one();
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      u64 a = (i / comps[ci].basis_stride) % comps[ci].phi;
      for (std::size_t u = 0; u < P.units.size(); ++u) row[u] = mt.mul(row[u], dual[ci][a][u]);
    }
    for (std::size_t a = 0; a < nargs; ++a) {
      u64 acc = 0;
      for (std::size_t u = 0; u < P.units.size(); ++u) acc = mt.add(acc, mt.mul(vals[u][a], row[u]));
      coords[a][i] = mt.from(acc);
    }
  }
  return coords;
}

std::vector<Cyclo> modular_eval(const GaussSeries& s, const std::vector<Elem>& args) {
  if (!balanced(s)) throw DomainError("modular evaluation needs a balanced Gauss series");
  Plan P;
  P.F = s.field;
  const FieldCtx& F = *P.F;
  P.M = F.order();
  P.p = F.p();
  P.e = value_order(s);
  P.ord = CycloOrder::get(P.e);
  const u64 M = P.M;
  for (u64 k = 1; k < std::max<u64>(P.e, 2); ++k) {
    if (gcd(k, P.e) != 1) continue;
    u64 lift = k;
    while (gcd(lift, M) != 1) lift += P.e;
    P.units.push_back(k);
    P.lifts.push_back(lift % M);
  }
  if (P.e < M) {
    u64 lift = P.lifts[0] + P.e;
    while (gcd(lift, M) != 1) lift += P.e;
    if (lift % M != P.lifts[0]) P.alt_lift.push_back(lift % M);
  }
  if (s.nu_sum) {
    for (Elem a : args) {
      P.zero_arg.push_back(a == 0);
      P.exps.push_back(a == 0 ? 0 : static_cast<i64>(reduce_exp(s.arg_power * static_cast<i64>(F.dlog(a)), M)));
    }
  }
  // denominator and bound
  int negatives = 0;
  double log_bound = 0;
  double lq = std::log2(static_cast<double>(F.q()));
  for (const auto& f : s.factors) {
    if (f.power < 0) {
      negatives += -f.power;
      log_bound += -f.power * (f.circled ? 0.5 : 1.0) * lq;
    } else {
      log_bound += f.power * (f.circled ? lq : 0.5 * lq);
    }
  }
  mpz_class qpow;
  mpz_ui_pow_ui(qpow.get_mpz_t(), F.q(), static_cast<unsigned long>(negatives));
  P.D = s.scalar.get_den() * qpow;
  P.Dnum = s.scalar.get_num();
  if (s.nu_sum) log_bound += std::log2(static_cast<double>(M));
  double num_bits = sgn(s.scalar.get_num()) == 0 ? 0 : static_cast<double>(mpz_sizeinbase(s.scalar.get_num().get_mpz_t(), 2));
  log_bound += num_bits + static_cast<double>(P.ord->components().size());
  mpz_class bound = 1;
  bound <<= static_cast<unsigned long>(std::ceil(log_bound)) + 1;
  int needed_bits = static_cast<int>(std::ceil(log_bound)) + 4;

  P.bluestein = M > kNaiveDftLimit;
  P.step = lcm(P.p, M);
  if (P.bluestein) {
    P.L = 1;
    while (P.L < 2 * M - 1) P.L <<= 1;
    P.step = lcm(lcm(P.p, 2 * M), P.L);
  }
  if (P.step >= (u64{1} << 58)) throw BudgetError("no CRT primes available for this modulus");
  PrimeStream stream(P.step);
  std::size_t nprimes = static_cast<std::size_t>((needed_bits + 59) / 60);
  std::vector<u64> primes;
  for (std::size_t i = 0; i < nprimes; ++i) primes.push_back(stream.next());
  t_last_primes = primes.size();

  std::vector<std::vector<std::vector<u64>>> residues(primes.size());
  parallel_for(primes.size(), [&](std::size_t i) { residues[i] = modular_prime(P, s, primes[i]); });

  std::size_t nargs = s.nu_sum ? args.size() : 1;
  std::size_t dim = P.ord->dim();
  mpz_class modulus = 1;
  for (u64 l : primes) modulus *= static_cast<unsigned long>(l);
  std::vector<mpz_class> basis(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    mpz_class l = static_cast<unsigned long>(primes[i]);
    mpz_class rest = modulus / l;
    mpz_class inv;
    mpz_class rr = rest % l;
    mpz_invert(inv.get_mpz_t(), rr.get_mpz_t(), l.get_mpz_t());
    basis[i] = rest * inv;
  }
  mpz_class half = modulus / 2;
  std::vector<Cyclo> out;
  for (std::size_t a = 0; a < nargs; ++a) {
    if (s.nu_sum && P.zero_arg[a]) {
      out.emplace_back();
      continue;
    }
    std::vector<mpz_class> nums(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      mpz_class v = 0;
      for (std::size_t j = 0; j < primes.size(); ++j) v += basis[j] * static_cast<unsigned long>(residues[j][a][i]);
      v %= modulus;
      if (v > half) v -= modulus;
      if (abs(v) > bound) throw MismatchError("CRT reconstruction exceeded the coefficient bound");
      nums[i] = v;
    }
    out.push_back(Cyclo::from_basis(P.e, std::move(nums), P.D));
  }
  return out;
}

}  // namespace

bool balanced(const GaussSeries& s) {
  const i64 M = static_cast<i64>(s.field->order());
  i64 wb = 0, wn = 0;
  for (const auto& f : s.factors) {
    wb = mod(wb + f.power * mod(f.base, M), M);
    wn = mod(wn + f.power * mod(f.nu, M), M);
  }
  return wb == 0 && (wn == 0 || !s.nu_sum);
}

u64 value_order(const GaussSeries& s) {
  const u64 M = s.field->order();
  u64 g = M;
  for (const auto& f : s.factors) g = gcd(g, reduce_exp(f.base, M));
  return M / g;
}

namespace {
std::atomic<int> g_preference{static_cast<int>(Backend::Auto)};
}

void set_backend_preference(Backend b) { g_preference = static_cast<int>(b); }
Backend backend_preference() { return static_cast<Backend>(g_preference.load()); }

Backend choose_backend(const GaussSeries& s) {
  if (!balanced(s)) return Backend::Exact;
  Backend pref = backend_preference();
  if (pref != Backend::Auto) return pref;
  u64 N = s.field->p() * s.field->order();
  if (euler_phi(N) <= kExactDimLimit) return Backend::Exact;
  return Backend::Modular;
}

std::vector<Cyclo> evaluate(const GaussSeries& s, const std::vector<Elem>& args, Backend backend) {
  if (!s.field) throw DomainError("Gauss series without a field");
  for (Elem a : args)
    if (!s.field->contains(a)) throw DomainError("argument outside the field");
  if (backend == Backend::Auto) backend = choose_backend(s);
  if (backend == Backend::Exact) return exact_eval(s, args);
  return modular_eval(s, args);
}

Cyclo evaluate_one(const GaussSeries& s, Elem arg, Backend backend) { return evaluate(s, {arg}, backend).at(0); }

Cyclo evaluate_product(const GaussSeries& s, Backend backend) {
  GaussSeries t = s;
  t.nu_sum = false;
  return evaluate(t, {}, backend).at(0);
}

std::size_t last_prime_count() { return t_last_primes; }

}  // namespace hgfq
