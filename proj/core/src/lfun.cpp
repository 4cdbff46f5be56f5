#include "hgfq/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hgfq/error.hpp"
#include "hgfq/hyperf.hpp"

namespace hgfq {

namespace {

mpq_class qsign(u64 e) { return (e % 2) ? mpq_class(-1) : mpq_class(1); }

std::string weights_str(const Weights& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

mpz_class zpow(u64 b, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

// 1 + Q + ... + Q^{k-1}
mpz_class geometric(const mpz_class& Q, unsigned k) {
  mpz_class s = 0, t = 1;
  for (unsigned i = 0; i < k; ++i) {
    s += t;
    t *= Q;
  }
  return s;
}

// Power sums of two numbers with e_1 = a, e_2 = b.
Cyclo two_var_power(const Cyclo& a, const Cyclo& b, unsigned r) {
  return power_from_elementary({a, b}, r).back();
}

// Π_{i=0}^{n-2} (1 - q^i t)
TPoly tail_poly(u64 q, std::size_t n) {
  TPoly p{Cyclo(1L)};
  for (std::size_t i = 0; i + 1 < n; ++i) p = poly_mul(p, {Cyclo(1L), Cyclo(mpq_class(-zpow(q, static_cast<unsigned>(i))))});
  return p;
}

}  // namespace

// ---------------------------------------------------------------- SymPoly

SymPoly SymPoly::constant(unsigned arity, const mpq_class& c) {
  SymPoly p(arity);
  p.add_term(Monomial(arity, 0), c);
  return p;
}

SymPoly SymPoly::variable(unsigned arity, unsigned i) {
  SymPoly p(arity);
  Monomial m(arity, 0);
  m.at(i) = 1;
  p.add_term(m, 1);
  return p;
}

void SymPoly::add_term(const Monomial& m, const mpq_class& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

bool SymPoly::integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.get_den() == 1; });
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
  if (arity_ == 0 && terms_.empty()) arity_ = o.arity_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
  if (arity_ == 0 && terms_.empty()) arity_ = o.arity_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SymPoly& SymPoly::operator*=(const mpq_class& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  SymPoly out(std::max(a.arity_, b.arity_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      SymPoly::Monomial m(out.arity_, 0);
      for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      out.add_term(m, ca * cb);
    }
  return out;
}

SymPoly SymPoly::compose(const std::vector<SymPoly>& subs) const {
  if (subs.size() != arity_) throw DomainError("compose: expected " + std::to_string(arity_) + " substitutions");
  unsigned target = subs.empty() ? 0 : subs[0].arity();
  std::vector<std::vector<SymPoly>> powers(arity_);
  SymPoly out(target);
  for (const auto& [m, c] : terms_) {
    SymPoly t = constant(target, c);
    for (unsigned i = 0; i < arity_; ++i) {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target, 1));
      while (pw.size() <= m[i]) pw.push_back(pw.back() * subs[i]);
      if (m[i]) t = t * pw[m[i]];
    }
    out += t;
  }
  return out;
}

mpq_class SymPoly::operator()(const std::vector<mpq_class>& x) const {
  mpq_class s = 0;
  for (const auto& [m, c] : terms_) {
    mpq_class t = c;
    for (unsigned i = 0; i < arity_; ++i)
      for (unsigned e = 0; e < m[i]; ++e) t *= x.at(i);
    s += t;
  }
  return s;
}

Cyclo SymPoly::operator()(const std::vector<Cyclo>& x) const {
  Cyclo s;
  for (const auto& [m, c] : terms_) {
    Cyclo t(c);
    for (unsigned i = 0; i < arity_; ++i)
      if (m[i]) t *= x.at(i).pow(m[i]);
    s += t;
  }
  return s;
}

std::string SymPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    mpq_class a = abs(c);
    bool unit = a == 1;
    if (first)
      os << (sgn(c) < 0 ? "-" : "");
    else
      os << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    bool any = false;
    if (!unit) os << a.get_str();
    for (unsigned i = 0; i < arity_; ++i) {
      if (!m[i]) continue;
      os << ((any || !unit) ? "*" : "") << "x" << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
      any = true;
    }
    if (!any && unit) os << "1";
  }
  return os.str();
}

NewtonBundle newton_convert(unsigned k, unsigned R) {
  NewtonBundle b;
  b.k = k;
  std::vector<SymPoly> e;  // e[i] as a polynomial in e_1..e_k
  e.push_back(SymPoly::constant(k, 1));
  for (unsigned i = 1; i <= k; ++i) e.push_back(SymPoly::variable(k, i - 1));
  for (unsigned r = 1; r <= R; ++r) {
    SymPoly p(k);
    if (r <= k) p += e[r] * mpq_class(qsign(r - 1) * r);
    for (unsigned i = 1; i < r && i <= k; ++i) p += e[i] * b.P[r - i - 1] * qsign(i - 1);
    b.P.push_back(p);
  }
  std::vector<SymPoly> ep{SymPoly::constant(k, 1)};  // e_i in p_1..p_k
  for (unsigned i = 1; i <= k; ++i) {
    SymPoly s(k);
    for (unsigned j = 1; j <= i; ++j) s += ep[i - j] * SymPoly::variable(k, j - 1) * qsign(j - 1);
    s *= mpq_class(1, i);
    ep.push_back(s);
    b.Q.push_back(s);
  }
  for (const auto& p : b.P) b.R.push_back(k == 0 ? p : p.compose(b.Q));
  return b;
}

std::vector<Cyclo> elementary_from_power(const std::vector<Cyclo>& p) {
  std::vector<Cyclo> e{Cyclo(1L)};
  for (std::size_t i = 1; i <= p.size(); ++i) {
    Cyclo s;
    for (std::size_t j = 1; j <= i; ++j) s += e[i - j] * p[j - 1] * qsign(j - 1);
    e.push_back(s / mpq_class(static_cast<unsigned long>(i)));
  }
  e.erase(e.begin());
  return e;
}

std::vector<Cyclo> power_from_elementary(const std::vector<Cyclo>& e, unsigned R) {
  const std::size_t k = e.size();
  std::vector<Cyclo> p;
  for (std::size_t r = 1; r <= R; ++r) {
    Cyclo s;
    if (r <= k) s += e[r - 1] * mpq_class(qsign(r - 1) * static_cast<unsigned long>(r));
    for (std::size_t i = 1; i < r && i <= k; ++i) s += e[i - 1] * p[r - i - 1] * qsign(i - 1);
    p.push_back(s);
  }
  return p;
}

std::vector<Cyclo> charpoly_from_counts(const std::vector<Cyclo>& p) {
  std::vector<Cyclo> out{Cyclo(1L)};
  auto e = elementary_from_power(p);
  for (std::size_t i = 0; i < e.size(); ++i) out.push_back(e[i] * qsign(i + 1));
  return out;
}

TPoly poly_mul(const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  TPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

TPoly series_div(const TPoly& a, const TPoly& b, unsigned R) {
  if (b.empty()) throw DomainError("series_div: empty denominator");
  auto b0 = b[0].as_rational();
  if (!b0 || sgn(*b0) == 0) throw DomainError("series_div: denominator constant term must be a nonzero rational");
  TPoly c;
  for (unsigned n = 0; n <= R; ++n) {
    Cyclo s = n < a.size() ? a[n] : Cyclo();
    for (unsigned i = 1; i <= n && i < b.size(); ++i) s -= b[i] * c[n - i];
    c.push_back(s / *b0);
  }
  return c;
}

TPoly series_exp_counts(const std::vector<Cyclo>& N, unsigned R) {
  if (N.size() < R) throw DomainError("series_exp_counts: need N_1..N_R");
  TPoly L{Cyclo(1L)};
  for (unsigned n = 1; n <= R; ++n) {
    Cyclo s;
    for (unsigned r = 1; r <= n; ++r) s += N[r - 1] * L[n - r];
    L.push_back(s / mpq_class(n));
  }
  return L;
}

std::vector<Cyclo> counts_of_rational(const TPoly& num, const TPoly& den, unsigned R) {
  auto sums = [R](const TPoly& P) {
    std::vector<Cyclo> e;
    for (std::size_t i = 1; i < P.size(); ++i) e.push_back(P[i] * qsign(i));
    return power_from_elementary(e, R);
  };
  auto a = sums(num), b = sums(den);
  std::vector<Cyclo> out;
  for (unsigned r = 0; r < R; ++r) out.push_back(b[r] - a[r]);
  return out;
}

// ---------------------------------------------------------------- L-functions

unsigned dim_formula(const Surface& s, const Weights& w) {
  if (!in_W(s, w)) throw DomainError("weight vector " + weights_str(w) + " is not in W");
  unsigned k = 0;
  for (const auto& v : class_members(s, w))
    if (std::find(v.begin(), v.end(), 0) == v.end()) ++k;
  return k;
}

namespace {

Cyclo level_count(const Surface& s, const Weights& w, unsigned r, const LOptions& opt) {
  if (s.lambda == 0) return fermat_N(s, w, r);
  mpz_class Q = zpow(s.field->q(), r);
  return formula_N(s, w, r, Q <= opt.cross_check_limit);
}

}  // namespace

LSeries artin_L(const Surface& s, const Weights& w0, const LOptions& opt) {
  LSeries L;
  L.w = canonical_class(s, w0);
  const std::size_t n = s.n();
  const u64 q = s.field->q();
  const bool trivial = trivial_shift(s, L.w) >= 0;
  L.k = dim_formula(s, L.w);
  const bool perm = s.is_dwork() && is_permutation_class(L.w);
  const bool smooth = s.lambda == 0 || s.smooth();
  const unsigned R = std::max(1u, L.k + opt.extra);

  for (unsigned r = 1; r <= R; ++r) L.counts.push_back(level_count(s, L.w, r, opt));
  for (unsigned r = 1; r <= std::min(R, opt.oracle_max_r); ++r) {
    Cyclo o = oracle_N(s, r, L.w);
    if (o != L.counts[r - 1])
      throw MismatchError("oracle disagrees with the count formula for " + s.describe() + ", w=" + weights_str(L.w) +
                          ", r=" + std::to_string(r) + ": " + o.to_string() + " vs " + L.counts[r - 1].to_string());
    L.oracle_levels.push_back(r);
  }

  TPoly tail = trivial ? tail_poly(q, n) : TPoly{Cyclo(1L)};

  if (perm && !smooth) {
    // single eigenvalue c with N_r = c^r
    const u64 d = s.d;
    u64 e = (d * d - 1) * (q - 1) / (8 * d);
    mpz_class c = zpow(q, static_cast<unsigned>((d - 1) / 2));
    if (e % 2) c = -c;
    L.numerator = {Cyclo(1L)};
    L.denominator = {Cyclo(1L), Cyclo(mpq_class(-c))};
    L.charpoly = L.denominator;
    L.k = 1;
    L.provenance = "closed form (permutation class, singular fiber)";
  } else if (!smooth) {
    L.provenance = "counts only (singular fiber)";
    return L;
  } else {
    std::vector<Cyclo> p;
    for (unsigned r = 1; r <= L.k; ++r) {
      Cyclo v = L.counts[r - 1];
      if (trivial) v -= Cyclo(mpq_class(geometric(zpow(q, r), static_cast<unsigned>(n - 1))));
      p.push_back(v * qsign(n));
    }
    L.charpoly = charpoly_from_counts(p);
    if (n % 2) {
      L.numerator = L.charpoly;
      L.denominator = tail;
    } else {
      L.numerator = {Cyclo(1L)};
      L.denominator = poly_mul(tail, L.charpoly);
    }
    L.provenance = L.k ? "power sums at levels 1.." + std::to_string(L.k) : "trivial (k = 0)";
  }
  L.rational = true;
  auto predicted = counts_of_rational(L.numerator, L.denominator, R);
  for (unsigned r = 1; r <= R; ++r)
    if (predicted[r - 1] != L.counts[r - 1])
      throw MismatchError("L-function of " + s.describe() + ", w=" + weights_str(L.w) + " fails certification at r=" +
                          std::to_string(r) + ": predicted " + predicted[r - 1].to_string() + ", counted " +
                          L.counts[r - 1].to_string());
  L.certified = true;
  L.certified_through = R;
  return L;
}

std::vector<LSeries> artin_L_all(const Surface& s, const LOptions& opt) {
  std::vector<LSeries> out;
  for (const auto& w : classes(s)) out.push_back(artin_L(s, w, opt));
  return out;
}

Zeta zeta(const Surface& s, const LOptions& opt) {
  Zeta Z;
  Z.factors = artin_L_all(s, opt);
  for (const auto& L : Z.factors) {
    if (!L.rational) throw DomainError("zeta: no rational L-function for class " + weights_str(L.w) + " of " + s.describe());
    Z.numerator = poly_mul(Z.numerator, L.numerator);
    Z.denominator = poly_mul(Z.denominator, L.denominator);
  }
  Z.integral = true;
  for (auto* P : {&Z.numerator, &Z.denominator})
    for (auto& c : *P) {
      auto z = c.as_integer();
      if (!z) {
        Z.integral = false;
        continue;
      }
      c = Cyclo(*z);
    }
  if (!Z.integral) throw MismatchError("zeta of " + s.describe() + " has non-integral coefficients");
  return Z;
}

K3Closed k3_closed(const FieldPtr& field, Elem lambda, u64 m) {
  Surface s = Surface::dwork(field, 4, lambda);
  if (m == 0 || m > 3) throw DomainError("k3_closed: m must be 1, 2 or 3");
  const FieldCtx& F = *field;
  const u64 q = F.q();
  Char phi2 = char_of_order(field, 2);
  Elem l2 = F.mul(lambda, lambda);
  Elem l4 = F.mul(l2, l2);
  if (lambda == 0 || l4 == 1) throw DomainError("k3_closed: needs lambda^4 != 0, 1");
  K3Closed K;
  K.u = phi2(F.sub(1, l2));
  K.u2 = phi2(F.add(1, l2));
  K.v = K.u * K.u2 * qsign((q - 1) / 4);
  Weights w(4, m);
  Cyclo j = jacobi_w(s, w);
  std::vector<Cyclo> p;
  for (unsigned r = 1; r <= 3; ++r) p.push_back(j.pow(r) * dwork_F_red(s, w, r));
  K.Q = {Cyclo(1L), -p[0], (p[0] * p[0] - p[1]) / mpq_class(2),
         -(p[0] * p[0] * p[0] - mpq_class(3) * p[0] * p[1] + mpq_class(2) * p[2]) / mpq_class(6)};
  Cyclo qq(mpq_class(static_cast<unsigned long>(q)));
  auto lin = [](const Cyclo& a) { return TPoly{Cyclo(1L), -a}; };
  TPoly D = poly_mul(lin(Cyclo(1L)), lin(qq));
  for (int i = 0; i < 3; ++i) D = poly_mul(D, lin(K.u * qq));
  for (int i = 0; i < 3; ++i) D = poly_mul(D, lin(K.u2 * qq));
  for (int i = 0; i < 12; ++i) D = poly_mul(D, lin(K.v * qq));
  D = poly_mul(D, K.Q);
  D = poly_mul(D, lin(qq * qq));
  K.denominator = D;
  return K;
}

// ---------------------------------------------------------------- relations

CheckResult verify_relation_2f1(const FieldPtr& field, u64 d, u64 a, u64 b, u64 c, Elem lambda, unsigned r) {
  a %= d, b %= d, c %= d;
  const u64 q = field->q();
  if ((q - 1) % d) throw DomainError("2F1 relation: d must divide q - 1");
  if (c == 0 || a == 0 || b == 0 || a == c || b == c) throw DomainError("2F1 relation: need a, b not in {0, c} and c != 0");
  if ((c + 2 * d - a - b) % d != (d * (d - 1) / 2) % d) throw DomainError("2F1 relation: c - a - b must be d(d-1)/2 mod d");
  if (lambda == 0 || field->pow(lambda, static_cast<i64>(d)) == 1) throw DomainError("2F1 relation: needs lambda^d != 0, 1");
  auto value = [&](unsigned level) {
    auto T = build_tower(field, level);
    const u64 M = T->ext->order();
    const i64 st = static_cast<i64>(M / d);
    HGParams hp(T->ext, {st * static_cast<i64>(a), st * static_cast<i64>(b)}, {0, st * static_cast<i64>(c)});
    return hyperF(hp, T->ext->pow(T->embed(lambda), static_cast<i64>(d)));
  };
  Cyclo x = value(1), y = value(2), z = value(r);
  Cyclo pred = two_var_power(x, (x * x - y) / mpq_class(2), r);
  CheckResult res;
  if (pred != z) {
    res.pass = false;
    res.witness = "q=" + std::to_string(q) + ", d=" + std::to_string(d) + ", (a,b,c)=(" + std::to_string(a) + "," +
                  std::to_string(b) + "," + std::to_string(c) + "), lambda=" + std::to_string(lambda) +
                  ", r=" + std::to_string(r) + ": F=" + z.to_string() + ", predicted " + pred.to_string();
  }
  return res;
}

CheckResult verify_main4(const Surface& s, const Weights& w, unsigned r) {
  if (!s.is_dwork()) throw DomainError("verify_main4: not a Dwork surface");
  if (s.lambda == 0) throw DomainError("verify_main4: lambda = 0 is not covered");
  if (!s.smooth()) throw DomainError("verify_main4: singular fiber " + s.describe());
  const unsigned k = dim_formula(s, w);
  std::vector<Cyclo> F;
  for (unsigned i = 1; i <= k; ++i) F.push_back(dwork_F_red(s, w, i));
  Cyclo actual = r <= k ? F[r - 1] : dwork_F_red(s, w, r);
  Cyclo pred = k == 0 ? Cyclo() : power_from_elementary(elementary_from_power(F), r)[r - 1];
  CheckResult res;
  if (pred != actual) {
    res.pass = false;
    res.witness = s.describe() + ", w=" + weights_str(w) + ", k=" + std::to_string(k) + ", r=" + std::to_string(r) +
                  ": F_red=" + actual.to_string() + ", predicted " + pred.to_string();
  }
  return res;
}

CheckResult verify_hesse(const FieldPtr& field, Elem lambda, u64 m, unsigned r) {
  Surface s = Surface::dwork(field, 3, lambda);
  if (m == 0 || m > 2) throw DomainError("verify_hesse: m must be 1 or 2");
  if (!s.smooth()) throw DomainError("verify_hesse: needs lambda^3 != 0, 1");
  const u64 q = field->q();
  Char eta(field, static_cast<i64>(field->order() / 3 * m));
  Cyclo j2 = jacobi({eta, eta});
  Cyclo e2 = j2.conj().pow(2) / mpq_class(static_cast<unsigned long>(q));
  Weights w(3, m);
  Cyclo F1 = dwork_F_red(s, w, 1);
  Cyclo Fr = dwork_F_red(s, w, r);
  Cyclo pred = two_var_power(F1, e2, r);
  CheckResult res;
  if (pred != Fr) {
    res.pass = false;
    res.witness = s.describe() + ", m=" + std::to_string(m) + ", r=" + std::to_string(r) + ": F_red=" + Fr.to_string() +
                  ", predicted " + pred.to_string();
  }
  return res;
}

CheckResult verify_main5(const FieldPtr& field, u64 m, Elem lambda, unsigned r) {
  Surface s = Surface::dwork(field, 4, lambda);
  if (m == 0 || m > 3) throw DomainError("verify_main5: m must be 1, 2 or 3");
  if (!s.smooth()) throw DomainError("verify_main5: needs lambda^4 != 0, 1");
  const FieldCtx& F = *field;
  const u64 q = F.q();
  Weights w(4, m);
  Cyclo j = jacobi_w(s, w);
  Cyclo qj = j.inverse() * mpq_class(static_cast<unsigned long>(q));
  Elem l4 = F.pow(lambda, 4);
  Cyclo chi = char_of_order(field, 2)(F.sub(1, l4));
  Cyclo A = chi * qj;
  Cyclo F1 = dwork_F_red(s, w, 1);
  Cyclo Fr = dwork_F_red(s, w, r);
  Cyclo pred = A.pow(r) + two_var_power(F1 - A, qj * qj, r);
  CheckResult res;
  auto fail = [&](const std::string& why) {
    res.pass = false;
    res.witness = s.describe() + ", m=" + std::to_string(m) + ", r=" + std::to_string(r) + ": " + why;
  };
  if (pred != Fr) {
    fail("F_red=" + Fr.to_string() + ", predicted " + pred.to_string());
    return res;
  }
  // (1 - α_1 t) divides Q(t), α_1 = φ_2(1 - λ^4) q
  K3Closed K = k3_closed(field, lambda, m);
  Cyclo alpha = chi * mpq_class(static_cast<unsigned long>(q));
  Cyclo acc;
  for (std::size_t i = 0; i < K.Q.size(); ++i) acc += K.Q[i] * alpha.pow(static_cast<unsigned>(K.Q.size() - 1 - i));
  if (!acc.is_zero()) fail("1 - alpha_1 t does not divide Q(t); remainder " + acc.to_string());
  for (const auto& c : K.Q)
    if (!c.as_rational()) fail("Q(t) has a non-rational coefficient " + c.to_string());
  return res;
}

CheckResult verify_weil_F_red(const Surface& s, const Weights& w, unsigned r, double margin) {
  if (!s.is_dwork()) throw DomainError("verify_weil_F_red: not a Dwork surface");
  if (dwork_delta(w)) throw DomainError("verify_weil_F_red: needs delta(w) = 0");
  if (!s.smooth()) throw DomainError("verify_weil_F_red: singular fiber " + s.describe());
  const unsigned k = dim_formula(s, w);
  Cyclo F = dwork_F_red(s, w, r).minimal();
  const u64 N = F.order();
  CheckResult res;
  for (u64 u = 1; u <= N; ++u) {
    if (gcd(u, N) != 1) continue;
    ComplexApprox a = F.galois(static_cast<i64>(u)).approx(64);
    double m = std::hypot(a.re.to_double(), a.im.to_double());
    if (m > k + margin + a.err) {
      res.pass = false;
      res.witness = s.describe() + ", w=" + weights_str(w) + ", r=" + std::to_string(r) + ": |F_red| = " + std::to_string(m) +
                    " > k(w) = " + std::to_string(k) + " under zeta -> zeta^" + std::to_string(u);
      return res;
    }
  }
  return res;
}

// ---------------------------------------------------------------- Weil bounds

namespace {

BigComplex to_big(const ComplexApprox& a, mpfr_prec_t prec) {
  BigComplex z(prec);
  mpfr_set(z.re.get(), a.re.get(), MPFR_RNDN);
  mpfr_set(z.im.get(), a.im.get(), MPFR_RNDN);
  return z;
}

bool weil_attempt(const TPoly& cp, double R, unsigned bits, WeilResult& out) {
  const std::size_t k = cp.size() - 1;
  const mpfr_prec_t prec = bits;
  std::vector<BigComplex> c;  // monic polynomial x^k + c[1] x^{k-1} + ... + c[k]
  BigFloat coeff_err(0.0, prec);
  BigFloat cauchy(1.0, prec);
  for (std::size_t i = 0; i <= k; ++i) {
    ComplexApprox a = cp[i].approx(bits);
    c.push_back(to_big(a, prec));
    coeff_err += BigFloat(a.err, prec);
    BigFloat m = c.back().abs();
    if (i > 0 && cauchy < m + BigFloat(1.0, prec)) cauchy = m + BigFloat(1.0, prec);
  }
  auto eval = [&](const BigComplex& x) {
    BigComplex v = c[0];
    for (std::size_t i = 1; i <= k; ++i) v = v * x + c[i];
    return v;
  };
  std::vector<BigComplex> z;
  BigComplex seed(BigFloat(0.4, prec), BigFloat(0.9, prec));
  BigComplex cur(BigFloat(R, prec), BigFloat(0.0, prec));
  for (std::size_t i = 0; i < k; ++i) {
    cur = cur * seed;
    z.push_back(cur);
  }
  BigFloat eps(std::ldexp(1.0, -static_cast<int>(std::min<unsigned>(bits, 1000)) + 8), prec);
  for (int it = 0; it < 4000; ++it) {
    BigFloat change(0.0, prec);
    for (std::size_t i = 0; i < k; ++i) {
      BigComplex den(BigFloat(1.0, prec), BigFloat(0.0, prec));
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) den = den * (z[i] - z[j]);
      if (mpfr_zero_p(den.re.get()) && mpfr_zero_p(den.im.get())) continue;
      BigComplex step = eval(z[i]) / den;
      z[i] -= step;
      BigFloat a = step.abs();
      if (change < a) change = a;
    }
    if (change <= eps * BigFloat(R + 1, prec)) break;
  }
  // D = P - Π(x - z_i); every root of P lies within (|D| B^k)^{1/k} of some z_i
  std::vector<BigComplex> prod{BigComplex(BigFloat(1.0, prec), BigFloat(0.0, prec))};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<BigComplex> next(prod.size() + 1, BigComplex(prec));
    for (std::size_t j = 0; j < prod.size(); ++j) {
      next[j] += prod[j];
      next[j + 1] -= prod[j] * z[i];
    }
    prod = std::move(next);
  }
  BigFloat delta = coeff_err;
  BigFloat scale(1.0, prec);
  for (std::size_t i = 0; i < k; ++i) scale *= BigFloat(1.0, prec) + z[i].abs();
  delta += scale * BigFloat(std::ldexp(1.0, -static_cast<int>(bits) + 16), prec);
  for (std::size_t i = 0; i <= k; ++i) delta += (c[i] - prod[i]).abs();
  BigFloat bound = delta;
  for (std::size_t i = 0; i < k; ++i) bound *= cauchy;
  BigFloat rho(prec);
  mpfr_rootn_ui(rho.get(), bound.get(), static_cast<unsigned long>(k), MPFR_RNDU);
  out.moduli.clear();
  out.max_rel_error = 0;
  BigFloat Rb(R, prec);
  for (const auto& x : z) {
    BigFloat m = x.abs();
    out.moduli.push_back(m.to_double());
    double rel = ((m - Rb).abs() + rho).to_double() / R;
    out.max_rel_error = std::max(out.max_rel_error, rel);
  }
  out.precision = bits;
  return rho.to_double() / R < 1e-12;
}

}  // namespace

WeilResult weil_check(const TPoly& charpoly, u64 q, unsigned weight, unsigned bits) {
  WeilResult res;
  if (charpoly.empty() || charpoly[0] != Cyclo(1L)) throw DomainError("weil_check: charpoly must start with 1");
  TPoly cp = charpoly;
  while (cp.size() > 1 && cp.back().is_zero()) cp.pop_back();
  const std::size_t k = cp.size() - 1;
  const double R = std::pow(static_cast<double>(q), weight / 2.0);
  if (k == 0) return res;
  bool resolved = false;
  for (unsigned b = bits; b <= 8 * bits && !resolved; b *= 2) resolved = weil_attempt(cp, R, b, res);
  std::ostringstream os;
  if (!resolved) {
    res.pass = false;
    os << "root inclusion radius did not resolve at " << res.precision << " bits";
  } else if (res.max_rel_error > 1e-9) {
    res.pass = false;
    os << "reciprocal root off the circle |t| = q^(" << weight << "/2): relative error " << res.max_rel_error;
  }
  bool rational = std::all_of(cp.begin(), cp.end(), [](const Cyclo& c) { return c.as_rational().has_value(); });
  if (rational) {
    res.symmetric_checked = true;
    std::vector<mpq_class> c;
    for (const auto& x : cp) c.push_back(*x.as_rational());
    mpz_class qw = zpow(q, weight);
    mpz_class pw = 1;
    for (std::size_t i = 0; i <= k; ++i) {
      if (c[k - i] * pw != c[k] * c[i]) {
        res.pass = false;
        if (os.tellp() > 0) os << "; ";
        os << "functional equation symmetry fails at t^" << i;
        break;
      }
      pw *= qw;
    }
  }
  res.witness = os.str();
  return res;
}

}  // namespace hgfq
