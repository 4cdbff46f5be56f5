#include "hgfq/cyclo.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "hgfq/error.hpp"

namespace hgfq {

namespace {

std::mutex g_order_mutex;
std::map<u64, CycloOrderPtr> g_orders;

mpz_class to_mpz(__int128 v) {
  bool negative = v < 0;
  unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mpz_class hi = static_cast<unsigned long>(static_cast<u64>(u >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<u64>(u));
  mpz_class r = (hi << 64) + lo;
  return negative ? mpz_class(-r) : r;
}

void sub_from(i64& a, const i64& v) { a -= v; }
void sub_from(__int128& a, const __int128& v) { a -= v; }
void sub_from(mpz_class& a, const mpz_class& v) { a -= v; }
bool nonzero(const i64& v) { return v != 0; }
bool nonzero(const __int128& v) { return v != 0; }
bool nonzero(const mpz_class& v) { return sgn(v) != 0; }

struct Term {
  u64 exponent;
  const mpz_class* coeff;
};

std::size_t bits_of(const mpz_class& v) { return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

std::size_t log2_ceil(u64 v) {
  std::size_t b = 0;
  while ((u64{1} << b) < v) ++b;
  return b;
}

// Sum of coefficient * ζ_n^exponent over the terms, reduced into the basis.
std::vector<mpz_class> reduce_terms(const CycloOrder& ord, const std::vector<Term>& terms) {
  std::size_t maxbits = 0;
  for (const auto& t : terms) maxbits = std::max(maxbits, bits_of(*t.coeff));
  std::size_t bound = maxbits + log2_ceil(terms.size() + 1) + ord.components().size() + 2;
  std::vector<mpz_class> out(ord.dim());
  if (bound < 62) {
    std::vector<i64> acc(ord.n(), 0), red;
    for (const auto& t : terms) acc[t.exponent % ord.n()] += t.coeff->get_si();
    ord.reduce(acc, red);
    for (std::size_t i = 0; i < red.size(); ++i)
      if (red[i] != 0) out[i] = static_cast<long>(red[i]);
  } else {
    std::vector<mpz_class> acc(ord.n()), red;
    for (const auto& t : terms) acc[t.exponent % ord.n()] += *t.coeff;
    ord.reduce(acc, red);
    out = std::move(red);
  }
  return out;
}

}  // namespace

CycloOrder::CycloOrder(u64 n) : n_(n) {
  if (n == 0) throw DomainError("cyclotomic order must be positive");
  for (auto& [p, k] : factor(n)) {
    Component c{};
    c.prime = p;
    c.m = ipow(p, k);
    c.t = c.m / p;
    c.phi = c.m - c.t;
    c.inv = c.m == 1 ? 0 : invmod((n / c.m) % c.m, c.m);
    comps_.push_back(c);
  }
  u64 gs = 1, bs = 1;
  for (std::size_t i = comps_.size(); i-- > 0;) {
    comps_[i].grid_stride = gs;
    comps_[i].basis_stride = bs;
    gs *= comps_[i].m;
    bs *= comps_[i].phi;
  }
  exp_grid_.resize(n);
  for (u64 e = 0; e < n; ++e) {
    u64 g = 0;
    for (const auto& c : comps_) g += static_cast<u64>(static_cast<u128>(e) * c.inv % c.m) * c.grid_stride;
    exp_grid_[e] = static_cast<std::uint32_t>(g);
  }
  basis_exp_.resize(bs);
  basis_grid_.resize(bs);
  for (u64 b = 0; b < bs; ++b) {
    u64 e = 0, g = 0;
    for (const auto& c : comps_) {
      u64 a = (b / c.basis_stride) % c.phi;
      e = (e + a * (n / c.m)) % n;
      g += a * c.grid_stride;
    }
    basis_exp_[b] = e;
    basis_grid_[b] = static_cast<std::uint32_t>(g);
  }
}

CycloOrderPtr CycloOrder::get(u64 n) {
  std::lock_guard<std::mutex> lock(g_order_mutex);
  auto it = g_orders.find(n);
  if (it != g_orders.end()) return it->second;
  auto ptr = std::shared_ptr<const CycloOrder>(new CycloOrder(n));
  g_orders.emplace(n, ptr);
  return ptr;
}

template <class T>
void CycloOrder::reduce(std::vector<T>& by_exponent, std::vector<T>& out) const {
  std::vector<T> grid(n_);
  for (u64 e = 0; e < n_; ++e)
    if (nonzero(by_exponent[e])) std::swap(grid[exp_grid_[e]], by_exponent[e]);
  u64 outer_span = 1;
  for (const auto& c : comps_) {
    u64 S = c.grid_stride;
    u64 block = c.m * S;
    for (u64 o = 0; o < outer_span; ++o) {
      u64 base = o * block;
      for (u64 a = c.phi; a < c.m; ++a) {
        u64 a0 = a - (c.prime - 1) * c.t;
        for (u64 in = 0; in < S; ++in) {
          T& src = grid[base + a * S + in];
          if (!nonzero(src)) continue;
          T v = std::move(src);
          src = T();
          for (u64 s = 0; s + 1 < c.prime; ++s) sub_from(grid[base + (a0 + s * c.t) * S + in], v);
        }
      }
    }
    outer_span *= c.m;
  }
  out.assign(basis_grid_.size(), T());
  for (std::size_t i = 0; i < basis_grid_.size(); ++i) std::swap(out[i], grid[basis_grid_[i]]);
}

template void CycloOrder::reduce<i64>(std::vector<i64>&, std::vector<i64>&) const;
template void CycloOrder::reduce<__int128>(std::vector<__int128>&, std::vector<__int128>&) const;
template void CycloOrder::reduce<mpz_class>(std::vector<mpz_class>&, std::vector<mpz_class>&) const;

Cyclo::Cyclo() : ord_(CycloOrder::get(1)), num_(1), den_(1) {}
Cyclo::Cyclo(long v) : ord_(CycloOrder::get(1)), num_{mpz_class(v)}, den_(1) {}
Cyclo::Cyclo(const mpz_class& v) : ord_(CycloOrder::get(1)), num_{v}, den_(1) {}
Cyclo::Cyclo(const mpq_class& v) : ord_(CycloOrder::get(1)), num_{v.get_num()}, den_(v.get_den()) {}

Cyclo::Cyclo(CycloOrderPtr ord, std::vector<mpz_class> num, mpz_class den)
    : ord_(std::move(ord)), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void Cyclo::normalize() {
  if (sgn(den_) == 0) throw DomainError("zero denominator");
  if (sgn(den_) < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 1) return;
  mpz_class g = den_;
  bool any = false;
  for (const auto& c : num_) {
    if (sgn(c) == 0) continue;
    any = true;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (!any) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    for (auto& c : num_)
      if (sgn(c) != 0) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

Cyclo Cyclo::root(u64 n, i64 k) {
  auto ord = CycloOrder::get(n);
  mpz_class one = 1;
  std::vector<Term> t{{static_cast<u64>(mod(k, static_cast<i64>(n))), &one}};
  return Cyclo(ord, reduce_terms(*ord, t), 1);
}

Cyclo Cyclo::from_exponent_counts(u64 n, const std::vector<i64>& counts) {
  if (counts.size() != n) throw DomainError("from_exponent_counts: length mismatch");
  auto ord = CycloOrder::get(n);
  std::vector<i64> acc(counts), red;
  ord->reduce(acc, red);
  std::vector<mpz_class> num(red.size());
  for (std::size_t i = 0; i < red.size(); ++i)
    if (red[i] != 0) num[i] = static_cast<long>(red[i]);
  return Cyclo(ord, std::move(num), 1);
}

Cyclo Cyclo::from_exponent_counts(u64 n, const std::vector<mpz_class>& counts) {
  if (counts.size() != n) throw DomainError("from_exponent_counts: length mismatch");
  auto ord = CycloOrder::get(n);
  std::vector<mpz_class> acc(counts), red;
  ord->reduce(acc, red);
  return Cyclo(ord, std::move(red), 1);
}

Cyclo Cyclo::from_basis(u64 n, std::vector<mpz_class> numerators, mpz_class denominator) {
  auto ord = CycloOrder::get(n);
  if (numerators.size() != ord->dim()) throw DomainError("from_basis: length mismatch");
  return Cyclo(ord, std::move(numerators), std::move(denominator));
}

std::vector<mpq_class> Cyclo::coefficients() const {
  std::vector<mpq_class> out(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) {
    out[i] = mpq_class(num_[i], den_);
    out[i].canonicalize();
  }
  return out;
}

Cyclo Cyclo::raise_order(u64 m) const {
  u64 n = order();
  if (m == 0 || m % n != 0) throw DomainError("raise_order: " + std::to_string(m) + " is not a multiple of " + std::to_string(n));
  if (m == n) return *this;
  auto ord = CycloOrder::get(m);
  u64 scale = m / n;
  std::vector<Term> terms;
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (sgn(num_[i]) != 0) terms.push_back({ord_->basis_exponent(i) * scale, &num_[i]});
  return Cyclo(ord, reduce_terms(*ord, terms), den_);
}

std::optional<Cyclo> Cyclo::restrict_order(u64 m) const {
  if (m == 0) throw DomainError("restrict_order: zero order");
  u64 n = order();
  if (n % m != 0) return raise_order(lcm(n, m)).restrict_order(m);
  if (m == n) return *this;
  auto target = CycloOrder::get(m);
  std::map<u64, const CycloOrder::Component*> tcomp;
  for (const auto& c : target->components()) tcomp[c.prime] = &c;
  std::vector<mpz_class> out(target->dim());
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    u64 idx = 0;
    for (const auto& c : ord_->components()) {
      u64 a = (i / c.basis_stride) % c.phi;
      auto it = tcomp.find(c.prime);
      u64 mt = it == tcomp.end() ? 1 : it->second->m;
      u64 step = c.m / mt;
      if (a % step != 0) return std::nullopt;
      if (it != tcomp.end()) {
        u64 at = a / step;
        if (at >= it->second->phi) return std::nullopt;
        idx += at * it->second->basis_stride;
      } else if (a != 0) {
        return std::nullopt;
      }
    }
    out[idx] = num_[i];
  }
  return Cyclo(target, std::move(out), den_);
}

Cyclo Cyclo::minimal() const {
  u64 m = 1;
  for (const auto& c : ord_->components()) {
    u64 g = c.m;
    for (std::size_t i = 0; i < num_.size() && g != 1; ++i)
      if (sgn(num_[i]) != 0) g = gcd(g, (i / c.basis_stride) % c.phi);
    m *= c.m / g;
  }
  auto r = restrict_order(m);
  if (!r) throw Error("minimal: restriction failed");
  return *r;
}

Cyclo Cyclo::galois(i64 k) const {
  u64 n = order();
  u64 kk = static_cast<u64>(mod(k, static_cast<i64>(n)));
  if (gcd(kk, n) != 1 && n > 1) throw DomainError("galois: exponent not coprime to the order");
  if (n <= 2 || kk == 1) return *this;
  std::vector<Term> terms;
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (sgn(num_[i]) != 0) terms.push_back({static_cast<u64>(static_cast<u128>(ord_->basis_exponent(i)) * kk % n), &num_[i]});
  return Cyclo(ord_, reduce_terms(*ord_, terms), den_);
}

Cyclo Cyclo::mul_root(u64 n2, i64 k) const {
  u64 L = lcm(order(), n2);
  u64 shift = static_cast<u64>(mod(k, static_cast<i64>(n2))) * (L / n2);
  if (shift % L == 0) return *this;
  auto ord = CycloOrder::get(L);
  u64 scale = L / order();
  std::vector<Term> terms;
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (sgn(num_[i]) != 0) terms.push_back({(ord_->basis_exponent(i) * scale + shift) % L, &num_[i]});
  return Cyclo(ord, reduce_terms(*ord, terms), den_);
}

bool Cyclo::is_zero() const {
  for (const auto& c : num_)
    if (sgn(c) != 0) return false;
  return true;
}

std::optional<mpq_class> Cyclo::as_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (sgn(num_[i]) != 0) return std::nullopt;
  mpq_class r(num_[0], den_);
  r.canonicalize();
  return r;
}

std::optional<mpz_class> Cyclo::as_integer() const {
  auto r = as_rational();
  if (!r || r->get_den() != 1) return std::nullopt;
  return r->get_num();
}

mpq_class Cyclo::l1_norm() const {
  mpz_class s = 0;
  for (const auto& c : num_) s += abs(c);
  mpq_class r(s, den_);
  r.canonicalize();
  return r;
}

ComplexApprox Cyclo::approx(unsigned bits) const {
  if (bits < 53) bits = 53;
  std::size_t nnz = 0;
  for (const auto& c : num_)
    if (sgn(c) != 0) ++nnz;
  mpfr_prec_t w = static_cast<mpfr_prec_t>(bits + 32 + log2_ceil(nnz + 1));
  ComplexApprox out(bits);
  BigFloat re(w), im(w);
  BigFloat twopi = BigFloat::pi(w) * BigFloat(2.0, w);
  BigFloat nn(mpz_class(static_cast<unsigned long>(order())), w);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    BigFloat c(num_[i], w);
    u64 e = ord_->basis_exponent(i);
    if (e == 0) {
      re += c;
      continue;
    }
    BigFloat theta = twopi * BigFloat(mpz_class(static_cast<unsigned long>(e)), w) / nn;
    re += c * theta.cos();
    im += c * theta.sin();
  }
  BigFloat d(den_, w);
  re /= d;
  im /= d;
  mpfr_set(out.re.get(), re.get(), MPFR_RNDN);
  mpfr_set(out.im.get(), im.get(), MPFR_RNDN);
  // |coeffs|·(rounding of angle, trig, products, sums) plus the final rounding to `bits`
  BigFloat err(l1_norm(), 64);
  BigFloat scale(64);
  mpfr_set_ui_2exp(scale.get(), static_cast<unsigned long>(nnz + 128), -static_cast<long>(w), MPFR_RNDU);
  mpfr_mul(err.get(), err.get(), scale.get(), MPFR_RNDU);
  BigFloat fin(64);
  BigFloat mag = re.abs() + im.abs();
  mpfr_mul_2si(fin.get(), mag.get(), -static_cast<long>(bits) + 1, MPFR_RNDU);
  mpfr_add(err.get(), err.get(), fin.get(), MPFR_RNDU);
  mpfr_set_ui_2exp(fin.get(), 1, -static_cast<long>(bits), MPFR_RNDU);
  mpfr_add(err.get(), err.get(), fin.get(), MPFR_RNDU);
  out.err = mpfr_get_d(err.get(), MPFR_RNDU);
  return out;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (order() != o.order()) {
    u64 L = lcm(order(), o.order());
    Cyclo a = raise_order(L);
    Cyclo b = o.raise_order(L);
    return *this = a += b;
  }
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ + o.num_[i] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo Cyclo::operator-() const {
  Cyclo r(*this);
  for (auto& c : r.num_) c = -c;
  return r;
}

Cyclo& Cyclo::operator*=(const mpq_class& s) {
  if (sgn(s) == 0) return *this = Cyclo();
  for (auto& c : num_) c *= s.get_num();
  den_ *= s.get_den();
  normalize();
  return *this;
}

Cyclo& Cyclo::operator/=(const mpq_class& s) {
  if (sgn(s) == 0) throw DomainError("division by zero");
  mpq_class inv = 1 / s;
  return *this *= inv;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) { return *this = *this * o; }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  if (a.is_zero() || b.is_zero()) return Cyclo();
  if (auto r = a.as_rational()) return b * *r;
  if (auto r = b.as_rational()) return a * *r;
  u64 n = lcm(a.order(), b.order());
  auto ord = CycloOrder::get(n);
  u64 sa = n / a.order(), sb = n / b.order();
  std::vector<std::pair<u64, const mpz_class*>> ta, tb;
  std::size_t ba = 0, bb = 0;
  for (std::size_t i = 0; i < a.num_.size(); ++i)
    if (sgn(a.num_[i]) != 0) {
      ta.emplace_back(a.ord_->basis_exponent(i) * sa, &a.num_[i]);
      ba = std::max(ba, bits_of(a.num_[i]));
    }
  for (std::size_t i = 0; i < b.num_.size(); ++i)
    if (sgn(b.num_[i]) != 0) {
      tb.emplace_back(b.ord_->basis_exponent(i) * sb, &b.num_[i]);
      bb = std::max(bb, bits_of(b.num_[i]));
    }
  std::size_t bound = ba + bb + log2_ceil(std::min(ta.size(), tb.size()) + 1) + ord->components().size() + 2;
  std::vector<mpz_class> num;
  if (bound < 62) {
    std::vector<i64> acc(n, 0), red;
    std::vector<std::pair<u64, i64>> sa64, sb64;
    for (auto& [e, c] : ta) sa64.emplace_back(e, c->get_si());
    for (auto& [e, c] : tb) sb64.emplace_back(e, c->get_si());
    for (auto& [ea, ca] : sa64)
      for (auto& [eb, cb] : sb64) {
        u64 e = ea + eb;
        if (e >= n) e -= n;
        acc[e] += ca * cb;
      }
    ord->reduce(acc, red);
    num.resize(red.size());
    for (std::size_t i = 0; i < red.size(); ++i)
      if (red[i] != 0) num[i] = static_cast<long>(red[i]);
  } else if (bound < 126 && ba < 63 && bb < 63) {
    std::vector<__int128> acc(n, 0), red;
    std::vector<std::pair<u64, i64>> sa64, sb64;
    for (auto& [e, c] : ta) sa64.emplace_back(e, c->get_si());
    for (auto& [e, c] : tb) sb64.emplace_back(e, c->get_si());
    for (auto& [ea, ca] : sa64)
      for (auto& [eb, cb] : sb64) {
        u64 e = ea + eb;
        if (e >= n) e -= n;
        acc[e] += static_cast<__int128>(ca) * cb;
      }
    ord->reduce(acc, red);
    num.resize(red.size());
    for (std::size_t i = 0; i < red.size(); ++i)
      if (red[i] != 0) num[i] = to_mpz(red[i]);
  } else {
    std::vector<mpz_class> acc(n), red;
    for (auto& [ea, ca] : ta)
      for (auto& [eb, cb] : tb) {
        u64 e = ea + eb;
        if (e >= n) e -= n;
        mpz_addmul(acc[e].get_mpz_t(), ca->get_mpz_t(), cb->get_mpz_t());
      }
    ord->reduce(acc, red);
    num = std::move(red);
  }
  return Cyclo(ord, std::move(num), a.den_ * b.den_);
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.order() == b.order()) return a.den_ == b.den_ && a.num_ == b.num_;
  Cyclo ma = a.minimal(), mb = b.minimal();
  return ma.order() == mb.order() && ma.den_ == mb.den_ && ma.num_ == mb.num_;
}

Cyclo Cyclo::pow(unsigned e) const {
  Cyclo r(1L), b(*this);
  while (e != 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e != 0) b = b * b;
  }
  return r;
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  if (auto r = as_rational()) return Cyclo(mpq_class(1 / *r));
  Cyclo m = minimal();
  if (m.num_.size() > 128) throw DomainError("inverse: degree too large for the norm method");
  u64 n = m.order();
  Cyclo prod(1L);
  for (u64 k = 2; k < n; ++k)
    if (gcd(k, n) == 1) prod *= m.galois(static_cast<i64>(k));
  Cyclo nrm = m * prod;
  auto r = nrm.as_rational();
  if (!r) throw Error("inverse: norm is not rational");
  return prod / *r;
}

std::string Cyclo::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    mpq_class c(num_[i], den_);
    c.canonicalize();
    u64 e = ord_->basis_exponent(i);
    bool neg = sgn(c) < 0;
    mpq_class a = abs(c);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "z" << order() << "^" << e;
    }
  }
  if (first) os << "0";
  return os.str();
}

Cyclo sum(const std::vector<Cyclo>& xs) {
  Cyclo s;
  for (const auto& x : xs) s += x;
  return s;
}

}  // namespace hgfq
