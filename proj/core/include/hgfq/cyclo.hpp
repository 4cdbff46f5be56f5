#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hgfq/bigfloat.hpp"
#include "hgfq/numtheory.hpp"

namespace hgfq {

// Basis bookkeeping for Q(ζ_n). The basis is the tensor product of the power
// bases of Q(ζ_{p^k}) over the prime powers p^k || n, with ζ_{p^k} = ζ_n^{n/p^k}.
class CycloOrder {
 public:
  struct Component {
    u64 prime, m, t, phi;  // m = p^k, t = m/p, phi = m - t
    u64 inv;               // (n/m)^{-1} mod m
    u64 grid_stride;       // stride in the full exponent grid
    u64 basis_stride;      // stride in the reduced basis
  };

  static std::shared_ptr<const CycloOrder> get(u64 n);

  u64 n() const { return n_; }
  std::size_t dim() const { return basis_exp_.size(); }
  const std::vector<Component>& components() const { return comps_; }
  // exponent of ζ_n represented by basis element i
  u64 basis_exponent(std::size_t i) const { return basis_exp_[i]; }
  u64 grid_index(u64 e) const { return exp_grid_[e]; }
  // Reduce an array indexed by exponent (length n) into basis coordinates.
  template <class T>
  void reduce(std::vector<T>& by_exponent, std::vector<T>& out) const;

 private:
  explicit CycloOrder(u64 n);
  u64 n_;
  std::vector<Component> comps_;
  std::vector<u64> basis_exp_;
  std::vector<std::uint32_t> exp_grid_;
  std::vector<std::uint32_t> basis_grid_;  // grid index of basis element i
};

using CycloOrderPtr = std::shared_ptr<const CycloOrder>;

struct ComplexApprox {
  BigFloat re, im;
  double err = 0;  // rigorous bound on the distance to the true value
  explicit ComplexApprox(mpfr_prec_t prec) : re(prec), im(prec) {}
};

class Cyclo {
 public:
  Cyclo();  // zero
  Cyclo(long v);  // NOLINT: rational integers convert implicitly
  Cyclo(const mpz_class& v);  // NOLINT
  Cyclo(const mpq_class& v);  // NOLINT

  static Cyclo root(u64 n, i64 k);
  // sum_e counts[e] ζ_n^e
  static Cyclo from_exponent_counts(u64 n, const std::vector<i64>& counts);
  static Cyclo from_exponent_counts(u64 n, const std::vector<mpz_class>& counts);
  static Cyclo from_basis(u64 n, std::vector<mpz_class> numerators, mpz_class denominator);

  u64 order() const { return ord_->n(); }
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  std::vector<mpq_class> coefficients() const;

  Cyclo raise_order(u64 m) const;
  // Express in Q(ζ_m); nullopt when the value is not in that field.
  std::optional<Cyclo> restrict_order(u64 m) const;
  // Smallest-order representation.
  Cyclo minimal() const;

  Cyclo conj() const { return galois(-1); }
  // ζ ↦ ζ^k, k coprime to the order.
  Cyclo galois(i64 k) const;
  Cyclo mul_root(u64 n, i64 k) const;  // this * ζ_n^k

  bool is_zero() const;
  std::optional<mpq_class> as_rational() const;
  std::optional<mpz_class> as_integer() const;

  ComplexApprox approx(unsigned bits) const;
  // Sum of absolute values of basis coefficients.
  mpq_class l1_norm() const;

  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator*=(const mpq_class& s);
  Cyclo& operator/=(const mpq_class& s);
  Cyclo operator-() const;
  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(Cyclo a, const mpq_class& s) { return a *= s; }
  friend Cyclo operator*(const mpq_class& s, Cyclo a) { return a *= s; }
  friend Cyclo operator/(Cyclo a, const mpq_class& s) { return a /= s; }
  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  Cyclo pow(unsigned e) const;
  // Inverse by the norm trick; only for small degree.
  Cyclo inverse() const;

  std::string to_string() const;

 private:
  Cyclo(CycloOrderPtr ord, std::vector<mpz_class> num, mpz_class den);
  void normalize();
  CycloOrderPtr ord_;
  std::vector<mpz_class> num_;
  mpz_class den_;
};

Cyclo sum(const std::vector<Cyclo>& xs);

inline std::ostream& operator<<(std::ostream& os, const Cyclo& c) { return os << c.to_string(); }

}  // namespace hgfq
