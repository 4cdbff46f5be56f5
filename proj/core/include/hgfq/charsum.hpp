#pragma once

#include <string>
#include <vector>

#include "hgfq/cyclo.hpp"
#include "hgfq/ffield.hpp"

namespace hgfq {

// η = φ^k with φ(g) = ζ_{q-1}.
struct Char {
  FieldPtr field;
  u64 k = 0;

  Char() = default;
  Char(FieldPtr f, i64 exponent);
  u64 modulus() const { return field->order(); }
  u64 order() const;
  bool trivial() const { return k == 0; }
  // Exponent of ζ_{q-1} giving η(x), x ≠ 0.
  u64 exponent_at(Elem x) const;
  Cyclo operator()(Elem x) const;
  Char inverse() const { return Char(field, -static_cast<i64>(k)); }
  Char pow(i64 e) const;
  friend Char operator*(const Char& a, const Char& b);
  friend bool operator==(const Char& a, const Char& b) { return a.field == b.field && a.k == b.k; }
};

Char char_of_order(const FieldPtr& field, u64 m);
Char lift(const TowerMap& tower, const Char& eta);
int delta(const Char& eta);

struct CheckResult {
  bool pass = true;
  std::string witness;
};

// Exact Gauss sums in Q(ζ_{p(q-1)}), cached per (field, exponent).
Cyclo gauss(const Char& eta);
Cyclo gauss_circ(const Char& eta);
// g(η)^{-1} = η(-1) g(η^{-1}) / q for η ≠ ε.
Cyclo gauss_inverse(const Char& eta);
Cyclo gauss_circ_inverse(const Char& eta);

// Jacobi sum by the Gauss quotient (or the all-trivial closed form).
Cyclo jacobi(const std::vector<Char>& chars);
// Jacobi sum by direct enumeration of x_1 + ... + x_n = 1.
Cyclo jacobi_direct(const std::vector<Char>& chars);
// Both routes, with exact agreement enforced (MismatchError otherwise).
Cyclo jacobi_checked(const std::vector<Char>& chars);

// sum over x_1 + ... + x_n = y (all nonzero) of η_1(x_1)...η_n(x_n) η_{n+1}(y).
Cyclo weighted_jacobi_sum(const std::vector<Char>& chars);
// The closed form of the same sum.
Cyclo weighted_jacobi_closed(const std::vector<Char>& chars);

CheckResult verify_dh(const Char& eta, const TowerMap& tower);
CheckResult verify_dhmf(u64 m, const Char& eta);

// Testing hook: perturbs the cached g(φ^k) of a field.
void inject_gauss_fault(const FieldPtr& field, u64 k);
void clear_gauss_cache();

std::string describe(const Char& eta);

}  // namespace hgfq
