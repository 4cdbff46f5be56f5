#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hgfq/numtheory.hpp"

namespace hgfq {

// Field elements are stored by their canonical encoding sum_i c_i p^i, where
// c_i are the coefficients of the residue polynomial (low degree first).
using Elem = std::uint32_t;

inline constexpr u64 kDefaultFieldCap = u64{1} << 26;

class FieldCtx {
 public:
  u64 p() const { return p_; }
  unsigned f() const { return f_; }
  u64 q() const { return q_; }
  u64 order() const { return q_ - 1; }
  const std::vector<u64>& modulus() const { return modulus_; }
  Elem generator() const { return exp_[1 % order()]; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, i64 e) const;
  // Image of an integer in the prime field.
  Elem from_int(i64 v) const;

  // Exponent of a nonzero element with respect to the generator.
  u64 dlog(Elem x) const;
  Elem exp(i64 k) const { return exp_[static_cast<std::size_t>(mod(k, static_cast<i64>(order())))]; }
  // Absolute trace to F_p.
  u64 trace(Elem x) const { return trace_[x]; }

  std::vector<u64> digits(Elem x) const;
  Elem from_digits(const std::vector<u64>& c) const;
  bool contains(Elem x) const { return x < q_; }

  // Same modulus, different generator (must have full order).
  std::shared_ptr<const FieldCtx> with_generator(Elem g) const;
  std::string describe() const;

 private:
  friend std::shared_ptr<const FieldCtx> build_field(u64 p, unsigned f, u64 cap);
  FieldCtx() = default;
  void build_tables(Elem g);

  u64 p_ = 0;
  unsigned f_ = 0;
  u64 q_ = 0;
  u64 half_ = 0;  // dlog(-1)
  std::vector<u64> modulus_;
  std::vector<Elem> exp_;      // length 2(q-1)
  std::vector<std::uint32_t> log_;
  std::vector<std::int32_t> zech_;  // log(1 + g^k), -1 when 1 + g^k = 0
  std::vector<std::uint32_t> trace_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

// Canonical field of size p^f; memoized.
FieldPtr build_field(u64 p, unsigned f, u64 cap = kDefaultFieldCap);

struct TowerMap {
  FieldPtr base;
  FieldPtr ext;  // generator of ext is the compatible generator
  unsigned r = 1;
  Elem root = 0;  // image of the base indeterminate in the canonical extension
  u64 index() const { return ext->order() / base->order(); }
  Elem g_compat() const { return ext->generator(); }
  Elem embed(Elem x) const;
  std::optional<Elem> restrict(Elem x) const;
  Elem norm(Elem x) const;
};

using TowerPtr = std::shared_ptr<const TowerMap>;

// Tower F_q ⊂ F_{q^r}; memoized per (base, r).
TowerPtr build_tower(const FieldPtr& base, unsigned r, u64 cap = kDefaultFieldCap);

u64 trace_to_prime(const FieldCtx& ctx, Elem x);

void clear_field_caches();

}  // namespace hgfq
