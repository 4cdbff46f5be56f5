#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hgfq {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

i64 mod(i64 a, i64 m);
u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);
u64 powmod(u64 b, u64 e, u64 m);
// Inverse of a mod m; throws DomainError if not invertible.
u64 invmod(u64 a, u64 m);
bool is_prime(u64 n);
// Prime factorization as (prime, exponent) pairs in increasing order.
std::vector<std::pair<u64, unsigned>> factor(u64 n);
std::vector<u64> prime_divisors(u64 n);
std::vector<u64> divisors(u64 n);
u64 euler_phi(u64 n);
// Returns p^e when n is a prime power, {0,0} otherwise.
std::pair<u64, unsigned> prime_power(u64 n);
u64 ipow(u64 b, unsigned e);
// Checked ipow: false when the result would exceed limit.
bool ipow_bounded(u64 b, unsigned e, u64 limit, u64& out);

// Montgomery arithmetic modulo an odd prime below 2^62.
class Montgomery {
 public:
  explicit Montgomery(u64 modulus);
  u64 modulus() const { return m_; }
  u64 to(u64 x) const { return reduce(static_cast<u128>(x % m_) * r2_); }
  u64 from(u64 x) const { return reduce(x); }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + m_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : m_ - a; }
  u64 one() const { return one_; }
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const { return pow(a, m_ - 2); }

 private:
  u64 reduce(u128 t) const {
    u64 q = static_cast<u64>(t) * ninv_;
    u64 r = static_cast<u64>((t + static_cast<u128>(q) * m_) >> 64);
    return r >= m_ ? r - m_ : r;
  }
  u64 m_, ninv_, r2_, one_;
};

// Smallest primitive root modulo a prime.
u64 primitive_root(u64 p);

// Primes l = 1 + k*step below 2^62, searched downward from the top, in a
// deterministic order.
class PrimeStream {
 public:
  explicit PrimeStream(u64 step);
  u64 next();

 private:
  u64 step_;
  u64 k_;
};

}  // namespace hgfq
