#include "hgfq/numtheory.hpp"

#include <algorithm>
#include <limits>

#include "hgfq/error.hpp"

namespace hgfq {

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 lcm(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

static u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 b, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 t = 0, nt = 1;
  i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
  while (nr != 0) {
    i64 q = r / nr;
    i64 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw DomainError("invmod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
  return static_cast<u64>(mod(t, static_cast<i64>(m)));
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

static u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, g = 1, q = 1, x = 0, ys = 0;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min<u64>(128, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += 128;
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

static void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::vector<std::pair<u64, unsigned>> factor(u64 n) {
  std::vector<u64> ps;
  factor_into(n, ps);
  std::sort(ps.begin(), ps.end());
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p : ps) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (auto& [p, e] : factor(n)) out.push_back(p);
  return out;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (auto& [p, e] : factor(n)) {
    std::size_t sz = out.size();
    u64 pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto& [p, e] : factor(n)) r = r / p * (p - 1);
  return r;
}

std::pair<u64, unsigned> prime_power(u64 n) {
  auto f = factor(n);
  if (f.size() != 1) return {0, 0};
  return f[0];
}

u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool ipow_bounded(u64 b, unsigned e, u64 limit, u64& out) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (b != 0 && r > limit / b) return false;
    r *= b;
  }
  if (r > limit) return false;
  out = r;
  return true;
}

Montgomery::Montgomery(u64 modulus) : m_(modulus) {
  if (modulus % 2 == 0 || modulus >= (1ull << 62)) throw DomainError("Montgomery: modulus must be odd and below 2^62");
  u64 inv = modulus;  // Newton iteration for modulus^{-1} mod 2^64
  for (int i = 0; i < 6; ++i) inv *= 2 - modulus * inv;
  ninv_ = ~inv + 1;
  u128 r = (static_cast<u128>(1) << 64) % modulus;
  one_ = static_cast<u64>(r);
  r2_ = static_cast<u64>(r * r % modulus);
}

u64 Montgomery::pow(u64 a, u64 e) const {
  u64 r = one_;
  while (e != 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 primitive_root(u64 p) {
  if (p == 2) return 1;
  auto ps = prime_divisors(p - 1);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (u64 r : ps) {
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

PrimeStream::PrimeStream(u64 step) : step_(step) {
  if (step == 0 || step >= (1ull << 60)) throw DomainError("PrimeStream: step out of range");
  k_ = ((1ull << 62) - 2) / step;
}

u64 PrimeStream::next() {
  while (k_ > 0) {
    u64 cand = 1 + k_ * step_;
    --k_;
    if (cand % 2 == 1 && is_prime(cand)) return cand;
  }
  throw BudgetError("PrimeStream: no more primes in range");
}

}  // namespace hgfq
