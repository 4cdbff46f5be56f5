#include "hgfq/charsum.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "hgfq/error.hpp"

namespace hgfq {

namespace {

constexpr u64 kExactGaussLimit = u64{1} << 23;
constexpr u64 kDirectJacobiBudget = 50'000'000;

struct GaussEntry {
  FieldPtr field;
  std::map<u64, Cyclo> values;
};

std::mutex g_gauss_mutex;
std::map<const FieldCtx*, GaussEntry> g_gauss;

Cyclo compute_gauss(const FieldCtx& F, u64 k) {
  if (k == 0) return Cyclo(1L);
  u64 M = F.order(), p = F.p();
  u64 N = p * M;
  if (N > kExactGaussLimit) throw BudgetError("exact Gauss sum over F_" + std::to_string(F.q()) + " exceeds the exact-arithmetic limit");
  std::vector<i64> counts(N, 0);
  for (u64 j = 0; j < M; ++j) {
    Elem x = F.exp(static_cast<i64>(j));
    u64 e = (p * static_cast<u64>(static_cast<u128>(k) * j % M) + M * F.trace(x)) % N;
    counts[e] -= 1;
  }
  return Cyclo::from_exponent_counts(N, counts);
}

void require_same_field(const std::vector<Char>& chars) {
  if (chars.empty()) throw DomainError("need at least one character");
  for (const auto& c : chars)
    if (c.field != chars[0].field) throw DomainError("characters live on different fields");
}

}  // namespace

Char::Char(FieldPtr f, i64 exponent) : field(std::move(f)) {
  k = static_cast<u64>(mod(exponent, static_cast<i64>(field->order())));
}

u64 Char::order() const { return modulus() / gcd(k, modulus()); }

u64 Char::exponent_at(Elem x) const {
  return static_cast<u64>(static_cast<u128>(k) * field->dlog(x) % modulus());
}

Cyclo Char::operator()(Elem x) const {
  if (x == 0) return Cyclo();
  return Cyclo::root(modulus(), static_cast<i64>(exponent_at(x)));
}

Char Char::pow(i64 e) const {
  i64 m = static_cast<i64>(modulus());
  return Char(field, static_cast<i64>(static_cast<u128>(k) * static_cast<u64>(mod(e, m)) % static_cast<u64>(m)));
}

Char operator*(const Char& a, const Char& b) {
  if (a.field != b.field) throw DomainError("characters live on different fields");
  return Char(a.field, static_cast<i64>(a.k + b.k));
}

Char char_of_order(const FieldPtr& field, u64 m) {
  if (m == 0 || field->order() % m != 0)
    throw DomainError("char_of_order: " + std::to_string(m) + " does not divide q-1 = " + std::to_string(field->order()));
  return Char(field, static_cast<i64>(field->order() / m));
}

Char lift(const TowerMap& tower, const Char& eta) {
  if (eta.field != tower.base) throw DomainError("lift: character is not on the tower base");
  return Char(tower.ext, static_cast<i64>(eta.k * tower.index()));
}

int delta(const Char& eta) { return eta.trivial() ? 1 : 0; }

Cyclo gauss(const Char& eta) {
  {
    std::lock_guard<std::mutex> lock(g_gauss_mutex);
    auto it = g_gauss.find(eta.field.get());
    if (it != g_gauss.end()) {
      auto jt = it->second.values.find(eta.k);
      if (jt != it->second.values.end()) return jt->second;
    }
  }
  Cyclo g = compute_gauss(*eta.field, eta.k);
  std::lock_guard<std::mutex> lock(g_gauss_mutex);
  auto& entry = g_gauss[eta.field.get()];
  entry.field = eta.field;
  return entry.values.emplace(eta.k, std::move(g)).first->second;
}

Cyclo gauss_circ(const Char& eta) {
  Cyclo g = gauss(eta);
  if (eta.trivial()) g *= mpq_class(mpz_class(static_cast<unsigned long>(eta.field->q())));
  return g;
}

Cyclo gauss_inverse(const Char& eta) {
  if (eta.trivial()) return Cyclo(1L);
  Elem minus_one = eta.field->neg(1);
  Cyclo r = gauss(eta.inverse()) * eta(minus_one);
  return r / mpq_class(mpz_class(static_cast<unsigned long>(eta.field->q())));
}

Cyclo gauss_circ_inverse(const Char& eta) {
  if (eta.trivial()) return Cyclo(mpq_class(1, static_cast<unsigned long>(eta.field->q())));
  return gauss_inverse(eta);
}

Cyclo jacobi(const std::vector<Char>& chars) {
  require_same_field(chars);
  const FieldPtr& F = chars[0].field;
  mpz_class q = static_cast<unsigned long>(F->q());
  bool all_trivial = true;
  Char prod(F, 0);
  for (const auto& c : chars) {
    all_trivial = all_trivial && c.trivial();
    prod = prod * c;
  }
  if (all_trivial) {
    mpz_class t;
    mpz_pow_ui(t.get_mpz_t(), mpz_class(1 - q).get_mpz_t(), chars.size());
    mpq_class v(1 - t, q);
    v.canonicalize();
    return Cyclo(v);
  }
  Cyclo r = gauss_circ_inverse(prod);
  for (const auto& c : chars) r *= gauss(c);
  auto res = r.restrict_order(F->order());
  if (!res) throw MismatchError("Jacobi sum left Q(zeta_{q-1})");
  return *res;
}

Cyclo jacobi_direct(const std::vector<Char>& chars) {
  require_same_field(chars);
  const FieldCtx& F = *chars[0].field;
  u64 M = F.order();
  std::size_t n = chars.size();
  double work = 1;
  for (std::size_t i = 1; i < n; ++i) work *= static_cast<double>(M);
  if (work > static_cast<double>(kDirectJacobiBudget)) throw BudgetError("direct Jacobi enumeration exceeds budget");
  std::vector<i64> counts(M, 0);
  // x_1..x_{n-1} nonzero, x_n = 1 - sum
  std::vector<u64> idx(n > 1 ? n - 1 : 0, 0);
  for (;;) {
    Elem s = 0;
    u64 e = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      Elem x = F.exp(static_cast<i64>(idx[i]));
      s = F.add(s, x);
      e += chars[i].k * idx[i];
    }
    Elem xn = F.sub(1, s);
    if (xn != 0) {
      e += chars[n - 1].k * F.dlog(xn);
      counts[e % M] += 1;
    }
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == M) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  Cyclo r = Cyclo::from_exponent_counts(M, counts);
  if (n % 2 == 0) r = -r;
  return r;
}

Cyclo jacobi_checked(const std::vector<Char>& chars) {
  Cyclo a = jacobi(chars);
  Cyclo b = jacobi_direct(chars);
  if (a != b) {
    std::ostringstream os;
    os << "Jacobi sum mismatch over F_" << chars[0].field->q() << " for (";
    for (std::size_t i = 0; i < chars.size(); ++i) os << (i ? "," : "") << chars[i].k;
    os << "): gauss route " << a.to_string() << ", direct " << b.to_string();
    throw MismatchError(os.str());
  }
  return a;
}

Cyclo weighted_jacobi_sum(const std::vector<Char>& chars) {
  require_same_field(chars);
  if (chars.size() < 2) throw DomainError("weighted Jacobi sum needs n+1 >= 2 characters");
  const FieldCtx& F = *chars[0].field;
  u64 M = F.order();
  std::size_t n = chars.size() - 1;
  double work = 1;
  for (std::size_t i = 0; i < n; ++i) work *= static_cast<double>(M);
  if (work > static_cast<double>(kDirectJacobiBudget)) throw BudgetError("weighted Jacobi enumeration exceeds budget");
  std::vector<i64> counts(M, 0);
  std::vector<u64> idx(n, 0);
  for (;;) {
    Elem s = 0;
    u64 e = 0;
    for (std::size_t i = 0; i < n; ++i) {
      s = F.add(s, F.exp(static_cast<i64>(idx[i])));
      e += chars[i].k * idx[i];
    }
    if (s != 0) {
      e += chars[n].k * F.dlog(s);
      counts[e % M] += 1;
    }
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == M) idx[pos++] = 0;
    if (pos == n) break;
  }
  return Cyclo::from_exponent_counts(M, counts);
}

Cyclo weighted_jacobi_closed(const std::vector<Char>& chars) {
  require_same_field(chars);
  Char prod(chars[0].field, 0);
  for (const auto& c : chars) prod = prod * c;
  if (!prod.trivial()) return Cyclo();
  std::vector<Char> head(chars.begin(), chars.end() - 1);
  std::size_t n = head.size();
  mpz_class q = static_cast<unsigned long>(chars[0].field->q());
  mpq_class s = (n % 2 == 0 ? mpq_class(1) : mpq_class(-1)) * mpq_class(1 - q);
  return jacobi(head) * s;
}

CheckResult verify_dh(const Char& eta, const TowerMap& tower) {
  Char lifted = lift(tower, eta);
  Cyclo lhs = gauss(lifted);
  Cyclo rhs = gauss(eta).pow(tower.r);
  CheckResult res;
  res.pass = lhs == rhs;
  if (!res.pass) {
    std::ostringstream os;
    os << "Davenport-Hasse failed: F_" << eta.field->q() << ", eta = phi^" << eta.k << ", r = " << tower.r;
    res.witness = os.str();
  }
  return res;
}

CheckResult verify_dhmf(u64 m, const Char& eta) {
  const FieldPtr& F = eta.field;
  if (m == 0 || F->order() % m != 0) throw DomainError("verify_dhmf: m does not divide q-1");
  Char phim = char_of_order(F, m);
  Cyclo lhs(1L);
  for (u64 i = 0; i < m; ++i) {
    Char c = phim.pow(static_cast<i64>(i));
    lhs *= gauss(c * eta);
    lhs *= gauss_inverse(c);
  }
  Elem mm = F->pow(F->from_int(static_cast<i64>(m)), static_cast<i64>(m));
  lhs *= eta(mm);
  Cyclo rhs = gauss(eta.pow(static_cast<i64>(m)));
  CheckResult res;
  res.pass = lhs == rhs;
  if (!res.pass) {
    std::ostringstream os;
    os << "multiplication formula failed: F_" << F->q() << ", m = " << m << ", eta = phi^" << eta.k;
    res.witness = os.str();
  }
  return res;
}

void inject_gauss_fault(const FieldPtr& field, u64 k) {
  Char eta(field, static_cast<i64>(k));
  Cyclo g = gauss(eta);
  std::lock_guard<std::mutex> lock(g_gauss_mutex);
  g_gauss[field.get()].values[eta.k] = g + Cyclo(1L);
}

void clear_gauss_cache() {
  std::lock_guard<std::mutex> lock(g_gauss_mutex);
  g_gauss.clear();
}

std::string describe(const Char& eta) {
  std::ostringstream os;
  os << "phi^" << eta.k << " on F_" << eta.field->q();
  return os.str();
}

}  // namespace hgfq
