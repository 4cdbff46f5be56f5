#include "hgfq/ffield.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "hgfq/error.hpp"

namespace hgfq {

namespace {

using Poly = std::vector<u64>;  // low degree first, over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, u64 p) {
  trim(a);
  std::size_t dm = m.size() - 1;
  u64 lead_inv = invmod(m.back(), p);
  while (a.size() > dm) {
    u64 c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(c), m, p);
}

Poly poly_powmod(Poly b, u64 e, const Poly& m, u64 p) {
  Poly r{1};
  b = poly_mod(std::move(b), m, p);
  while (e != 0) {
    if (e & 1) r = poly_mulmod(r, b, m, p);
    b = poly_mulmod(b, b, m, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

// Rabin's test for a monic polynomial of degree f.
bool is_irreducible(const Poly& m, u64 p) {
  std::size_t f = m.size() - 1;
  Poly x{0, 1};
  Poly xp = x;
  // x^{p^k} mod m for k = 1..f
  std::vector<Poly> frob(f + 1);
  frob[0] = poly_mod(x, m, p);
  for (std::size_t k = 1; k <= f; ++k) {
    xp = poly_powmod(xp, p, m, p);
    frob[k] = xp;
  }
  if (poly_sub(frob[f], frob[0], p) != Poly{}) return false;
  for (u64 r : prime_divisors(f)) {
    Poly g = poly_gcd(m, poly_sub(frob[f / r], frob[0], p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly digits_of(u64 enc, u64 p, unsigned f) {
  Poly c(f, 0);
  for (unsigned i = 0; i < f; ++i) {
    c[i] = enc % p;
    enc /= p;
  }
  return c;
}

u64 encode(const Poly& c, u64 p) {
  u64 enc = 0;
  for (std::size_t i = c.size(); i-- > 0;) enc = enc * p + c[i];
  return enc;
}

std::mutex g_field_mutex;
std::map<std::pair<u64, unsigned>, FieldPtr> g_fields;
std::map<std::pair<const FieldCtx*, unsigned>, TowerPtr> g_towers;

}  // namespace

Elem FieldCtx::add(Elem a, Elem b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  u64 la = log_[a], lb = log_[b];
  u64 k = lb >= la ? lb - la : lb + order() - la;
  std::int32_t z = zech_[k];
  if (z < 0) return 0;
  return exp_[la + static_cast<u64>(z)];
}

Elem FieldCtx::neg(Elem a) const {
  if (a == 0) return 0;
  return exp_[log_[a] + half_];
}

Elem FieldCtx::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero");
  u64 l = log_[a];
  return exp_[l == 0 ? 0 : order() - l];
}

Elem FieldCtx::pow(Elem a, i64 e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw DomainError("negative power of zero");
    return 0;
  }
  i64 m = static_cast<i64>(order());
  return exp_[static_cast<u64>(mod(static_cast<i64>(log_[a] % order()) * mod(e, m) % m, m))];
}

Elem FieldCtx::from_int(i64 v) const { return static_cast<Elem>(mod(v, static_cast<i64>(p_))); }

u64 FieldCtx::dlog(Elem x) const {
  if (x == 0) throw DomainError("dlog of zero");
  if (x >= q_) throw DomainError("element not in field");
  return log_[x];
}

std::vector<u64> FieldCtx::digits(Elem x) const { return digits_of(x, p_, f_); }

Elem FieldCtx::from_digits(const std::vector<u64>& c) const {
  Poly d(f_, 0);
  for (std::size_t i = 0; i < c.size() && i < f_; ++i) d[i] = c[i] % p_;
  return static_cast<Elem>(encode(d, p_));
}

void FieldCtx::build_tables(Elem g) {
  u64 m = order();
  exp_.assign(2 * m, 0);
  log_.assign(q_, 0);
  Poly gp = digits_of(g, p_, f_);
  Poly cur{1};
  for (u64 k = 0; k < m; ++k) {
    Poly padded = cur;
    padded.resize(f_, 0);
    Elem e = static_cast<Elem>(encode(padded, p_));
    exp_[k] = exp_[k + m] = e;
    log_[e] = static_cast<std::uint32_t>(k);
    cur = poly_mulmod(cur, gp, modulus_, p_);
  }
  half_ = (p_ == 2) ? 0 : m / 2;
  zech_.assign(m, -1);
  for (u64 k = 0; k < m; ++k) {
    Elem x = exp_[k];
    Elem y = (x % p_ == p_ - 1) ? x - static_cast<Elem>(p_ - 1) : x + 1;
    zech_[k] = y == 0 ? -1 : static_cast<std::int32_t>(log_[y]);
  }
  // trace of the monomials X^i, then extend linearly
  std::vector<u64> tmono(f_, 0);
  for (unsigned i = 0; i < f_; ++i) {
    Elem xi = static_cast<Elem>(ipow(p_, i));
    Elem acc = 0;
    Elem pw = xi;
    for (unsigned j = 0; j < f_; ++j) {
      acc = add(acc, pw);
      pw = pow(pw, static_cast<i64>(p_));
    }
    if (acc >= p_) throw Error("trace computation left the prime field");
    tmono[i] = acc;
  }
  trace_.assign(q_, 0);
  for (u64 x = 0; x < q_; ++x) {
    u64 t = 0, y = x;
    for (unsigned i = 0; i < f_; ++i) {
      t += (y % p_) * tmono[i];
      y /= p_;
    }
    trace_[x] = static_cast<std::uint32_t>(t % p_);
  }
}

std::shared_ptr<const FieldCtx> FieldCtx::with_generator(Elem g) const {
  if (g == 0 || g >= q_) throw DomainError("with_generator: invalid element");
  u64 m = order();
  u64 c = log_[g];
  if (gcd(c, m) != 1 && m > 1) throw DomainError("with_generator: element is not a generator");
  u64 cinv = m == 1 ? 0 : invmod(c, m);
  auto out = std::shared_ptr<FieldCtx>(new FieldCtx());
  out->p_ = p_;
  out->f_ = f_;
  out->q_ = q_;
  out->half_ = half_;
  out->modulus_ = modulus_;
  out->trace_ = trace_;
  out->exp_.assign(2 * m, 0);
  out->log_.assign(q_, 0);
  out->zech_.assign(m, -1);
  for (u64 k = 0; k < m; ++k) {
    Elem e = exp_[static_cast<u64>(static_cast<u128>(k) * c % m)];
    out->exp_[k] = out->exp_[k + m] = e;
    out->log_[e] = static_cast<std::uint32_t>(k);
  }
  for (u64 k = 0; k < m; ++k) {
    std::int32_t z = zech_[static_cast<u64>(static_cast<u128>(k) * c % m)];
    out->zech_[k] = z < 0 ? -1 : static_cast<std::int32_t>(static_cast<u128>(z) * cinv % m);
  }
  return out;
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "F_" << q_ << " (p=" << p_ << ", f=" << f_ << ", g=" << generator() << ")";
  return os.str();
}

FieldPtr build_field(u64 p, unsigned f, u64 cap) {
  if (!is_prime(p)) throw DomainError("build_field: p = " + std::to_string(p) + " is not prime");
  if (f == 0) throw DomainError("build_field: f must be positive");
  u64 q = 0;
  if (!ipow_bounded(p, f, std::min<u64>(cap, u64{1} << 31), q))
    throw BudgetError("build_field: field size " + std::to_string(p) + "^" + std::to_string(f) + " exceeds the cap");
  {
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto it = g_fields.find({p, f});
    if (it != g_fields.end()) return it->second;
  }
  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->p_ = p;
  ctx->f_ = f;
  ctx->q_ = q;
  // smallest monic irreducible, comparing c_0 first
  u64 count = ipow(p, f);
  bool found = false;
  for (u64 idx = 0; idx < count && !found; ++idx) {
    Poly m(f + 1, 0);
    u64 y = idx;
    for (unsigned i = f; i-- > 0;) {
      m[i] = y % p;
      y /= p;
    }
    m[f] = 1;
    if (f == 1 || (m[0] != 0 && is_irreducible(m, p))) {
      ctx->modulus_ = m;
      found = true;
    }
  }
  if (!found) throw Error("no irreducible polynomial found");
  // smallest encoding of full order
  u64 order = q - 1;
  auto rs = prime_divisors(order);
  Elem g = 0;
  for (u64 enc = 1; enc < q; ++enc) {
    Poly c = digits_of(enc, p, f);
    bool ok = true;
    for (u64 r : rs) {
      Poly t = poly_powmod(c, order / r, ctx->modulus_, p);
      if (t == Poly{1}) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = static_cast<Elem>(enc);
      break;
    }
  }
  if (g == 0) throw Error("no generator found");
  ctx->build_tables(g);
  std::lock_guard<std::mutex> lock(g_field_mutex);
  auto [it, inserted] = g_fields.emplace(std::make_pair(p, f), ctx);
  return it->second;
}

Elem TowerMap::embed(Elem x) const {
  if (x == 0) return 0;
  if (!base->contains(x)) throw DomainError("embed: element not in base field");
  return ext->exp(static_cast<i64>(base->dlog(x) * index()));
}

std::optional<Elem> TowerMap::restrict(Elem x) const {
  if (x == 0) return Elem{0};
  u64 l = ext->dlog(x);
  if (l % index() != 0) return std::nullopt;
  return base->exp(static_cast<i64>(l / index()));
}

Elem TowerMap::norm(Elem x) const {
  if (!ext->contains(x)) throw DomainError("norm: element not in extension field");
  if (x == 0) return 0;
  Elem y = ext->pow(x, static_cast<i64>(index()));
  auto b = restrict(y);
  if (!b) throw Error("norm left the base field");
  return *b;
}

TowerPtr build_tower(const FieldPtr& base, unsigned r, u64 cap) {
  if (r == 0) throw DomainError("build_tower: r must be positive");
  {
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto it = g_towers.find({base.get(), r});
    if (it != g_towers.end()) return it->second;
  }
  auto tm = std::make_shared<TowerMap>();
  tm->base = base;
  tm->r = r;
  if (r == 1) {
    tm->ext = base;
    tm->root = static_cast<Elem>(base->f() == 1 ? 0 : base->p());
  } else {
    FieldPtr canon = build_field(base->p(), base->f() * r, cap);
    u64 p = base->p();
    const Poly& bm = base->modulus();
    // roots of the base modulus in the extension; take the smallest encoding
    Elem root = 0;
    bool found = false;
    for (u64 x = 0; x < canon->q() && !found; ++x) {
      Elem acc = 0;
      for (std::size_t i = bm.size(); i-- > 0;) acc = canon->add(canon->mul(acc, static_cast<Elem>(x)), static_cast<Elem>(bm[i]));
      if (acc == 0) {
        root = static_cast<Elem>(x);
        found = true;
      }
    }
    if (!found) throw Error("build_tower: base modulus has no root in the extension");
    tm->root = root;
    auto iota = [&](Elem b) {
      Poly c = digits_of(b, p, base->f());
      Elem acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) acc = canon->add(canon->mul(acc, root), static_cast<Elem>(c[i]));
      return acc;
    };
    u64 e = canon->order() / base->order();
    u64 qm1 = base->order();
    Elem ig = iota(base->generator());
    u64 L = canon->dlog(ig);
    if (L % e != 0) throw Error("build_tower: embedded generator has wrong order");
    u64 u = (L / e) % qm1;
    u64 t = qm1 == 1 ? 1 : u;
    const u64 scan_limit = 1000000;
    u64 k = 0;
    while (gcd(t, canon->order()) != 1) {
      t += qm1;
      if (++k > scan_limit) throw Error("build_tower: no compatible generator within scan bound");
    }
    Elem gc = canon->exp(static_cast<i64>(t));
    tm->ext = canon->with_generator(gc);
    if (tm->ext->pow(tm->ext->generator(), static_cast<i64>(e)) != ig)
      throw Error("build_tower: compatibility check failed");
  }
  std::lock_guard<std::mutex> lock(g_field_mutex);
  auto [it, inserted] = g_towers.emplace(std::make_pair(base.get(), r), tm);
  return it->second;
}

u64 trace_to_prime(const FieldCtx& ctx, Elem x) {
  if (!ctx.contains(x)) throw DomainError("trace: element not in field");
  return ctx.trace(x);
}

void clear_field_caches() {
  std::lock_guard<std::mutex> lock(g_field_mutex);
  g_towers.clear();
  g_fields.clear();
}

}  // namespace hgfq
