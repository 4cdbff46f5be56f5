#include "hgfq/suites.hpp"

#include <chrono>
#include <optional>
#include <sstream>

#include "hgfq/charsum.hpp"
#include "hgfq/error.hpp"
#include "hgfq/hyperf.hpp"

namespace hgfq {

namespace {

// Reserves its row on construction so rows keep construction order.
class Recorder {
 public:
  Recorder(std::vector<SuiteCheck>& out, std::string suite, std::string name, std::string scope)
      : out_(out), idx_(out.size()), start_(std::chrono::steady_clock::now()) {
    SuiteCheck c;
    c.suite = std::move(suite);
    c.name = std::move(name);
    c.scope = std::move(scope);
    out_.push_back(std::move(c));
  }
  ~Recorder() { out_[idx_].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }
  void record(bool ok, const std::string& witness = {}) {
    SuiteCheck& c = out_[idx_];
    ++c.cases;
    if (!ok && c.pass) {
      c.pass = false;
      c.witness = witness;
    }
  }
  void record(const CheckResult& r) { record(r.pass, r.witness); }
  // Runs body; a MismatchError counts as a failed case.
  template <class F>
  void guarded(F&& body) {
    try {
      body();
    } catch (const MismatchError& e) {
      record(false, out_[idx_].scope + ": " + e.what());
    }
  }

 private:
  std::vector<SuiteCheck>& out_;
  std::size_t idx_;
  std::chrono::steady_clock::time_point start_;
};

std::string field_scope(const FieldPtr& F) { return "F_" + std::to_string(F->q()); }

std::string wstr(const Weights& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

std::string chars_str(const std::vector<Char>& cs) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? "," : "") << "phi^" << cs[i].k;
  os << ")";
  return os.str();
}

std::vector<Elem> smooth_lambdas(const FieldPtr& F, u64 d) {
  std::vector<Elem> out;
  for (Elem l = 1; l < F->q(); ++l)
    if (F->pow(l, static_cast<i64>(d)) != 1) out.push_back(l);
  return out;
}

std::string surface_scope(const Surface& s) {
  std::ostringstream os;
  os << "d=" << s.d << " h=" << wstr(s.h) << " q=" << s.field->q();
  return os.str();
}

}  // namespace

std::vector<SuiteCheck> identity_suite(const FieldPtr& F) {
  std::vector<SuiteCheck> out;
  const std::string sc = field_scope(F);
  const u64 M = F->order();
  const long q = static_cast<long>(F->q());
  const Elem minus_one = F->sub(0, 1);
  auto ch = [&](u64 k) { return Char(F, static_cast<i64>(k)); };
  {
    Recorder r(out, "identities", "gauss_trivial", sc);
    r.guarded([&] {
      r.record(gauss(ch(0)) == Cyclo(1L) && gauss_circ(ch(0)) == Cyclo(q), "g(eps) != 1 or g°(eps) != q");
    });
  }
  {
    Recorder r(out, "identities", "gauss_reflection", sc);
    r.guarded([&] {
      for (u64 k = 0; k < M; ++k) {
        Char e = ch(k);
        r.record(gauss(e) * gauss_circ(e.inverse()) == e(minus_one) * mpq_class(q), sc + ", eta=phi^" + std::to_string(k));
      }
    });
  }
  {
    Recorder r(out, "identities", "gauss_norm", sc);
    r.guarded([&] {
      for (u64 k = 1; k < M; ++k) {
        Cyclo g = gauss(ch(k));
        r.record(g * g.conj() == Cyclo(q), sc + ", eta=phi^" + std::to_string(k));
      }
    });
  }
  {
    Recorder r(out, "identities", "jacobi_all_trivial", sc);
    r.guarded([&] {
      for (unsigned n = 1; n <= 3; ++n) {
        std::vector<Char> cs(n, ch(0));
        mpz_class t = 1;
        for (unsigned i = 0; i < n; ++i) t *= 1 - q;
        mpq_class v(1 - t);
        v /= q;
        Cyclo expect(v);
        r.record(jacobi_direct(cs) == expect && jacobi(cs) == expect, sc + ", n=" + std::to_string(n));
      }
    });
  }
  {
    Recorder r(out, "identities", "jacobi_gauss", sc);
    r.guarded([&] {
      auto check = [&](const std::vector<Char>& cs) {
        Char prod = cs[0];
        bool all_trivial = cs[0].trivial();
        Cyclo num = gauss(cs[0]);
        for (std::size_t i = 1; i < cs.size(); ++i) {
          prod = prod * cs[i];
          all_trivial = all_trivial && cs[i].trivial();
          num *= gauss(cs[i]);
        }
        if (all_trivial) return;
        r.record(jacobi_direct(cs) == num * gauss_circ_inverse(prod), sc + ", chars=" + chars_str(cs));
      };
      for (u64 a = 0; a < M; ++a)
        for (u64 b = 0; b < M; ++b) {
          check({ch(a), ch(b)});
          for (u64 c = 0; c < M; ++c) check({ch(a), ch(b), ch(c)});
        }
    });
  }
  {
    Recorder r(out, "identities", "jacobi_trivial_product", sc);
    r.guarded([&] {
      // needs some η_i ≠ ε
      for (u64 a = 0; a < M; ++a) {
        Char e1 = ch(a), e2 = ch(a).inverse();
        if (a != 0) r.record(jacobi_direct({e1, e2}) == e2(minus_one), sc + ", chars=" + chars_str({e1, e2}));
        for (u64 b = 0; b < M; ++b) {
          if (a == 0 && b == 0) continue;
          Char f2 = ch(b), f3 = (e1 * f2).inverse();
          r.record(jacobi_direct({e1, f2, f3}) == f3(minus_one) * jacobi_direct({e1, f2}), sc + ", chars=" + chars_str({e1, f2, f3}));
        }
      }
    });
  }
  {
    Recorder r(out, "identities", "jacobi_weighted_sum", sc);
    r.guarded([&] {
      for (u64 a = 0; a < M; ++a)
        for (u64 b = 0; b < M; ++b)
          for (u64 c = 0; c < M; ++c) {
            std::vector<Char> cs{ch(a), ch(b), ch(c)};
            r.record(weighted_jacobi_sum(cs) == weighted_jacobi_closed(cs), sc + ", chars=" + chars_str(cs));
          }
    });
  }
  {
    Recorder r(out, "identities", "multiplication_formula", sc);
    r.guarded([&] {
      for (u64 m : divisors(M))
        for (u64 k = 0; k < M; ++k) r.record(verify_dhmf(m, ch(k)));
    });
  }
  {
    Recorder r(out, "identities", "davenport_hasse", sc + ", r<=3");
    r.guarded([&] {
      for (unsigned lv = 1; lv <= 3; ++lv) {
        auto T = build_tower(F, lv);
        for (u64 k = 0; k < M; ++k) r.record(verify_dh(ch(k), *T));
      }
    });
  }
  {
    Recorder r(out, "identities", "pochhammer_multiplication", sc);
    r.guarded([&] {
      for (u64 m : divisors(M))
        for (u64 a = 0; a < M; ++a)
          for (u64 n = 0; n < M; ++n) r.record(poch_multiplication(ch(a), ch(n), m));
    });
  }
  {
    Recorder r(out, "identities", "reduction_remainder", sc);
    r.guarded([&] {
      for (u64 a = 0; a < M; ++a)
        for (u64 b = 0; b < M; ++b) {
          if (a == b) continue;
          const auto& red = hyperF_table(HGParams(F, {static_cast<i64>(a)}, {static_cast<i64>(b)}));
          for (u64 c = 0; c < M; ++c) {
            HGParams full(F, {static_cast<i64>(a), static_cast<i64>(c)}, {static_cast<i64>(b), static_cast<i64>(c)});
            const auto& tab = hyperF_table(full);
            Char cc = ch(c), ci = cc.inverse();
            int dl = c == 0 ? 1 : 0;
            Cyclo coeff = poch(ch(a), ci) * gauss_circ(ch(b)) * gauss_circ_inverse(ch(b) * ci);
            coeff *= dl ? mpq_class(1) : mpq_class(1, q);
            for (Elem l = 0; l < F->q(); ++l) {
              Cyclo expect = red[l] * mpq_class(dl ? q : 1);
              if (l != 0) expect += coeff * ci(l);
              r.record(tab[l] == expect, sc + ", F(phi^" + std::to_string(a) + ",phi^" + std::to_string(c) + "; phi^" +
                                             std::to_string(b) + ",phi^" + std::to_string(c) + "; " + std::to_string(l) + ")");
            }
          }
        }
    });
  }
  {
    Recorder r(out, "identities", "one_f_zero", sc);
    r.guarded([&] {
      for (u64 a = 1; a < M; ++a) {
        const auto& tab = hyperF_table(HGParams(F, {static_cast<i64>(a)}, {0}));
        for (Elem l = 1; l < F->q(); ++l) {
          Elem om = F->sub(1, l);
          Cyclo expect = om == 0 ? Cyclo() : ch(a).inverse()(om);
          r.record(tab[l] == expect, sc + ", alpha=phi^" + std::to_string(a) + ", lambda=" + std::to_string(l));
        }
      }
    });
  }
  return out;
}

std::vector<SuiteCheck> count_suite(const FieldPtr& F, u64 d, const std::vector<u64>& h) {
  std::vector<SuiteCheck> out;
  Surface s0(F, d, h, 0);
  const std::string sc = surface_scope(s0);
  auto cs = classes(s0);
  {
    Recorder gen(out, "counts", "general_formula_vs_oracle", sc + ", r=1, all lambda");
    Recorder tot(out, "counts", "class_sum_vs_plain", sc + ", r=1, all lambda");
    std::optional<Recorder> dw;
    if (s0.is_dwork()) dw.emplace(out, "counts", "dwork_formula_vs_oracle", sc + ", r=1, all lambda");
    for (Elem l = 1; l < F->q(); ++l) {
      Surface s = s0.with_lambda(l);
      auto oracle = oracle_N_all(s, 1);
      Cyclo total;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        std::string wit = s.describe() + ", w=" + wstr(cs[i]) + ", r=1";
        gen.guarded([&] {
          auto res = general_N_detail(s, cs[i], 1);
          gen.record(res.value == oracle[i], wit + ": " + res.method + " " + res.value.to_string() + ", oracle " + oracle[i].to_string());
        });
        if (dw) dw->guarded([&] {
            auto res = formula_N_detail(s, cs[i], 1);
            dw->record(res.value == oracle[i], wit + ": dwork " + res.value.to_string() + ", oracle " + oracle[i].to_string());
          });
        total += oracle[i];
      }
      u64 plain = oracle_count_plain(s, 1);
      tot.record(total == Cyclo(mpq_class(plain)), s.describe() + ": class sum " + total.to_string() + ", plain " + std::to_string(plain));
    }
  }
  {
    Recorder fr(out, "counts", "fermat_vs_oracle", sc + ", lambda=0");
    for (const auto& w : cs) {
      fr.record(fermat_N(s0, w, 1) == oracle_N(s0, 1, w), s0.describe() + ", w=" + wstr(w) + ", projective");
      fr.record(fermat_N(s0, w, 1, true) == oracle_N(s0, 1, w, true), s0.describe() + ", w=" + wstr(w) + ", torus");
    }
    for (const auto& w : full_lattice(s0)) {
      fr.record(fermat_N(s0, w, 1, false, true) == oracle_N(s0, 1, w, false, true), s0.describe() + ", G_0 character " + wstr(w));
      fr.record(fermat_N(s0, w, 1, true, true) == oracle_N(s0, 1, w, true, true), s0.describe() + ", G_0 character " + wstr(w) + ", torus");
    }
  }
  return out;
}

std::vector<SuiteCheck> dwork_extension_suite(const FieldPtr& F, u64 d, const std::vector<Elem>& lambdas, unsigned r_max) {
  std::vector<SuiteCheck> out;
  for (Elem l : lambdas) {
    Surface s = Surface::dwork(F, d, l);
    Recorder r(out, "counts", "dwork_extension_vs_oracle", surface_scope(s) + ", lambda=" + std::to_string(l) + ", r<=" + std::to_string(r_max));
    for (unsigned lv = 1; lv <= r_max; ++lv) {
      auto oracle = oracle_N_all(s, lv);
      auto cs = classes(s);
      for (std::size_t i = 0; i < cs.size(); ++i)
        r.guarded([&] {
          Cyclo v = formula_N(s, cs[i], lv);
          r.record(v == oracle[i], s.describe() + ", w=" + wstr(cs[i]) + ", r=" + std::to_string(lv) + ": " + v.to_string() + ", oracle " + oracle[i].to_string());
        });
    }
  }
  return out;
}

std::vector<SuiteCheck> relation_suite(const FieldPtr& F, u64 d, unsigned r_max, const std::vector<Elem>& lambdas_in) {
  std::vector<SuiteCheck> out;
  const std::vector<Elem> lambdas = lambdas_in.empty() ? smooth_lambdas(F, d) : lambdas_in;
  const std::string sc = "Dwork d=" + std::to_string(d) + " q=" + std::to_string(F->q());
  {
    Recorder r(out, "relations", "two_f_one_relation", sc + ", r<=" + std::to_string(r_max));
    for (u64 a = 1; a < d; ++a)
      for (u64 b = 1; b < d; ++b)
        for (u64 c = 1; c < d; ++c) {
          if (a == c || b == c || (c + 2 * d - a - b) % d != (d * (d - 1) / 2) % d) continue;
          for (Elem l : lambdas)
            for (unsigned lv = 1; lv <= r_max; ++lv) r.record(verify_relation_2f1(F, d, a, b, c, l, lv));
        }
  }
  {
    Recorder r(out, "relations", "newton_reduction", sc + ", r<=" + std::to_string(r_max));
    for (Elem l : lambdas) {
      Surface s = Surface::dwork(F, d, l);
      for (const auto& w : classes(s))
        for (unsigned lv = 1; lv <= r_max; ++lv) r.record(verify_main4(s, w, lv));
    }
  }
  if (d == 3) {
    Recorder r(out, "relations", "hesse_relation", sc + ", r<=" + std::to_string(r_max));
    for (Elem l : lambdas)
      for (u64 m = 1; m <= 2; ++m)
        for (unsigned lv = 1; lv <= r_max; ++lv) r.record(verify_hesse(F, l, m, lv));
  }
  if (d == 4) {
    Recorder r(out, "relations", "quartic_alpha_relation", sc + ", r<=" + std::to_string(r_max));
    for (Elem l : lambdas)
      for (u64 m = 1; m <= 3; ++m)
        for (unsigned lv = 1; lv <= r_max; ++lv) r.record(verify_main5(F, m, l, lv));
  }
  {
    Recorder r(out, "relations", "reduced_value_bound", sc + ", r<=" + std::to_string(r_max));
    for (Elem l : lambdas) {
      Surface s = Surface::dwork(F, d, l);
      for (const auto& cls : classes(s))
        for (const auto& w : class_members(s, cls)) {
          if (dwork_delta(w)) continue;
          for (unsigned lv = 1; lv <= r_max; ++lv) r.record(verify_weil_F_red(s, w, lv));
        }
    }
  }
  return out;
}

std::vector<SuiteCheck> hesse_suite(const FieldPtr& F, Elem lambda) {
  std::vector<SuiteCheck> out;
  Surface s = Surface::dwork(F, 3, lambda);
  const std::string sc = s.describe();
  const long q = static_cast<long>(F->q());
  LOptions opt;
  opt.oracle_max_r = 3;
  Recorder r(out, "lfun", "hesse_l_function", sc);
  r.guarded([&] {
    LSeries L = artin_L(s, {0, 0, 0}, opt);
    r.record(L.k == 2 && L.charpoly.size() == 3, sc + ": numerator degree " + std::to_string(L.charpoly.size() - 1));
    if (L.charpoly.size() == 3) r.record(L.charpoly[2] == Cyclo(q), sc + ": e_2 = " + L.charpoly[2].to_string());
    r.record(L.certified && L.certified_through >= 4, sc + ": not certified through r = 4");
    if (L.counts.size() >= 4) {
      Cyclo pred = counts_of_rational(L.numerator, L.denominator, 4)[3];
      r.record(pred == formula_N(s, {0, 0, 0}, 4), sc + ": predicted N_4 " + pred.to_string());
    }
    Zeta Z = zeta(s);
    TPoly den{Cyclo(1L), Cyclo(-(q + 1)), Cyclo(q)};
    r.record(Z.integral && Z.numerator == L.charpoly && Z.denominator == den, sc + ": zeta is not P(t)/((1-t)(1-qt))");
    WeilResult W = weil_check(L.charpoly, F->q(), 1);
    r.record(W.pass && W.symmetric_checked, sc + ": " + W.witness);
  });
  return out;
}

std::vector<SuiteCheck> k3_suite(const FieldPtr& F, Elem lambda, unsigned terms) {
  std::vector<SuiteCheck> out;
  Surface s = Surface::dwork(F, 4, lambda);
  const std::string sc = s.describe();
  Zeta Z;
  {
    Recorder r(out, "lfun", "zeta_integral", sc);
    r.guarded([&] {
      Z = zeta(s);
      r.record(Z.integral, sc + ": non-integral zeta");
      for (const auto& c : Z.expand(terms)) r.record(c.as_integer().has_value(), sc + ": non-integral series coefficient " + c.to_string());
    });
  }
  {
    Recorder r(out, "lfun", "zeta_closed_product", sc + ", through t^" + std::to_string(terms));
    r.guarded([&] {
      TPoly a = Z.expand(terms);
      for (u64 m = 1; m <= 3; ++m) {
        K3Closed K = k3_closed(F, lambda, m);
        TPoly b = series_div({Cyclo(1L)}, K.denominator, terms);
        for (unsigned i = 0; i <= terms; ++i)
          r.record(a[i] == b[i], sc + ", m=" + std::to_string(m) + ": t^" + std::to_string(i) + " coefficient " + a[i].to_string() +
                                     " vs closed " + b[i].to_string());
        bool integral = true;
        for (const auto& c : K.Q) integral = integral && c.as_integer().has_value();
        r.record(integral, sc + ", m=" + std::to_string(m) + ": Q(t) not integral");
        r.record(verify_main5(F, m, lambda, 1));
      }
    });
  }
  {
    Recorder r(out, "lfun", "weil_numerators", sc);
    for (const auto& L : Z.factors) {
      WeilResult W = weil_check(L.charpoly, F->q(), 2);
      r.record(W.pass, sc + ", w=" + wstr(L.w) + ": " + W.witness);
    }
  }
  return out;
}

std::vector<SuiteCheck> permutation_suite(const FieldPtr& F, u64 d) {
  std::vector<SuiteCheck> out;
  const u64 q = F->q();
  Recorder r(out, "lfun", "permutation_classes", "Dwork d=" + std::to_string(d) + " q=" + std::to_string(q) + ", all lambda");
  for (Elem l = 1; l < q; ++l) {
    Surface s = Surface::dwork(F, d, l);
    for (const auto& w : classes(s)) {
      if (!is_permutation_class(w)) continue;
      r.guarded([&] {
        LOptions opt;
        opt.oracle_max_r = 1;
        LSeries L = artin_L(s, w, opt);
        TPoly den{Cyclo(1L)};
        if (F->pow(l, static_cast<i64>(d)) == 1) {
          mpz_class c;
          mpz_ui_pow_ui(c.get_mpz_t(), q, static_cast<unsigned long>((d - 1) / 2));
          if (((q - 1) / d) % 2) c = -c;
          den.push_back(Cyclo(mpq_class(-c)));
        }
        r.record(L.certified && L.numerator == TPoly{Cyclo(1L)} && L.denominator == den,
                 s.describe() + ", w=" + wstr(w) + ": unexpected L-function");
      });
    }
  }
  return out;
}

std::vector<SuiteCheck> weil_suite(const FieldPtr& F, u64 d, const std::vector<Elem>& lambdas) {
  std::vector<SuiteCheck> out;
  Recorder r(out, "lfun", "weil_numerators", "Dwork d=" + std::to_string(d) + " q=" + std::to_string(F->q()));
  for (Elem l : lambdas) {
    Surface s = Surface::dwork(F, d, l);
    for (const auto& w : classes(s))
      r.guarded([&] {
        LSeries L = artin_L(s, w);
        WeilResult W = weil_check(L.charpoly, F->q(), static_cast<unsigned>(d - 2));
        r.record(W.pass, s.describe() + ", w=" + wstr(w) + ": " + W.witness);
      });
  }
  return out;
}

}  // namespace hgfq
