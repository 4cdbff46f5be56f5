#include <gtest/gtest.h>

#include <random>

#include "hgfq/error.hpp"
#include "hgfq/lfun.hpp"

using namespace hgfq;

namespace {

std::vector<mpq_class> elem_sym(const std::vector<mpq_class>& a) {
  std::vector<mpq_class> e{1};
  for (const auto& x : a) {
    e.push_back(0);
    for (std::size_t i = e.size() - 1; i > 0; --i) e[i] += e[i - 1] * x;
  }
  e.erase(e.begin());
  return e;
}

}  // namespace

TEST(Newton, SmallPolynomials) {
  auto b = newton_convert(2, 4);
  SymPoly x1 = SymPoly::variable(2, 0), x2 = SymPoly::variable(2, 1);
  EXPECT_EQ(b.P[1], x1 * x1 - x2 * mpq_class(2));
  EXPECT_EQ(b.Q[1], (x1 * x1 - x2) * mpq_class(1, 2));
  EXPECT_EQ(b.R[0], x1);
  EXPECT_EQ(b.R[1], x2);
  for (const auto& p : b.P) EXPECT_TRUE(p.integral());
  auto b3 = newton_convert(3, 3);
  SymPoly y1 = SymPoly::variable(3, 0), y2 = SymPoly::variable(3, 1), y3 = SymPoly::variable(3, 2);
  EXPECT_EQ(b3.Q[2], (y1 * y1 * y1 - y1 * y2 * mpq_class(3) + y3 * mpq_class(2)) * mpq_class(1, 6));
}

TEST(Newton, RandomTuples) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  for (unsigned k = 1; k <= 4; ++k) {
    auto b = newton_convert(k, 8);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<mpq_class> a;
      for (unsigned i = 0; i < k; ++i) {
        mpq_class x(num(rng), den(rng));
        x.canonicalize();
        a.push_back(x);
      }
      auto e = elem_sym(a);
      std::vector<mpq_class> p;
      for (unsigned r = 1; r <= 8; ++r) {
        mpq_class s = 0;
        for (const auto& x : a) {
          mpq_class t = 1;
          for (unsigned i = 0; i < r; ++i) t *= x;
          s += t;
        }
        p.push_back(s);
      }
      for (unsigned r = 1; r <= 8; ++r) EXPECT_EQ(b.P[r - 1](e), p[r - 1]);
      std::vector<mpq_class> pk(p.begin(), p.begin() + k);
      for (unsigned i = 1; i <= k; ++i) EXPECT_EQ(b.Q[i - 1](pk), e[i - 1]);
      for (unsigned r = 1; r <= 8; ++r) EXPECT_EQ(b.R[r - 1](pk), p[r - 1]);
    }
  }
}

TEST(Newton, CharpolyAndSeries) {
  Cyclo a(3L), b(-5L);
  auto cp = charpoly_from_counts({a + b, a * a + b * b});
  ASSERT_EQ(cp.size(), 3u);
  EXPECT_EQ(cp[1], Cyclo(2L));
  EXPECT_EQ(cp[2], Cyclo(-15L));
  auto N = counts_of_rational({Cyclo(1L)}, cp, 5);
  for (unsigned r = 1; r <= 5; ++r) EXPECT_EQ(N[r - 1], a.pow(r) + b.pow(r));
  EXPECT_EQ(series_exp_counts(N, 5), series_div({Cyclo(1L)}, cp, 5));
}

TEST(LFun, DimFormula) {
  auto F13 = build_field(13, 1);
  Surface k3 = Surface::dwork(F13, 4, 2);
  EXPECT_EQ(dim_formula(k3, {0, 0, 0, 0}), 3u);
  EXPECT_EQ(dim_formula(k3, {1, 1, 3, 3}), 2u);
  EXPECT_EQ(dim_formula(k3, {1, 2, 2, 3}), 1u);
  unsigned total = 0;
  for (const auto& w : classes(k3)) total += dim_formula(k3, w);
  EXPECT_EQ(total, 21u);
  auto F7 = build_field(7, 1);
  Surface h = Surface::dwork(F7, 3, 3);
  EXPECT_EQ(dim_formula(h, {0, 1, 2}), 0u);
  total = 0;
  for (const auto& w : classes(h)) total += dim_formula(h, w);
  EXPECT_EQ(total, 2u);
}

TEST(LFun, Hesse) {
  auto F7 = build_field(7, 1);
  Surface h = Surface::dwork(F7, 3, 3);
  LOptions opt;
  opt.oracle_max_r = 3;
  auto L = artin_L(h, {0, 0, 0}, opt);
  ASSERT_EQ(L.charpoly.size(), 3u);
  EXPECT_EQ(L.charpoly[2], Cyclo(7L));
  EXPECT_TRUE(L.certified);
  EXPECT_EQ(L.certified_through, 5u);
  EXPECT_EQ(L.oracle_levels.size(), 3u);
  EXPECT_EQ(L.counts[3], formula_N(h, {0, 0, 0}, 4));
  auto W = weil_check(L.charpoly, 7, 1);
  EXPECT_TRUE(W.pass) << W.witness;
  EXPECT_TRUE(W.symmetric_checked);
  auto Z = zeta(h);
  EXPECT_TRUE(Z.integral);
  EXPECT_EQ(Z.numerator, L.charpoly);
  EXPECT_EQ(Z.denominator, (TPoly{Cyclo(1L), Cyclo(-8L), Cyclo(7L)}));
  for (unsigned r = 1; r <= 4; ++r)
    for (u64 m = 1; m <= 2; ++m) EXPECT_TRUE(verify_hesse(F7, 3, m, r).pass);
}

TEST(LFun, PermutationClass) {
  auto F7 = build_field(7, 1);
  auto L = artin_L(Surface::dwork(F7, 3, 3), {0, 1, 2});
  EXPECT_EQ(L.k, 0u);
  EXPECT_EQ(L.numerator, TPoly{Cyclo(1L)});
  EXPECT_EQ(L.denominator, TPoly{Cyclo(1L)});
  // λ^3 = 1: (1 - (-1)^{(q-1)/3} q t)^{-1}
  LOptions opt;
  opt.oracle_max_r = 2;
  auto S = artin_L(Surface::dwork(F7, 3, 2), {0, 1, 2}, opt);
  EXPECT_TRUE(S.certified);
  EXPECT_EQ(S.denominator, (TPoly{Cyclo(1L), Cyclo(-7L)}));
}

TEST(LFun, SingularCountsOnly) {
  auto F7 = build_field(7, 1);
  auto L = artin_L(Surface::dwork(F7, 3, 1), {0, 0, 0});
  EXPECT_FALSE(L.rational);
  EXPECT_FALSE(L.certified);
  EXPECT_THROW(zeta(Surface::dwork(F7, 3, 1)), DomainError);
}

TEST(LFun, Relations) {
  auto F13 = build_field(13, 1);
  EXPECT_TRUE(verify_relation_2f1(F13, 4, 1, 3, 2, 2, 3).pass);
  EXPECT_THROW(verify_relation_2f1(F13, 4, 1, 1, 2, 2, 3), DomainError);
  EXPECT_THROW(verify_relation_2f1(F13, 4, 1, 3, 2, 5, 3), DomainError);  // 5^4 = 1
  Surface k3 = Surface::dwork(F13, 4, 2);
  for (unsigned r = 1; r <= 3; ++r) EXPECT_TRUE(verify_main4(k3, {1, 1, 3, 3}, r).pass);
  EXPECT_THROW(verify_main4(Surface::dwork(F13, 4, 0), {1, 1, 3, 3}, 2), DomainError);
  for (u64 m = 1; m <= 3; ++m) EXPECT_TRUE(verify_main5(F13, m, 2, 3).pass);
  EXPECT_TRUE(verify_weil_F_red(k3, {1, 1, 3, 3}, 2).pass);
}

TEST(LFun, WeilCheck) {
  EXPECT_TRUE(weil_check({Cyclo(1L)}, 5, 2).pass);
  // (1 - 5t)^2: a double root
  auto W = weil_check({Cyclo(1L), Cyclo(-10L), Cyclo(25L)}, 5, 2);
  EXPECT_TRUE(W.pass) << W.witness;
  auto complex_pair = weil_check({Cyclo(1L), Cyclo(-1L), Cyclo(25L)}, 5, 2);
  EXPECT_TRUE(complex_pair.pass);
  auto off = weil_check({Cyclo(1L), Cyclo(-6L), Cyclo(5L)}, 5, 2);
  EXPECT_FALSE(off.pass);
  // ζ_4-coefficient polynomial 1 - 5i t
  auto c = weil_check({Cyclo(1L), -Cyclo::root(4, 1) * mpq_class(5)}, 5, 2);
  EXPECT_TRUE(c.pass);
  EXPECT_FALSE(c.symmetric_checked);
}
