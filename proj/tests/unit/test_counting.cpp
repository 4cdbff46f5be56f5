#include <gtest/gtest.h>

#include <cstdlib>

#include "hgfq/counting.hpp"
#include "hgfq/error.hpp"

using namespace hgfq;

TEST(Counting, SurfaceValidation) {
  auto F7 = build_field(7, 1);
  EXPECT_THROW(Surface(F7, 3, {1, 1}, 3), DomainError);
  EXPECT_THROW(Surface(F7, 4, {1, 1, 1, 1}, 3), DomainError);
  EXPECT_THROW(Surface(F7, 4, {2, 2}, 3), DomainError);
  EXPECT_NO_THROW(Surface(F7, 3, {1, 1, 1}, 3));
  EXPECT_TRUE(Surface::dwork(F7, 3, 3).smooth());
  EXPECT_FALSE(Surface::dwork(F7, 3, 1).smooth());
}

TEST(Counting, ClassStructure) {
  auto F13 = build_field(13, 1);
  Surface k3 = Surface::dwork(F13, 4, 2);
  auto cs = classes(k3);
  EXPECT_EQ(cs.size(), 16u);
  EXPECT_EQ(cs.front(), (Weights{0, 0, 0, 0}));
  EXPECT_EQ(canonical_class(k3, {1, 1, 1, 1}), (Weights{0, 0, 0, 0}));
  EXPECT_EQ(trivial_shift(k3, {3, 3, 3, 3}), 3);
  EXPECT_EQ(trivial_shift(k3, {1, 1, 3, 3}), -1);
  EXPECT_EQ(class_members(k3, {1, 2, 2, 3}).size(), 4u);
  EXPECT_TRUE(is_permutation_class({2, 0, 1}));
  EXPECT_FALSE(is_permutation_class({1, 1, 1}));
  EXPECT_EQ(dwork_delta({1, 0, 2}), 1);
  EXPECT_FALSE(in_W(k3, {1, 0, 0, 0}));
}

TEST(Counting, FormulaMatchesOracle) {
  auto F7 = build_field(7, 1);
  Surface s(F7, 3, {1, 1, 1}, 0);
  for (Elem l = 1; l < 7; ++l) {
    Surface t = s.with_lambda(l);
    auto oracle = oracle_N_all(t, 1);
    auto cs = classes(t);
    Cyclo total;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      auto res = formula_N_detail(t, cs[i], 1);
      EXPECT_EQ(res.method, "dwork");
      EXPECT_EQ(res.value, oracle[i]) << t.describe();
      total += res.value;
    }
    EXPECT_EQ(total, Cyclo(mpq_class(oracle_count_plain(t, 1))));
  }
}

TEST(Counting, WeightedSurface) {
  auto F17 = build_field(17, 1);
  Surface s(F17, 4, {1, 1, 2}, 5);
  auto cs = classes(s);
  Cyclo total;
  for (const auto& w : cs) {
    auto res = formula_N_detail(s, w, 1);
    EXPECT_TRUE(res.method == "projective" || res.method == "reduced");
    EXPECT_EQ(res.value, oracle_N(s, 1, w));
    total += res.value;
  }
  EXPECT_EQ(total, Cyclo(mpq_class(oracle_count_plain(s, 1))));
}

TEST(Counting, FermatBranch) {
  auto F13 = build_field(13, 1);
  Surface s = Surface::dwork(F13, 3, 0);
  for (const auto& w : classes(s)) {
    EXPECT_EQ(fermat_N(s, w, 1), oracle_N(s, 1, w));
    EXPECT_EQ(fermat_N(s, w, 1, true), oracle_N(s, 1, w, true));
  }
  for (const auto& w : full_lattice(s)) EXPECT_EQ(fermat_N(s, w, 1, false, true), oracle_N(s, 1, w, false, true));
}

TEST(Counting, DworkExtensions) {
  auto F7 = build_field(7, 1);
  Surface s = Surface::dwork(F7, 3, 5);
  for (unsigned r = 1; r <= 2; ++r)
    for (const auto& w : classes(s)) EXPECT_EQ(dwork_N(s, w, r), oracle_N(s, r, w)) << "r=" << r;
  // singular fiber: the permutation classes pick up ±q^{(d-1)/2}
  Surface sing = Surface::dwork(F7, 3, 1);
  for (const auto& w : classes(sing)) EXPECT_EQ(dwork_N(sing, w, 1), oracle_N(sing, 1, w));
}

TEST(Counting, Budgets) {
  auto F13 = build_field(13, 1);
  Surface s = Surface::dwork(F13, 4, 2);
  Budgets tiny{10, 10};
  EXPECT_THROW(oracle_count_plain(s, 1, tiny), BudgetError);
  EXPECT_THROW(oracle_N(s, 1, {0, 0, 0, 0}, false, false, tiny), BudgetError);
  setenv("HGFQ_BUDGET_PLAIN", "1234", 1);
  EXPECT_EQ(default_budgets().plain, 1234u);
  unsetenv("HGFQ_BUDGET_PLAIN");
  EXPECT_EQ(default_budgets().plain, Budgets{}.plain);
}

TEST(Counting, LambdaZeroRefused) {
  auto F7 = build_field(7, 1);
  Surface s = Surface::dwork(F7, 3, 0);
  EXPECT_THROW(formula_N(s, {0, 0, 0}, 1), DomainError);
  EXPECT_THROW(koblitz_N_star(s, {0, 0, 0}, 1), DomainError);
}
