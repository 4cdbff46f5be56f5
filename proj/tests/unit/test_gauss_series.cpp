#include <gtest/gtest.h>

#include "hgfq/charsum.hpp"
#include "hgfq/gauss_series.hpp"

using namespace hgfq;

namespace {

// 2F1-shaped series with alphas a1, a2 and betas 0, b.
GaussSeries two_f_one(const FieldPtr& F, i64 a1, i64 a2, i64 b) {
  GaussSeries s;
  s.field = F;
  s.scalar = mpq_class(1, 1 - static_cast<long>(F->q()));
  for (i64 a : {a1, a2}) {
    s.factors.push_back({a, 1, 1, false});
    s.factors.push_back({a, 0, -1, false});
  }
  for (i64 c : {i64{0}, b}) {
    s.factors.push_back({c, 1, -1, true});
    s.factors.push_back({c, 0, 1, true});
  }
  return s;
}

}  // namespace

TEST(GaussSeries, ExactMatchesModular) {
  auto F = build_field(13, 1);
  auto s = two_f_one(F, 1, 3, 2);
  std::vector<Elem> args;
  for (Elem x = 0; x < 13; ++x) args.push_back(x);
  auto a = evaluate(s, args, Backend::Exact);
  auto b = evaluate(s, args, Backend::Modular);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]) << i;
  EXPECT_TRUE(a[0].is_zero());
}

TEST(GaussSeries, ProductMode) {
  auto F = build_field(7, 1);
  GaussSeries s;
  s.field = F;
  s.factors = {{1, 0, 1, false}, {2, 0, 1, false}, {3, 0, -1, true}};
  Cyclo ex = evaluate_product(s, Backend::Exact);
  Cyclo mo = evaluate_product(s, Backend::Modular);
  EXPECT_EQ(ex, mo);
  EXPECT_EQ(ex, jacobi({Char(F, 1), Char(F, 2)}));
}

TEST(GaussSeries, SubfieldOrder) {
  auto F = build_field(13, 1);
  auto s = two_f_one(F, 3, 9, 6);
  EXPECT_EQ(value_order(s), 4u);
  auto a = evaluate(s, {2, 5}, Backend::Exact);
  auto b = evaluate(s, {2, 5}, Backend::Modular);
  EXPECT_EQ(a, b);
}

TEST(GaussSeries, ExtensionFieldBluestein) {
  auto F = build_field(3, 8);  // q - 1 = 6560 forces the chirp transform
  GaussSeries s;
  s.field = F;
  s.factors = {{1640, 0, 1, false}, {1640, 0, 1, false}, {3280, 0, -1, true}};
  Cyclo v = evaluate_product(s, Backend::Modular);
  // j(η, η) for the quartic η
  Cyclo j = jacobi({Char(F, 1640), Char(F, 1640)});
  EXPECT_EQ(v, j.minimal());
}
