#include <gtest/gtest.h>

#include "hgfq/error.hpp"
#include "hgfq/hyperf.hpp"

using namespace hgfq;

TEST(Hyperf, PochBasics) {
  auto F = build_field(7, 1);
  for (i64 a = 0; a < 6; ++a) {
    EXPECT_EQ(poch(Char(F, a), Char(F, 0)), Cyclo(1L));
    EXPECT_EQ(poch_circ(Char(F, a), Char(F, 0)), Cyclo(1L));
    EXPECT_EQ(poch(Char(F, 0), Char(F, a)), gauss(Char(F, a)));
    for (i64 n = 0; n < 6; ++n) {
      Char al(F, a), nu(F, n);
      int shift = delta(al * nu) - delta(al);
      Cyclo expect = poch(al, nu);
      if (shift > 0) expect *= mpq_class(7);
      if (shift < 0) expect /= mpq_class(7);
      EXPECT_EQ(poch_circ(al, nu), expect);
    }
  }
}

TEST(Hyperf, PochMultiplication) {
  auto F = build_field(7, 1);
  for (u64 m : {1u, 2u, 3u, 6u})
    for (i64 a = 0; a < 6; ++a)
      for (i64 n = 0; n < 6; ++n) EXPECT_TRUE(poch_multiplication(Char(F, a), Char(F, n), m).pass);
}

TEST(Hyperf, OneFZero) {
  auto F = build_field(7, 1);
  EXPECT_EQ(hyperF(HGParams(F, {3}, {0}), 3), Cyclo(-1L));
  for (i64 a = 1; a < 6; ++a)
    for (Elem l = 1; l < 7; ++l) {
      Char al(F, a);
      Elem one_minus = F->sub(1, l);
      Cyclo expect = one_minus == 0 ? Cyclo() : al.inverse()(one_minus);
      EXPECT_EQ(hyperF(HGParams(F, {a}, {0}), l), expect);
    }
}

TEST(Hyperf, LambdaZero) {
  auto F = build_field(11, 1);
  EXPECT_TRUE(hyperF(HGParams(F, {1, 3}, {0, 5}), 0).is_zero());
}

TEST(Hyperf, RejectsUnequalLengths) {
  auto F = build_field(7, 1);
  EXPECT_THROW(HGParams(F, {1, 2}, {0}), DomainError);
}

TEST(Hyperf, OrderInvariant) {
  auto F = build_field(13, 1);
  EXPECT_EQ(hyperF(HGParams(F, {1, 5}, {0, 3}), 4), hyperF(HGParams(F, {5, 1}, {3, 0}), 4));
}

TEST(Hyperf, ReductionWithRemainder) {
  auto F = build_field(7, 1);
  for (i64 a = 0; a < 6; ++a)
    for (i64 b = 0; b < 6; ++b)
      for (i64 c = 0; c < 6; ++c) {
        if (a == b) continue;
        HGParams full(F, {a, c}, {b, c});
        for (Elem l = 0; l < 7; ++l) {
          auto red = reduce_with_remainder(full, l);
          EXPECT_EQ(red.recombined(), hyperF(full, l)) << a << b << c << " " << l;
          EXPECT_EQ(red.delta, c == 0 ? 1 : 0);
        }
      }
}

TEST(Hyperf, CancelListed) {
  auto F = build_field(7, 1);
  HGParams full(F, {1, 2, 4}, {0, 2, 3});
  EXPECT_EQ(hyperF_reduced(full, {Char(F, 2)}, 3), hyperF(HGParams(F, {1, 4}, {0, 3}), 3));
  EXPECT_THROW(cancel_listed(full, {}), DomainError);
  EXPECT_THROW(cancel_listed(full, {Char(F, 1)}), DomainError);
}

TEST(Hyperf, DworkPermutation) {
  auto F = build_field(13, 1);
  // w = (0,1,2,3) for d = 4: numerator equals denominator, F_red is the empty series
  HGParams p(F, {0, 3, 6, 9}, {0, 3, 6, 9});
  for (Elem l = 1; l < 13; ++l) {
    Elem l4 = F->pow(l, 4);
    EXPECT_EQ(hyperF_red(p, l4), l4 == 1 ? Cyclo(-1L) : Cyclo());
  }
}

TEST(Hyperf, ModularAgreesWithExact) {
  auto F = build_field(13, 1);
  HGParams p(F, {1, 4, 7}, {0, 3, 9});
  std::vector<Elem> ls{1, 2, 5, 12};
  EXPECT_EQ(hyperF_multi(p, ls, Backend::Exact), hyperF_multi(p, ls, Backend::Modular));
}
