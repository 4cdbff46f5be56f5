#include <gtest/gtest.h>

#include <set>

#include "hgfq/error.hpp"
#include "hgfq/ffield.hpp"

using namespace hgfq;

TEST(FField, PrimeFieldGenerator) {
  auto F = build_field(7, 1);
  EXPECT_EQ(F->q(), 7u);
  EXPECT_EQ(F->generator(), 3u);
  std::set<Elem> seen;
  for (u64 k = 0; k < 6; ++k) seen.insert(F->exp(static_cast<i64>(k)));
  EXPECT_EQ(seen.size(), 6u);
}

TEST(FField, ArithmeticAxiomsF9) {
  auto F = build_field(3, 2);
  for (Elem a = 0; a < 9; ++a) {
    EXPECT_EQ(F->add(a, F->neg(a)), 0u);
    for (Elem b = 0; b < 9; ++b) {
      EXPECT_EQ(F->add(a, b), F->add(b, a));
      EXPECT_EQ(F->mul(a, b), F->mul(b, a));
      for (Elem c = 0; c < 9; ++c) EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
    }
    if (a) {
      EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
      EXPECT_EQ(F->exp(static_cast<i64>(F->dlog(a))), a);
    }
  }
}

TEST(FField, DigitAddition) {
  auto F = build_field(2, 4);
  for (Elem a = 0; a < 16; ++a)
    for (Elem b = 0; b < 16; ++b) EXPECT_EQ(F->add(a, b), a ^ b);
}

TEST(FField, TraceIsAdditiveAndFrobeniusInvariant) {
  auto F = build_field(5, 2);
  for (Elem a = 0; a < 25; ++a) {
    EXPECT_EQ(F->trace(a), F->trace(F->pow(a, 5)));
    for (Elem b = 0; b < 25; ++b) EXPECT_EQ(F->trace(F->add(a, b)), (F->trace(a) + F->trace(b)) % 5);
  }
  EXPECT_EQ(F->trace(1), 2u);
}

TEST(FField, MinusOne) {
  auto F = build_field(13, 1);
  EXPECT_EQ(F->dlog(F->from_int(-1)), 6u);
}

TEST(FField, TowerCompatibleGenerator) {
  auto F = build_field(7, 1);
  for (unsigned r = 1; r <= 3; ++r) {
    auto T = build_tower(F, r);
    EXPECT_EQ(T->ext->q(), ipow(7, r));
    Elem gc = T->g_compat();
    EXPECT_EQ(T->ext->pow(gc, static_cast<i64>(T->index())), T->embed(F->generator()));
    for (Elem a = 0; a < 7; ++a)
      for (Elem b = 0; b < 7; ++b) {
        EXPECT_EQ(T->embed(F->add(a, b)), T->ext->add(T->embed(a), T->embed(b)));
        EXPECT_EQ(T->embed(F->mul(a, b)), T->ext->mul(T->embed(a), T->embed(b)));
      }
    for (Elem x = 1; x < T->ext->q(); x += 7) {
      auto n = T->norm(x);
      EXPECT_EQ(T->embed(n), T->ext->pow(x, static_cast<i64>(T->index())));
    }
    for (Elem a = 0; a < 7; ++a) EXPECT_EQ(T->restrict(T->embed(a)).value(), a);
  }
}

TEST(FField, TowerOverExtension) {
  auto F = build_field(2, 2);
  auto T = build_tower(F, 2);
  EXPECT_EQ(T->ext->q(), 16u);
  EXPECT_EQ(T->ext->pow(T->g_compat(), 5), T->embed(F->generator()));
}

TEST(FField, RejectsBadInput) {
  EXPECT_THROW(build_field(6, 1), DomainError);
  EXPECT_THROW(build_field(2, 40), Error);
  auto F = build_field(5, 1);
  EXPECT_THROW(F->inv(0), DomainError);
  EXPECT_THROW(F->dlog(0), DomainError);
}
