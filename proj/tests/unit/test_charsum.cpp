#include <gtest/gtest.h>

#include "hgfq/charsum.hpp"
#include "hgfq/error.hpp"

using namespace hgfq;

TEST(Charsum, GaussTrivial) {
  auto F = build_field(7, 1);
  EXPECT_EQ(gauss(Char(F, 0)), Cyclo(1L));
  EXPECT_EQ(gauss_circ(Char(F, 0)), Cyclo(7L));
}

TEST(Charsum, GaussNorm) {
  for (auto [p, f] : std::vector<std::pair<u64, unsigned>>{{5, 1}, {7, 1}, {3, 2}, {2, 4}}) {
    auto F = build_field(p, f);
    for (u64 k = 1; k < F->order(); ++k) {
      Char eta(F, static_cast<i64>(k));
      EXPECT_EQ(gauss(eta) * gauss(eta).conj(), Cyclo(static_cast<long>(F->q())));
      EXPECT_EQ(gauss(eta) * gauss_inverse(eta), Cyclo(1L));
    }
  }
}

TEST(Charsum, QuadraticGaussSquare) {
  auto F = build_field(13, 1);
  Cyclo g = gauss(char_of_order(F, 2));
  EXPECT_EQ(g * g, Cyclo(13L));
  auto F7 = build_field(7, 1);
  Cyclo h = gauss(char_of_order(F7, 2));
  EXPECT_EQ(h * h, Cyclo(-7L));
}

TEST(Charsum, JacobiRoutesAgree) {
  auto F = build_field(7, 1);
  for (u64 a = 0; a < 6; ++a)
    for (u64 b = 0; b < 6; ++b)
      for (u64 c = 0; c < 6; c += 2) {
        std::vector<Char> cs{Char(F, static_cast<i64>(a)), Char(F, static_cast<i64>(b)), Char(F, static_cast<i64>(c))};
        EXPECT_EQ(jacobi(cs), jacobi_direct(cs));
      }
}

TEST(Charsum, JacobiAllTrivial) {
  auto F = build_field(7, 1);
  EXPECT_EQ(jacobi({Char(F, 0), Char(F, 0)}), Cyclo(-5L));
  EXPECT_EQ(jacobi({Char(F, 0)}), Cyclo(1L));
}

TEST(Charsum, WeightedSum) {
  auto F = build_field(5, 1);
  for (u64 a = 0; a < 4; ++a)
    for (u64 b = 0; b < 4; ++b)
      for (u64 c = 0; c < 4; ++c) {
        std::vector<Char> cs{Char(F, static_cast<i64>(a)), Char(F, static_cast<i64>(b)), Char(F, static_cast<i64>(c))};
        EXPECT_EQ(weighted_jacobi_sum(cs), weighted_jacobi_closed(cs));
      }
}

TEST(Charsum, HasseDavenport) {
  auto F = build_field(5, 1);
  for (unsigned r = 1; r <= 3; ++r) {
    auto T = build_tower(F, r);
    for (u64 k = 0; k < 4; ++k) EXPECT_TRUE(verify_dh(Char(F, static_cast<i64>(k)), *T).pass);
  }
}

TEST(Charsum, MultiplicationFormula) {
  auto F = build_field(13, 1);
  for (u64 m : {1u, 2u, 3u, 4u, 6u, 12u})
    for (u64 k = 0; k < 12; ++k) EXPECT_TRUE(verify_dhmf(m, Char(F, static_cast<i64>(k))).pass);
  EXPECT_THROW(char_of_order(F, 5), DomainError);
}

TEST(Charsum, FaultInjectionDetected) {
  auto F = build_field(11, 1);
  auto T = build_tower(F, 2);
  inject_gauss_fault(F, 3);
  EXPECT_FALSE(verify_dh(Char(F, 3), *T).pass);
  clear_gauss_cache();
  EXPECT_TRUE(verify_dh(Char(F, 3), *T).pass);
}
