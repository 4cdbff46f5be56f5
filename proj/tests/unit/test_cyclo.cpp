#include <gtest/gtest.h>

#include <cmath>

#include "hgfq/cyclo.hpp"
#include "hgfq/error.hpp"

using namespace hgfq;

TEST(Cyclo, SumOfRootsVanishes) {
  for (u64 n : {1u, 2u, 3u, 4u, 6u, 9u, 12u, 30u, 36u}) {
    Cyclo s;
    for (u64 k = 0; k < n; ++k) s += Cyclo::root(n, static_cast<i64>(k));
    if (n == 1)
      EXPECT_EQ(s, Cyclo(1L));
    else
      EXPECT_TRUE(s.is_zero()) << n;
  }
}

TEST(Cyclo, RootPowers) {
  Cyclo z = Cyclo::root(12, 1);
  EXPECT_EQ(z.pow(12), Cyclo(1L));
  EXPECT_EQ(z.pow(6), Cyclo(-1L));
  EXPECT_EQ(z.pow(4) + z.pow(8), Cyclo(-1L));
}

TEST(Cyclo, MixedOrders) {
  Cyclo i = Cyclo::root(4, 1);
  Cyclo w = Cyclo::root(3, 1);
  Cyclo x = i * w;
  EXPECT_EQ(x.order(), 12u);
  EXPECT_EQ(x, Cyclo::root(12, 7));
  EXPECT_EQ(Cyclo::root(6, 2), w);
}

TEST(Cyclo, SqrtMinusThree) {
  Cyclo w = Cyclo::root(3, 1);
  Cyclo s = w - w.conj();
  EXPECT_EQ(s * s, Cyclo(-3L));
}

TEST(Cyclo, RestrictAndMinimal) {
  Cyclo a = Cyclo::root(3, 1).raise_order(21);
  auto r = a.restrict_order(3);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, Cyclo::root(3, 1));
  EXPECT_FALSE(Cyclo::root(7, 1).raise_order(21).restrict_order(3).has_value());
  EXPECT_EQ((Cyclo::root(5, 1) * Cyclo::root(5, 4)).minimal().order(), 1u);
}

TEST(Cyclo, GaloisAndConj) {
  Cyclo z = Cyclo::root(9, 2) + Cyclo(3L);
  EXPECT_EQ(z.galois(2), Cyclo::root(9, 4) + Cyclo(3L));
  EXPECT_EQ(z.conj().conj(), z);
  auto n = (z * z.conj()).as_rational();
  EXPECT_FALSE(n.has_value());
}

TEST(Cyclo, RationalArithmetic) {
  Cyclo a = Cyclo(mpq_class(1, 3)) * Cyclo::root(5, 2);
  Cyclo b = a * mpq_class(3);
  EXPECT_EQ(b, Cyclo::root(5, 2));
  EXPECT_EQ((a / mpq_class(1, 3)), Cyclo::root(5, 2));
  EXPECT_EQ(a.inverse() * a, Cyclo(1L));
}

TEST(Cyclo, Approximation) {
  Cyclo z = Cyclo::root(8, 1);
  auto ap = z.approx(128);
  EXPECT_NEAR(ap.re.to_double(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(ap.im.to_double(), std::sqrt(0.5), 1e-15);
  EXPECT_LT(ap.err, 1e-30);
}

TEST(Cyclo, BigCoefficients) {
  mpz_class big = 1;
  big <<= 200;
  Cyclo a = Cyclo(big) * Cyclo::root(7, 1) + Cyclo(1L);
  Cyclo b = a * a;
  EXPECT_EQ(b - Cyclo(mpz_class(big * big)) * Cyclo::root(7, 2) - Cyclo(mpz_class(2 * big)) * Cyclo::root(7, 1), Cyclo(1L));
}
