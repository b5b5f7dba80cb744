#include <limits>

#include "qtst/numerics.hpp"
#include "support.hpp"

using namespace qtst;
using qtst::test::rel_near;

TEST(Numerics, BisectFindsRoot) {
  auto [a, b] = numerics::bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14);
  EXPECT_NEAR(0.5 * (a + b), std::numbers::sqrt2, 1e-14);
  EXPECT_LE(b - a, 1e-14);
}

TEST(Numerics, BisectNeedsSignChange) {
  EXPECT_THROW(numerics::bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), convergence_error);
}

TEST(Numerics, IntegrateHalfLine) {
  // int_0^inf dx / (1 + x^2) = pi / 2
  const double v = numerics::integrate_half_line([](double x) { return 1.0 / (1.0 + x * x); }, {1.0, 10.0});
  EXPECT_TRUE(rel_near(v, std::numbers::pi / 2.0, 1e-12));
}

TEST(Numerics, ErfcxAgainstDirectProduct) {
  for (double y : {0.0, 0.1, 1.0, 2.5, 4.9, -0.5, -2.0}) {
    EXPECT_TRUE(rel_near(numerics::erfcx(y), std::exp(y * y) * std::erfc(y), 1e-13)) << y;
  }
}

TEST(Numerics, ErfcxLargeArgument) {
  // Asymptotic series 1/(sqrt(pi) y) (1 - 1/(2y^2) + 3/(4y^4) - 15/(8y^6) + 105/(16y^8)).
  for (double y : {50.0, 1e3, 1e6}) {
    const double y2 = y * y;
    const double series = 1.0 / (std::sqrt(std::numbers::pi) * y) *
                          (1.0 - 0.5 / y2 + 0.75 / (y2 * y2) - 1.875 / (y2 * y2 * y2) + 6.5625 / (y2 * y2 * y2 * y2));
    EXPECT_TRUE(rel_near(numerics::erfcx(y), series, 1e-13)) << y;
  }
  // Continuity across the branch switch at 5.
  EXPECT_TRUE(rel_near(numerics::erfcx(5.0), numerics::erfcx(std::nextafter(5.0, 0.0)), 1e-13));
  EXPECT_EQ(numerics::erfcx(std::numeric_limits<double>::infinity()), 0.0);
}

TEST(Numerics, Tails) {
  double sq = 0.0, cube = 0.0;
  for (long n = 1000000; n > 10; --n) {
    sq += 1.0 / (double(n) * n);
    cube += 1.0 / (double(n) * n * n);
  }
  // The truncated sums miss about 1/1e6 and 1/(2e12) beyond n = 1e6.
  EXPECT_TRUE(rel_near(numerics::tail_inverse_square(10), sq + 1e-6, 1e-9));
  EXPECT_TRUE(rel_near(numerics::tail_inverse_cube(10), cube + 0.5e-12, 1e-9));
}

TEST(Numerics, SinhRatio) {
  EXPECT_TRUE(rel_near(numerics::sinh_ratio(1.0, 0.5), std::sinh(1.0) / std::sinh(0.5), 1e-15));
  // exp(a - b) for large arguments where sinh itself overflows.
  EXPECT_TRUE(rel_near(numerics::sinh_ratio(1000.0, 999.0), std::exp(1.0), 1e-14));
}
