#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "nabla/gamma.hpp"

namespace nabla {
namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

TEST(GammaRatio, IntegerFactorials) { EXPECT_NEAR(gamma_ratio(5, 3).value(), 12.0, 1e-12); }

TEST(GammaRatio, IdentityCase) { EXPECT_DOUBLE_EQ(gamma_ratio(2.5, 2.5).value(), 1.0); }

TEST(GammaRatio, HalfInteger) {
  EXPECT_NEAR(gamma_ratio(1.5, 1).value(), kSqrtPi / 2, 1e-14);
  EXPECT_NEAR(gamma_ratio(1.5, 1).value(), 0.8862269255, 1e-10);
}

TEST(GammaRatio, DenominatorPoleGivesExactZero) {
  EXPECT_TRUE(gamma_ratio(1.5, 0.0).is_zero());
  EXPECT_TRUE(gamma_ratio(-0.5, -3.0).is_zero());
}

TEST(GammaRatio, NumeratorPoleThrows) {
  EXPECT_THROW(gamma_ratio(-2.0, 1.5), PoleError);
  EXPECT_THROW(gamma_ratio(0.0, 0.0), PoleError);
}

TEST(LogGamma, ReflectionKeepsSign) {
  // Gamma(-0.5) = -2 sqrt(pi), Gamma(-1.5) = 4 sqrt(pi) / 3.
  EXPECT_NEAR(log_gamma(-0.5).value(), -2 * kSqrtPi, 1e-13);
  EXPECT_NEAR(log_gamma(-1.5).value(), 4 * kSqrtPi / 3, 1e-13);
  EXPECT_EQ(log_gamma(-2.5).sign, -1);
  EXPECT_EQ(log_gamma(-0.1).sign, -1);
  EXPECT_EQ(log_gamma(0.1).sign, 1);
}

TEST(LogGamma, MatchesTgammaOnNegativeNonIntegers) {
  for (double x = -7.95; x < 0.0; x += 0.1) {
    if (is_nonpositive_integer(x)) continue;
    const double expected = std::tgamma(x);
    EXPECT_NEAR(log_gamma(x).value(), expected, 1e-12 * std::fabs(expected)) << x;
  }
}

TEST(LogGamma, LargeArgumentsStayFinite) {
  // Gamma(5000.5) / Gamma(5000) ~ sqrt(5000) without overflow.
  EXPECT_NEAR(gamma_ratio(5000.5, 5000.0).value(), std::sqrt(5000.0), 1e-2);
}

TEST(SignedLog, ProductAndQuotientComposeSigns) {
  const SignedLog a = SignedLog::from(-3.0);
  const SignedLog b = SignedLog::from(0.5);
  EXPECT_NEAR((a * b).value(), -1.5, 1e-15);
  EXPECT_NEAR((a / b).value(), -6.0, 1e-14);
  EXPECT_TRUE((a * SignedLog::zero()).is_zero());
  EXPECT_THROW(a / SignedLog::zero(), DomainError);
}

TEST(PoleDetection, ToleranceWindow) {
  EXPECT_TRUE(is_nonpositive_integer(-3.0 + 1e-11));
  EXPECT_TRUE(is_nonpositive_integer(0.0));
  EXPECT_FALSE(is_nonpositive_integer(1.0));
  EXPECT_FALSE(is_nonpositive_integer(-3.0 + 1e-6));
}

TEST(GammaRatioOffset, AccurateForLargeArguments) {
  for (double d : {-0.9, -0.3, 0.5, 1.7}) {
    for (int k : {1, 7, 15, 16, 100, 4000}) {
      // Gamma(k + d) / Gamma(k) = Gamma(1 + d) prod_{j=1}^{k-1} (1 + d / j), in long double.
      long double p = std::tgamma(1.0L + d);
      for (int j = 1; j < k; ++j) p *= 1.0L + static_cast<long double>(d) / j;
      const double got = gamma_ratio_offset(k, d).value();
      EXPECT_NEAR(got / static_cast<double>(p), 1.0, 2e-14) << d << " " << k;
    }
  }
}

TEST(GammaRatioOffset, FallsBackOnNegativeArguments) {
  EXPECT_NEAR(gamma_ratio_offset(0.5, -1.0).value(), -2.0, 1e-14);  // Gamma(-0.5) / Gamma(0.5)
  EXPECT_EQ(gamma_ratio_offset(-2.0, 0.5).value(), 0.0);
  EXPECT_THROW(gamma_ratio_offset(0.5, -2.5), PoleError);
}

}  // namespace
}  // namespace nabla
