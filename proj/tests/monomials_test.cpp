#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "nabla/monomials.hpp"
#include "test_support.hpp"

namespace nabla {
namespace {

using testing::close;
using testing::product_monomial;

const std::vector<double> kSignOrders{-0.9, -0.5, -0.1, 0.0, 0.3, 0.5, 1.0, 1.7};
const std::vector<double> kIdentityOrders{-0.9, -0.5, 0.0, 0.3, 1.0, 1.7, 2.5};

TEST(Rising, Examples) {
  EXPECT_NEAR(rising(3, 2), 12.0, 1e-12);
  EXPECT_EQ(rising(0, 1.5), 0.0);
  EXPECT_EQ(rising(-3, 0.5), 0.0);
  EXPECT_NEAR(rising(2, 0.5), 0.75 * std::sqrt(std::numbers::pi), 1e-14);
  EXPECT_NEAR(rising(2, 0.5), 1.3293403882, 1e-10);
}

TEST(Rising, UndefinedCombinationsThrow) {
  EXPECT_THROW(rising(0.5, -1.5), DomainError);  // t + r = -1
  EXPECT_THROW(rising(-1, -1), DomainError);     // both poles
  EXPECT_THROW(rising(0, 0), DomainError);
}

TEST(Monomial, Examples) {
  for (double mu : {-0.7, 0.0, 0.5, 3.2}) EXPECT_EQ(monomial(Order(mu), 4, 4), 0.0);
  EXPECT_NEAR(monomial(Order(0.5), 2), 1.5, 1e-14);
  EXPECT_NEAR(monomial(Order(0.5), 7, 5), 1.5, 1e-14);
  for (int k = 0; k < 6; ++k) {
    EXPECT_EQ(monomial(Order(-1.0), k), 0.0);
    EXPECT_EQ(monomial(Order(-3.0), k), 0.0);
  }
  for (int k = 1; k < 10; ++k) EXPECT_NEAR(monomial(Order(0.0), k), 1.0, 1e-14);
}

TEST(Monomial, NearNegativeIntegerSnapsToZero) {
  EXPECT_EQ(monomial(Order(-2.0 + 1e-11), 5), 0.0);
  EXPECT_NE(monomial(Order(-2.0 + 1e-6), 5), 0.0);
}

TEST(Monomial, OffsetBelowBaseMinusOne) {
  EXPECT_EQ(monomial(Order(0.5), 2, 3), 0.0);  // rho-style offset, zero convention
  EXPECT_THROW(monomial(Order(0.5), 1, 3), DomainError);
}

TEST(Monomial, MatchesProductFormula) {
  for (double mu : {-1.7, -0.9, -0.5, -0.1, 0.3, 0.5, 1.0, 1.7, 2.5, 4.25}) {
    for (int k = 0; k <= 64; ++k) {
      const double expected = product_monomial(mu, k);
      EXPECT_TRUE(close(monomial(Order(mu), k), expected, 1e-11)) << mu << " " << k;
    }
  }
}

TEST(Monomial, ShortSpansMatchDirectGammaQuotient) {
  for (double mu : {-0.7, 0.25, 0.5, 1.7, 3.2}) {
    for (int k = 1; k <= kShortMonomialSpan + 4; ++k) {
      const double direct = std::tgamma(k + mu) / (std::tgamma(k) * std::tgamma(mu + 1.0));
      EXPECT_TRUE(close(monomial(Order(mu), k), direct, 1e-13)) << mu << " " << k;
    }
  }
  EXPECT_EQ(monomial(Order(0.5), 2), 1.5);
}

TEST(Monomial, LargeSpanStaysFinite) {
  const double h = monomial(Order(1.5), 4000);
  EXPECT_TRUE(std::isfinite(h));
  EXPECT_TRUE(close(h, product_monomial(1.5, 4000), 1e-9));
}

TEST(MonomialRatio, Examples) {
  for (double mu : {-0.5, 0.0, 0.7, 2.0}) {
    for (int t = 1; t <= 6; ++t) EXPECT_NEAR(monomial_ratio(Order(mu), t, 1), 1.0, 1e-14);
  }
  for (int t = 2; t <= 8; ++t) {
    for (int s = 1; s <= t; ++s) EXPECT_NEAR(monomial_ratio(Order(0.0), t, s), 1.0, 1e-14);
  }
  // Gamma(2.5) Gamma(3) / (Gamma(2) Gamma(3.5)) = 0.8
  EXPECT_NEAR(monomial_ratio(Order(0.5), 3, 2), 0.8, 1e-14);
}

TEST(MonomialRatio, PreconditionWindow) {
  EXPECT_THROW(monomial_ratio(Order(-1.0), 3, 2), DomainError);
  EXPECT_THROW(monomial_ratio(Order(0.5), 3, 0), DomainError);
  EXPECT_THROW(monomial_ratio(Order(0.5), 2, 3), DomainError);
}

TEST(MonomialRatio, AgreesWithQuotientOfMonomials) {
  for (double mu : {-0.9, -0.5, -0.1, 0.3, 0.5, 1.0, 1.7, 2.5}) {
    for (int t = 1; t <= 40; ++t) {
      for (int s = 1; s <= t; ++s) {
        const double quotient = monomial(Order(mu), t, s - 1) / monomial(Order(mu), t);
        EXPECT_TRUE(close(monomial_ratio(Order(mu), t, s), quotient, 1e-12)) << mu << t << s;
      }
    }
  }
}

TEST(MonomialRatioNabla, ClosedFormMatchesBackwardDifference) {
  for (double mu : {-0.9, -0.5, -0.1, 0.3, 0.5, 1.7}) {
    for (int s = 1; s <= 20; ++s) {
      for (int t = s + 1; t <= 24; ++t) {
        const double diff = monomial_ratio(Order(mu), t, s) - monomial_ratio(Order(mu), t - 1, s);
        EXPECT_TRUE(close(monomial_ratio_nabla(Order(mu), t, s), diff, 1e-9, 1e-14)) << mu << t << s;
      }
    }
  }
}

TEST(MonomialRatioNabla, SignExamples) {
  EXPECT_EQ(monomial_ratio_nabla_sign(Order(0.5), 5, 3), 1);
  EXPECT_EQ(monomial_ratio_nabla_sign(Order(-0.5), 5, 3), -1);
  for (double mu : {-0.5, 0.5, 1.5}) {
    for (int t = 2; t < 8; ++t) EXPECT_EQ(monomial_ratio_nabla_sign(Order(mu), t, 1), 0);
  }
  EXPECT_THROW(monomial_ratio_nabla_sign(Order(0.0), 5, 3), DomainError);
  EXPECT_THROW(monomial_ratio_nabla_sign(Order(0.5), 3, 3), DomainError);
  EXPECT_THROW(monomial_ratio_nabla_sign(Order(-1.5), 5, 3), DomainError);
}

TEST(MonomialRatioNabla, SignPatternExhaustive) {
  for (double mu : kSignOrders) {
    if (mu == 0.0) continue;
    for (int s = 2; s <= 32; ++s) {
      for (int t = s + 1; t <= 32; ++t) {
        EXPECT_EQ(monomial_ratio_nabla_sign(Order(mu), t, s), mu > 0 ? 1 : -1);
        // Strictly monotone in t for s >= a + 2.
        const double d = monomial_ratio(Order(mu), t, s) - monomial_ratio(Order(mu), t - 1, s);
        EXPECT_TRUE(mu > 0 ? d > 0 : d < 0) << mu << " " << t << " " << s;
      }
    }
  }
}

// --- identities on grids up to n = 48 -------------------------------------

TEST(Identities, RisingComposition) {
  for (double nu : kIdentityOrders) {
    for (double mu : kIdentityOrders) {
      for (double t : {0.25, 1.0, 1.5, 3.0, 7.75, 20.0, 48.0}) {
        if (t + nu <= 0.0 || is_nonpositive_integer(t + nu + mu)) continue;
        const double lhs = rising(t, nu) * rising(t + nu, mu);
        EXPECT_TRUE(close(lhs, rising(t, nu + mu), 1e-10)) << t << " " << nu << " " << mu;
      }
    }
  }
}

TEST(Identities, BackwardDifferenceLowersOrder) {
  for (double mu : kIdentityOrders) {
    // At t = a + 1 with mu = 0 the right side is H_{-1} = 0 by convention while
    // the left side is 1; the identity starts at a + 2 there.
    const int first = mu == 0.0 ? 2 : 1;
    for (int t = first; t <= 48; ++t) {
      const double lhs = monomial(Order(mu), t) - monomial(Order(mu), t - 1);
      EXPECT_TRUE(close(lhs, monomial(Order(mu - 1.0), t), 1e-10)) << mu << " " << t;
    }
  }
  EXPECT_EQ(monomial(Order(0.0), 1) - monomial(Order(0.0), 0), 1.0);
  EXPECT_EQ(monomial(Order(-1.0), 1), 0.0);
}

TEST(Identities, TelescopingSums) {
  for (double mu : kIdentityOrders) {
    for (int t = 1; t <= 48; ++t) {
      double along_t = 0.0;
      double along_rho = 0.0;
      for (int s = 1; s <= t; ++s) {
        along_t += monomial(Order(mu), s);
        along_rho += monomial(Order(mu), t, s - 1);
      }
      const double expected = monomial(Order(mu + 1.0), t);
      EXPECT_TRUE(close(along_t, expected, 1e-10)) << mu << " " << t;
      EXPECT_TRUE(close(along_rho, expected, 1e-10)) << mu << " " << t;
    }
  }
}

TEST(Identities, ShiftedBase) {
  for (double mu : kIdentityOrders) {
    if (mu <= 0.0) continue;
    for (int t = 1; t <= 48; ++t) {
      const double lhs = monomial(Order(mu), t) - monomial(Order(mu - 1.0), t);
      EXPECT_TRUE(close(lhs, monomial(Order(mu), t, 1), 1e-10, 1e-12)) << mu << " " << t;
    }
  }
}

// --- sign and monotonicity of H_mu(t, rho(s)) -----------------------------

double shifted(double mu, int t, int s) { return monomial(Order(mu), t, s - 1); }

TEST(ShiftedMonomial, SignAndMonotonicity) {
  constexpr int n = 32;
  for (double mu : kSignOrders) {
    for (int s = 1; s <= n; ++s) {
      const int rho = s - 1;
      for (int t = rho; t <= n; ++t) {
        const double h = shifted(mu, t, s);
        EXPECT_GE(h, 0.0);
        if (t >= s) {
          EXPECT_GT(h, 0.0);
        }
        if (t == rho) continue;
        const double prev = shifted(mu, t - 1, s);
        if (mu >= 0.0) {
          EXPECT_GE(h, prev);
        }
        if (mu > 0.0 && t >= s + 1) {
          EXPECT_GT(h, prev);
        }
        if (mu < 0.0 && t >= s + 1) {
          EXPECT_LT(h, prev);
        }
      }
    }
    // Monotonicity in s for fixed t; s = a and s = a + 1 share rho(s) = a.
    for (int t = 1; t <= n; ++t) {
      for (int s = 2; s <= t + 1; ++s) {
        if (mu > 0.0) {
          EXPECT_LT(shifted(mu, t, s), shifted(mu, t, s - 1));
        } else if (mu < 0.0 && s <= t) {
          EXPECT_GT(shifted(mu, t, s), shifted(mu, t, s - 1));
        }
      }
    }
  }
}

TEST(ShiftedMonomial, OrderMonotonicity) {
  const std::vector<double> orders{0.3, 0.5, 1.0, 1.7, 2.5};
  for (double lo : orders) {
    for (double hi : orders) {
      if (lo > hi) continue;
      for (int t = 0; t <= 48; ++t) {
        EXPECT_LE(monomial(Order(lo), t), monomial(Order(hi), t) * (1 + 1e-14)) << lo << hi << t;
      }
    }
  }
}

TEST(MonomialRatio, Bounds) {
  for (double mu : kSignOrders) {
    for (int t = 1; t <= 32; ++t) {
      for (int s = 1; s <= t; ++s) {
        const double h = monomial_ratio(Order(mu), t, s);
        EXPECT_GT(h, 0.0);
        if (mu >= 0.0) {
          EXPECT_LE(h, 1.0 + 1e-15);
        } else if (s >= 2) {
          // h = 1 identically at s = a + 1, so strictness needs s >= a + 2.
          EXPECT_GT(h, 1.0);
        }
      }
    }
  }
}

}  // namespace
}  // namespace nabla
