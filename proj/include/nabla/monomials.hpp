#pragma once

#include <cmath>
#include <string>

#include "nabla/error.hpp"
#include "nabla/gamma.hpp"

namespace nabla {

/// Order of a monomial or fractional operator.
///
/// Values within kPoleTolerance of a negative integer are snapped onto it, so
/// the zero convention for H_{-1}, H_{-2}, ... applies exactly.
class Order {
 public:
  constexpr Order() = default;
  explicit Order(double mu) : mu_(mu) {
    if (!std::isfinite(mu)) throw DomainError("Order: must be finite");
    const double r = std::round(mu);
    if (r <= -1.0 && std::fabs(mu - r) < kPoleTolerance) mu_ = r;
  }

  [[nodiscard]] constexpr double value() const { return mu_; }
  [[nodiscard]] bool is_negative_integer() const {
    return mu_ <= -1.0 && mu_ == std::round(mu_);
  }

 private:
  double mu_ = 0.0;
};

/// Generalized rising function t^(r) = Gamma(t + r) / Gamma(t).
///
/// When t is a nonpositive integer and t + r is not, the value is 0. Both
/// on poles, or only t + r on a pole, is undefined.
inline double rising(double t, double r) {
  const bool base_pole = is_nonpositive_integer(t);
  const bool top_pole = is_nonpositive_integer(t + r);
  if (top_pole) {
    throw DomainError("rising: Gamma(t + r) has a pole (t = " + std::to_string(t) +
                      ", r = " + std::to_string(r) + ")");
  }
  if (base_pole) return 0.0;
  return gamma_ratio_offset(t, r).value();
}

/// Offsets up to this use the finite product, exact to a few ulps.
inline constexpr int kShortMonomialSpan = 16;

/// H_mu(a + k, a) in sign/log form. Requires k >= -1.
inline SignedLog monomial_log(Order mu, int k) {
  if (k < -1) throw DomainError("monomial: offset difference must be >= -1");
  if (k == 0 || mu.is_negative_integer()) return SignedLog::zero();
  const double m = mu.value();
  if (k == -1) {
    if (is_nonpositive_integer(k + m)) {
      throw DomainError("monomial: undefined at offset difference -1 for mu = " +
                        std::to_string(m));
    }
    return SignedLog::zero();
  }
  if (k <= kShortMonomialSpan) {
    // Gamma(k + mu) / (Gamma(k) Gamma(mu + 1)) = prod_{j=1}^{k-1} (1 + mu / j).
    double p = 1.0;
    for (int j = 1; j < k; ++j) p *= 1.0 + m / j;
    return SignedLog::from(p);
  }
  return gamma_ratio_offset(k, m) / log_gamma(m + 1.0);
}

/// Nabla fractional Taylor monomial H_mu(a + t_offset, a + base_offset).
inline double monomial(Order mu, int t_offset, int base_offset = 0) {
  return monomial_log(mu, t_offset - base_offset).value();
}

/// h_mu(t, s) = H_mu(t, rho(s)) / H_mu(t, a) from its four-gamma closed form.
///
/// Requires mu > -1, s_offset >= 1 and t_offset >= s_offset.
inline double monomial_ratio(Order mu, int t_offset, int s_offset) {
  const double m = mu.value();
  if (!(m > -1.0)) throw DomainError("monomial_ratio: requires mu > -1");
  if (s_offset < 1 || t_offset < s_offset) {
    throw DomainError("monomial_ratio: requires 1 <= s_offset <= t_offset");
  }
  const int ts = t_offset - s_offset;
  return (gamma_ratio_offset(ts + 1.0, m) / gamma_ratio_offset(t_offset, m)).value();
}

/// Backward difference in t of h_mu(t, s), closed form
///   mu (s - a - 1) Gamma(t - s + mu) Gamma(t - a - 1) / (Gamma(t - s + 1) Gamma(t - a + mu)).
///
/// Requires mu > -1, s_offset >= 1 and t_offset >= s_offset + 1.
inline double monomial_ratio_nabla(Order mu, int t_offset, int s_offset) {
  const double m = mu.value();
  if (!(m > -1.0)) throw DomainError("monomial_ratio_nabla: requires mu > -1");
  if (s_offset < 1 || t_offset < s_offset + 1) {
    throw DomainError("monomial_ratio_nabla: requires 1 <= s_offset < t_offset");
  }
  if (s_offset == 1 || m == 0.0) return 0.0;
  const int ts = t_offset - s_offset;
  const SignedLog g =
      gamma_ratio_offset(ts + 1.0, m - 1.0) / gamma_ratio_offset(t_offset - 1.0, m + 1.0);
  return (SignedLog::from(m * (s_offset - 1)) * g).value();
}

/// Sign of the backward difference of h_mu in t: +1, -1, or 0 when s = a + 1.
///
/// Taken from the closed form's factors rather than from a rounded value.
inline int monomial_ratio_nabla_sign(Order mu, int t_offset, int s_offset) {
  const double m = mu.value();
  if (m == 0.0) throw DomainError("monomial_ratio_nabla_sign: requires mu != 0");
  if (!(m > -1.0)) throw DomainError("monomial_ratio_nabla_sign: requires mu > -1");
  if (s_offset < 1 || t_offset < s_offset + 1) {
    throw DomainError("monomial_ratio_nabla_sign: requires 1 <= s_offset < t_offset");
  }
  if (s_offset == 1) return 0;
  const int ts = t_offset - s_offset;
  const SignedLog g =
      gamma_ratio_offset(ts + 1.0, m - 1.0) / gamma_ratio_offset(t_offset - 1.0, m + 1.0);
  return (m > 0.0 ? 1 : -1) * g.sign;
}

}  // namespace nabla
