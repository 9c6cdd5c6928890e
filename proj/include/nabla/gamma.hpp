#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nabla/error.hpp"

namespace nabla {

/// A real number stored as sign and natural log of its magnitude.
///
/// sign == 0 encodes an exact zero; log_abs is then ignored.
struct SignedLog {
  int sign = 0;
  double log_abs = 0.0;

  static constexpr SignedLog zero() { return {}; }
  static SignedLog from(double x) {
    if (x == 0.0) return {};
    return {x > 0.0 ? 1 : -1, std::log(std::fabs(x))};
  }

  [[nodiscard]] bool is_zero() const { return sign == 0; }
  [[nodiscard]] double value() const {
    return sign == 0 ? 0.0 : sign * std::exp(log_abs);
  }

  friend SignedLog operator*(SignedLog lhs, SignedLog rhs) {
    if (lhs.sign == 0 || rhs.sign == 0) return {};
    return {lhs.sign * rhs.sign, lhs.log_abs + rhs.log_abs};
  }
  friend SignedLog operator/(SignedLog lhs, SignedLog rhs) {
    if (rhs.sign == 0) throw DomainError("SignedLog: division by zero");
    if (lhs.sign == 0) return {};
    return {lhs.sign * rhs.sign, lhs.log_abs - rhs.log_abs};
  }
};

/// Integers within this distance of a nonpositive integer are treated as poles.
inline constexpr double kPoleTolerance = 1e-9;

inline bool is_nonpositive_integer(double x) {
  const double r = std::round(x);
  return r <= 0.0 && std::fabs(x - r) < kPoleTolerance;
}

namespace detail {

// sin(pi x) with the argument reduced exactly to [-1, 1) first.
inline double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r >= 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  return std::sin(std::numbers::pi * r);
}

// log Gamma(z) - (z - 1/2) log z + z - log(2 pi) / 2 for z >= 15 (Stirling tail).
inline double stirling_tail(double z) {
  const double r = 1.0 / z;
  const double r2 = r * r;
  return r * (1.0 / 12 - r2 * (1.0 / 360 - r2 * (1.0 / 1260 - r2 * (1.0 / 1680 - r2 / 1188))));
}

// log(Gamma(y + d) / Gamma(y)) for y > 0, y + d > 0, without differencing two
// large lgamma values and without rounding y + d where it matters. Both
// arguments are shifted to >= 15, then Stirling's series is differenced term
// by term.
inline double log_gamma_ratio_positive(double y, double d) {
  constexpr double kShift = 15.0;
  double log_prod = 0.0;
  const double lo = std::min(y, y + d);
  if (lo < kShift) {
    const int m = static_cast<int>(std::ceil(kShift - lo));
    double prod = 1.0;
    for (int i = 0; i < m; ++i) prod *= (y + i) / ((y + i) + d);
    log_prod = std::log(prod);
    y += m;
  }
  const double x = y + d;
  return (y - 0.5) * std::log1p(d / y) + d * std::log(x) - d + stirling_tail(x) -
         stirling_tail(y) + log_prod;
}

}  // namespace detail

/// Gamma(x) as sign and log-magnitude.
///
/// Positive arguments go straight to lgamma. Negative non-integers use the
/// reflection Gamma(x) = pi / (sin(pi x) Gamma(1 - x)), which carries the sign.
inline SignedLog log_gamma(double x) {
  if (is_nonpositive_integer(x)) {
    throw PoleError("Gamma has a pole at " + std::to_string(x));
  }
  if (x > 0.0) return {1, std::lgamma(x)};
  const double s = detail::sin_pi(x);
  return {s > 0.0 ? 1 : -1,
          std::log(std::numbers::pi) - std::log(std::fabs(s)) - std::lgamma(1.0 - x)};
}

/// Gamma(x) / Gamma(y).
///
/// A pole in the denominator alone gives an exact zero. A pole in the
/// numerator alone throws PoleError. Poles in both are rejected as well: the
/// ratio depends on how the limit is taken.
inline SignedLog gamma_ratio(double x, double y) {
  const bool num_pole = is_nonpositive_integer(x);
  const bool den_pole = is_nonpositive_integer(y);
  if (num_pole && den_pole) {
    throw PoleError("gamma_ratio: both arguments are poles");
  }
  if (den_pole) return SignedLog::zero();
  if (num_pole) {
    throw PoleError("gamma_ratio: numerator pole at " + std::to_string(x));
  }
  if (x > 0.0 && y > 0.0) return {1, detail::log_gamma_ratio_positive(y, x - y)};
  return log_gamma(x) / log_gamma(y);
}

/// Gamma(y + d) / Gamma(y), with d kept apart from y so that a large y does
/// not absorb its low bits. Same pole rules as gamma_ratio.
inline SignedLog gamma_ratio_offset(double y, double d) {
  if (y > 0.0 && y + d > 0.0) return {1, detail::log_gamma_ratio_positive(y, d)};
  return gamma_ratio(y + d, y);
}

}  // namespace nabla
