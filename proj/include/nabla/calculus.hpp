#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/grid.hpp"
#include "nabla/monomials.hpp"

namespace nabla {

/// (nabla u)(t) = u(t) - u(t - 1); the domain loses its first offset.
inline GridFunction nabla(const GridFunction& u) {
  if (u.size() < 2) throw DomainError("nabla: needs at least two points");
  return GridFunction::tabulate(u.grid(), u.start() + 1,
                                [&u](int k) { return u.at(k) - u.at(k - 1); });
}

inline GridFunction nabla_n(const GridFunction& u, int order) {
  if (order < 1) throw DomainError("nabla_n: order must be >= 1");
  if (static_cast<int>(u.size()) < order + 1) {
    throw DomainError("nabla_n: needs at least " + std::to_string(order + 1) + " points");
  }
  GridFunction out = nabla(u);
  for (int i = 1; i < order; ++i) out = nabla(out);
  return out;
}

namespace detail {

inline bool is_integer(double x) { return x == std::round(x); }

// Convolution kernel of the order-nu sum: K[k] = H_{nu-1}(t, rho(s)) at t - s + 1 = k.
// Order zero is the identity, i.e. K = delta at k = 1 (the limit of H_{nu-1}).
inline std::vector<double> sum_kernel(double nu, int n) {
  std::vector<double> k(static_cast<std::size_t>(n + 1), 0.0);
  if (nu == 0.0) {
    if (n >= 1) k[1] = 1.0;
    return k;
  }
  const Order m(nu - 1.0);
  for (int j = 1; j <= n; ++j) k[j] = monomial(m, j);
  return k;
}

// Values of u on offsets 1..n, index k-1.
inline std::vector<double> values_from_one(const GridFunction& u) {
  if (u.start() > 1) throw DomainError("fractional operator: input must be defined from offset 1");
  const auto v = u.values();
  return {v.begin() + (1 - u.start()), v.end()};
}

}  // namespace detail

/// Fractional nabla sum based at a:
///   (nabla_a^{-nu} u)(t) = sum_{s=a+1}^{t} H_{nu-1}(t, rho(s)) u(s),
/// on offsets 0..n with the value 0 at offset 0. Order 0 returns u on 1..n.
inline GridFunction frac_sum(const GridFunction& u, double nu) {
  if (!(nu >= 0.0)) throw DomainError("frac_sum: order must be >= 0");
  const std::vector<double> x = detail::values_from_one(u);
  if (nu == 0.0) return GridFunction(u.grid(), 1, x);
  const int n = u.grid().n;
  const std::vector<double> kern = detail::sum_kernel(nu, n);
  std::vector<double> out(static_cast<std::size_t>(n + 1), 0.0);
  for (int t = 1; t <= n; ++t) {
    double acc = 0.0;
    for (int s = 1; s <= t; ++s) acc += kern[t - s + 1] * x[s - 1];
    out[t] = acc;
  }
  return GridFunction(u.grid(), 0, std::move(out));
}

/// Fractional nabla difference based at a, by composition:
///   (nabla_a^nu u)(t) = nabla^N (nabla_a^{-(N - nu)} u)(t),  N - 1 < nu <= N,
/// on offsets N..n. For integer nu the sum of order 0 is extended by 0 at offset 0.
inline GridFunction frac_diff(const GridFunction& u, double nu) {
  if (!(nu > 0.0)) throw DomainError("frac_diff: order must be > 0");
  const int order = static_cast<int>(std::ceil(nu));
  const int n = u.grid().n;
  if (n < order) {
    throw DomainError("frac_diff: grid span " + std::to_string(n) + " shorter than N = " +
                      std::to_string(order));
  }
  if (detail::is_integer(nu)) {
    std::vector<double> x = detail::values_from_one(u);
    x.insert(x.begin(), 0.0);
    return nabla_n(GridFunction(u.grid(), 0, std::move(x)), order);
  }
  return nabla_n(frac_sum(u, order - nu), order);
}

/// Linear weights of the order-nu difference at one grid point:
/// (nabla_a^nu u)(a + t) = sum_{k=1}^{t} coefficients[k-1] u(a + k).
struct OperatorWeights {
  int t_offset = 0;
  std::vector<double> coefficients;

  [[nodiscard]] double apply(const GridFunction& u) const {
    double acc = 0.0;
    for (int k = 1; k <= t_offset; ++k) acc += coefficients[static_cast<std::size_t>(k - 1)] * u.at(k);
    return acc;
  }
  [[nodiscard]] double total() const {
    double acc = 0.0;
    for (double c : coefficients) acc += c;
    return acc;
  }
};

/// Weights of nabla_a^nu at a + t_offset for 1 < nu <= 2, from expanding the
/// second difference of the order (2 - nu) sum.
inline OperatorWeights frac_diff_weights(double nu, int t_offset) {
  if (!(nu > 1.0 && nu <= 2.0)) throw DomainError("frac_diff_weights: requires 1 < nu <= 2");
  if (t_offset < 2) throw DomainError("frac_diff_weights: requires t_offset >= 2");
  const int t = t_offset;
  const std::vector<double> kern = detail::sum_kernel(2.0 - nu, t);
  OperatorWeights w{t, std::vector<double>(static_cast<std::size_t>(t), 0.0)};
  for (int s = 1; s <= t; ++s) {
    double c = kern[t - s + 1];
    if (s <= t - 1) c -= 2.0 * kern[t - s];
    if (s <= t - 2) c += kern[t - s - 1];
    w.coefficients[static_cast<std::size_t>(s - 1)] = c;
  }
  return w;
}

}  // namespace nabla
