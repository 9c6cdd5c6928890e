#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/gamma.hpp"
#include "nabla/green.hpp"
#include "nabla/grid.hpp"
#include "nabla/linalg.hpp"
#include "nabla/solver.hpp"

namespace nabla {

/// 1 / Omega: any potential admitting a nontrivial solution has larger l1 norm.
inline double lyapunov_threshold(const Problem& p) {
  const double w = omega(p);
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw HypothesisViolation("Omega must be positive and finite, got " + std::to_string(w));
  }
  return 1.0 / w;
}

inline constexpr double kSingularDeterminant = 1e-10;

namespace detail {

inline void require_potential_domain(const Problem& p, const GridFunction& q) {
  if (!(q.grid() == p.grid) || q.start() > 1) {
    throw DomainError("potential must live on offsets 1..n of the problem grid");
  }
}

// Sum over rows of log |row|_2; the log of the Hadamard bound on |det|.
inline double log_row_norm_product(const Matrix& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double sq = 0.0;
    for (double x : m.row(i)) sq += x * x;
    acc += 0.5 * std::log(sq);
  }
  return acc;
}

// det(M_q) / det(M_0) as sign and log-magnitude, each determinant first
// divided by its Hadamard bound so that large potentials do not inflate it.
inline SignedLog determinant_ratio(const Matrix& base, const SignedLog& base_det,
                                   const GridFunction& q, double scale) {
  Matrix m = base;
  add_potential(m, scale == 1.0 ? q : scale * q);
  const double log_norms = log_row_norm_product(m) - log_row_norm_product(base);
  SignedLog r = LuDecomposition(std::move(m)).log_determinant() / base_det;
  r.log_abs -= log_norms;
  return r;
}

}  // namespace detail

struct LyapunovVerdict {
  double l1_norm = 0.0;                  // sum_{s=a+1}^{b} |q(s)|
  double threshold = 0.0;                // 1 / Omega
  double relative_determinant = 0.0;     // see relative_determinant()
  bool nontrivial_solution_exists = false;
  bool inequality_holds = false;         // l1_norm > threshold

  /// A nontrivial solution without the inequality would contradict the bound.
  [[nodiscard]] bool consistent() const { return !nontrivial_solution_exists || inequality_holds; }
};

/// (|det(M_q)| / H(M_q)) / (|det(M_0)| / H(M_0)), with H the product of row
/// 2-norms. Equals 1 for q = 0 (det(M_0) = +-xi) and is invariant under
/// rescaling any row of M_q.
inline double relative_determinant(const Problem& p, const GridFunction& q) {
  detail::require_potential_domain(p, q);
  checked_xi(p);
  const Matrix base = assemble_operator(p);
  const SignedLog base_det = LuDecomposition(base).log_determinant();
  return std::fabs(detail::determinant_ratio(base, base_det, q, 1.0).value());
}

inline LyapunovVerdict evaluate_potential(const Problem& p, const GridFunction& q) {
  require_theorem_hypotheses(p);
  LyapunovVerdict v;
  for (int s = 1; s <= p.n(); ++s) v.l1_norm += std::fabs(q.at(s));
  v.threshold = lyapunov_threshold(p);
  v.relative_determinant = relative_determinant(p, q);
  v.nontrivial_solution_exists = v.relative_determinant <= kSingularDeterminant;
  v.inequality_holds = v.l1_norm > v.threshold;
  return v;
}

/// Default search bracket [0, 10 n^nu] for constant potentials.
inline std::pair<double, double> default_bracket(const Problem& p) {
  return {0.0, 10.0 * std::pow(static_cast<double>(p.n()), p.nu.value())};
}

/// Finds c in [lo, hi] such that q = c * pattern makes the perturbed problem
/// singular, picking the root of smallest |c|.
///
/// The bracket is sampled on a uniform grid merged with geometric grids
/// toward zero; the sign change closest to zero is then bisected down to
/// machine resolution.
inline double find_scaled_eigenpotential(const Problem& p, const GridFunction& pattern, double lo,
                                         double hi) {
  detail::require_potential_domain(p, pattern);
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("eigenpotential search: bracket must satisfy lo < hi");
  }
  checked_xi(p);
  const Matrix base = assemble_operator(p);
  const SignedLog base_det = LuDecomposition(base).log_determinant();
  auto det = [&](double c) { return detail::determinant_ratio(base, base_det, pattern, c); };

  constexpr int kUniform = 256;
  constexpr int kGeometric = 256;
  constexpr double kGeometricSpan = 1e-9;
  std::vector<double> xs;
  xs.reserve(kUniform + 2 * kGeometric + 2);
  for (int i = 0; i <= kUniform; ++i) xs.push_back(lo + (hi - lo) * i / kUniform);
  auto add_geometric = [&](double far, double sign) {
    const double ratio = std::pow(kGeometricSpan, 1.0 / kGeometric);
    double x = far;
    for (int j = 0; j <= kGeometric; ++j, x *= ratio) {
      const double y = sign * x;
      if (y > lo && y < hi) xs.push_back(y);
    }
  };
  if (hi > 0.0) add_geometric(hi, 1.0);
  if (lo < 0.0) add_geometric(-lo, -1.0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<SignedLog> ds;
  ds.reserve(xs.size());
  for (double x : xs) ds.push_back(det(x));

  std::optional<std::size_t> best;
  auto distance = [&](std::size_t i) { return std::min(std::fabs(xs[i]), std::fabs(xs[i + 1])); };
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (ds[i].sign * ds[i + 1].sign <= 0 && (!best || distance(i) < distance(*best))) best = i;
  }
  if (!best) {
    throw NoSignChange("determinant keeps one sign on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }

  double l = xs[*best];
  double r = xs[*best + 1];
  SignedLog dl = ds[*best];
  SignedLog dr = ds[*best + 1];
  if (dl.is_zero()) return l;
  if (dr.is_zero()) return r;
  for (;;) {
    const double m = 0.5 * (l + r);
    if (!(m > l && m < r)) break;
    const SignedLog dm = det(m);
    if (dm.is_zero()) return m;
    if (dm.sign == dl.sign) {
      l = m;
      dl = dm;
    } else {
      r = m;
      dr = dm;
    }
  }
  return dl.log_abs <= dr.log_abs ? l : r;
}

/// Constant potential q = lambda on offsets 1..n making the problem singular.
inline double find_constant_eigenpotential(const Problem& p, double lo, double hi) {
  return find_scaled_eigenpotential(p, GridFunction::constant(p.grid, 1, 1.0), lo, hi);
}

inline double find_constant_eigenpotential(const Problem& p) {
  const auto [lo, hi] = default_bracket(p);
  return find_constant_eigenpotential(p, lo, hi);
}

}  // namespace nabla
