#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "nabla/calculus.hpp"
#include "nabla/error.hpp"
#include "nabla/green.hpp"
#include "nabla/grid.hpp"
#include "nabla/linalg.hpp"

namespace nabla {

/// -(nabla^nu u)(t) = h(t) on t = a+2..b with the problem's boundary conditions.
/// The forcing lives on offsets 1..n; h(a+1) does not enter the equation.
struct BvpInstance {
  Problem problem;
  GridFunction forcing;

  BvpInstance(Problem p, GridFunction h) : problem(std::move(p)), forcing(std::move(h)) {
    if (!(forcing.grid() == problem.grid)) throw DomainError("BvpInstance: forcing grid mismatch");
    if (forcing.start() > 1) throw DomainError("BvpInstance: forcing must cover offsets 1..n");
    if (forcing.start() < 1) forcing = forcing.tail(1);
  }
};

/// Square system for the unknowns u(a), ..., u(b), in that order.
/// Rows 0..n-2: the difference equation at t = a+2..b. Row n-1: left
/// boundary condition. Row n: right boundary condition.
struct DenseSystem {
  Grid grid;
  Matrix matrix;
  std::vector<double> rhs;
};

/// Operator matrix of the boundary value problem.
///
/// Interior rows apply the order-nu difference to u - u(a), so constants and
/// H_{nu-1}(., a) span the homogeneous solutions and det = (-1)^(n+1) xi.
inline Matrix assemble_operator(const Problem& p) {
  const int n = p.n();
  const double nu = p.nu.value();
  Matrix m(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
  for (int t = 2; t <= n; ++t) {
    const OperatorWeights w = frac_diff_weights(nu, t);
    const auto row = static_cast<std::size_t>(t - 2);
    for (int k = 1; k <= t; ++k) m(row, static_cast<std::size_t>(k)) = -w.coefficients[static_cast<std::size_t>(k - 1)];
    m(row, 0) = w.total();
  }
  const auto& [al, be, ga, de] = p.bc;
  const auto left = static_cast<std::size_t>(n - 1);
  const auto right = static_cast<std::size_t>(n);
  // alpha u(a+1) - beta (u(a+1) - u(a)) = 0
  m(left, 0) += be;
  m(left, 1) += al - be;
  // gamma u(b) + delta (u(b) - u(b-1)) = 0
  m(right, right) += ga + de;
  m(right, right - 1) -= de;
  return m;
}

/// Adds the potential term of (nabla^nu u)(t) + q(t) u(t) = 0 to the interior rows.
inline void add_potential(Matrix& m, const GridFunction& q) {
  const int n = q.grid().n;
  if (m.rows() != static_cast<std::size_t>(n + 1)) throw DomainError("add_potential: size mismatch");
  for (int t = 2; t <= n; ++t) m(static_cast<std::size_t>(t - 2), static_cast<std::size_t>(t)) -= q.at(t);
}

inline DenseSystem assemble_dense(const BvpInstance& inst) {
  const int n = inst.problem.n();
  DenseSystem sys{inst.problem.grid, assemble_operator(inst.problem),
                  std::vector<double>(static_cast<std::size_t>(n + 1), 0.0)};
  for (int t = 2; t <= n; ++t) sys.rhs[static_cast<std::size_t>(t - 2)] = inst.forcing.at(t);
  return sys;
}

struct DenseSolution {
  GridFunction u;
  double relative_residual = 0.0;  // |Ax - b|_inf / |b|_inf (absolute when b = 0)
};

inline DenseSolution solve_dense(const DenseSystem& sys) {
  const LuDecomposition lu(sys.matrix);
  std::vector<double> x = lu.solve(sys.rhs);
  std::vector<double> ax = sys.matrix.multiply(x);
  double r = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) r = std::max(r, std::fabs(ax[i] - sys.rhs[i]));
  const double b = sup_norm(sys.rhs);
  return {GridFunction(sys.grid, 0, std::move(x)), b > 0.0 ? r / b : r};
}

/// u(t) = sum_s G(t, s) h(s) on offsets 0..n, summing over s = a+2..b, the
/// points where the equation is imposed.
inline GridFunction solve_via_green(const GreenTable& g, const GridFunction& h) {
  const int n = g.n();
  return GridFunction::tabulate(g.grid(), 0, [&](int t) {
    double acc = 0.0;
    for (int s = 2; s <= n; ++s) acc += g(t, s) * h.at(s);
    return acc;
  });
}

inline GridFunction solve_via_green(const BvpInstance& inst) {
  return solve_via_green(GreenTable(inst.problem), inst.forcing);
}

struct ResidualReport {
  double interior = 0.0;
  double left_boundary = 0.0;
  double right_boundary = 0.0;

  [[nodiscard]] double max() const { return std::max({interior, left_boundary, right_boundary}); }
};

/// Defects of a candidate solution, evaluated with frac_diff rather than the
/// assembled matrix.
inline ResidualReport residual(const BvpInstance& inst, const GridFunction& u,
                               const GridFunction* potential = nullptr) {
  const Problem& p = inst.problem;
  const int n = p.n();
  if (u.start() != 0 || !(u.grid() == p.grid)) throw DomainError("residual: u must live on offsets 0..n");
  ResidualReport r;
  if (n >= 2) {
    const double base = u.at(0);
    const GridFunction shifted = GridFunction::tabulate(p.grid, 1, [&](int k) { return u.at(k) - base; });
    const GridFunction d = frac_diff(shifted, p.nu.value());
    for (int t = 2; t <= n; ++t) {
      double lhs = -d.at(t);
      if (potential) lhs -= potential->at(t) * u.at(t);
      r.interior = std::max(r.interior, std::fabs(lhs - inst.forcing.at(t)));
    }
  }
  const auto& [al, be, ga, de] = p.bc;
  r.left_boundary = std::fabs(al * u.at(1) - be * (u.at(1) - u.at(0)));
  r.right_boundary = std::fabs(ga * u.at(n) + de * (u.at(n) - u.at(n - 1)));
  return r;
}

}  // namespace nabla
