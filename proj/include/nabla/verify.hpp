#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nabla/calculus.hpp"
#include "nabla/green.hpp"
#include "nabla/lyapunov.hpp"
#include "nabla/monomials.hpp"
#include "nabla/solver.hpp"

namespace nabla::verify {

/// Outcome of one property check over many cases.
struct CheckResult {
  explicit CheckResult(std::string check_name = {}) : name(std::move(check_name)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  double worst = 0.0;        // largest error or slack violation seen
  std::string first_failure;

  [[nodiscard]] bool passed() const { return checked > 0 && failures == 0; }

  void record(bool ok, double error, const std::string& where) {
    ++checked;
    worst = std::max(worst, error);
    if (!ok) {
      if (failures == 0) first_failure = where;
      ++failures;
    }
  }
};

namespace detail {

// |got - want| measured against rel * |want| + abs_floor; returns the ratio, so
// a value <= 1 passes.
inline double scaled_error(double got, double want, double rel, double abs_floor) {
  return std::fabs(got - want) / (rel * std::fabs(want) + abs_floor);
}

inline std::string where(std::initializer_list<std::pair<const char*, double>> fields) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [k, v] : fields) {
    os << (first ? "" : " ") << k << '=' << v;
    first = false;
  }
  return os.str();
}

inline std::string describe(const Problem& p) {
  return where({{"alpha", p.bc.alpha},
                {"beta", p.bc.beta},
                {"gamma", p.bc.gamma},
                {"delta", p.bc.delta},
                {"nu", p.nu.value()},
                {"n", static_cast<double>(p.n())}});
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Default theorem-mode lattice

/// Coefficient tuples (alpha, beta, gamma, delta) satisfying the sign
/// hypotheses, including alpha = 0, beta = alpha, delta = 0 and gamma = 0 with
/// delta, alpha > 0.
inline const std::vector<BoundaryParams>& lattice_tuples() {
  static const std::vector<BoundaryParams> tuples{
      {1.0, 2.0, 1.0, 1.0},  {0.0, 1.0, 1.0, 0.0},  {0.0, 1.0, 1.0, 1.0},
      {0.0, 2.0, 0.5, 3.0},  {1.0, 1.0, 1.0, 1.0},  {1.0, 1.0, 1.0, 0.0},
      {1.0, 1.0, 0.0, 1.0},  {1.0, 2.0, 1.0, 0.0},  {2.0, 3.0, 0.5, 0.0},
      {1.0, 3.0, 0.0, 1.0},  {0.5, 1.0, 0.0, 2.0},  {1.0, 4.0, 2.0, 0.5},
      {0.2, 0.3, 3.0, 1.0},
  };
  return tuples;
}

inline constexpr std::array<double, 5> kLatticeOrders{1.1, 1.3, 1.5, 1.7, 1.9};
inline constexpr std::array<int, 5> kLatticeSpans{2, 5, 10, 20, 32};

inline std::vector<Problem> default_lattice() {
  std::vector<Problem> out;
  for (const auto& bc : lattice_tuples()) {
    for (double nu : kLatticeOrders) {
      for (int n : kLatticeSpans) out.emplace_back(Grid(0.0, n), nu, bc);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monomial identities and power rules

inline const std::vector<double>& identity_orders() {
  static const std::vector<double> orders{-0.9, -0.5, 0.0, 0.3, 1.0, 1.7, 2.5};
  return orders;
}

/// Rising-function composition, backward difference, both telescoping sums and
/// the shift identity H_mu(t,a) - H_{mu-1}(t,a) = H_mu(t,a+1), relative `rel`
/// with absolute floor `abs_floor`, on grids up to `max_n`.
inline CheckResult check_monomial_identities(int max_n = 48, double rel = 1e-10,
                                             double abs_floor = 1e-12) {
  CheckResult r{"monomial_identities"};
  using detail::scaled_error;
  using detail::where;
  const auto& orders = identity_orders();
  auto record = [&](double got, double want, const std::string& w) {
    const double e = scaled_error(got, want, rel, abs_floor);
    r.record(e <= 1.0, e, w);
  };

  for (double nu : orders) {
    for (double mu : orders) {
      for (int step = 1; step <= 4 * max_n; ++step) {
        const double t = 0.25 * step;
        if (t + nu <= 0.0 || is_nonpositive_integer(t + nu + mu)) continue;
        record(rising(t, nu) * rising(t + nu, mu), rising(t, nu + mu),
               "composition " + where({{"t", t}, {"nu", nu}, {"mu", mu}}));
      }
    }
  }

  for (double mu : orders) {
    const Order m(mu);
    const Order m_lower(mu - 1.0);
    const Order m_upper(mu + 1.0);
    // H_0(a+1) - H_0(a) = 1 while H_{-1} vanishes identically; mu = 0 starts at a+2.
    const int first = mu == 0.0 ? 2 : 1;
    for (int t = first; t <= max_n; ++t) {
      record(monomial(m, t) - monomial(m, t - 1), monomial(m_lower, t),
             "backward_difference " + where({{"mu", mu}, {"t", static_cast<double>(t)}}));
    }
    for (int t = 1; t <= max_n; ++t) {
      double along_t = 0.0;
      double along_rho = 0.0;
      for (int s = 1; s <= t; ++s) {
        along_t += monomial(m, s);
        along_rho += monomial(m, t, s - 1);
      }
      const double want = monomial(m_upper, t);
      record(along_t, want, "sum_over_s " + where({{"mu", mu}, {"t", static_cast<double>(t)}}));
      record(along_rho, want, "sum_over_rho " + where({{"mu", mu}, {"t", static_cast<double>(t)}}));
      if (mu > 0.0) {
        record(monomial(m, t) - monomial(m_lower, t), monomial(m, t, 1),
               "shift " + where({{"mu", mu}, {"t", static_cast<double>(t)}}));
      }
    }
  }
  return r;
}

inline const std::vector<double>& power_rule_monomial_orders() {
  static const std::vector<double> v{0.0, 0.4, 1.0, 1.6, 2.5};
  return v;
}
inline const std::vector<double>& power_rule_operator_orders() {
  static const std::vector<double> v{0.3, 0.5, 1.2, 1.5, 1.9};
  return v;
}

/// nabla^{-nu} H_mu = H_{mu+nu} and nabla^{nu} H_mu = H_{mu-nu} pointwise on
/// every grid span up to `max_n`, skipping pairs with mu - nu a negative integer.
inline CheckResult check_power_rules(int max_n = 48, double rel = 1e-9, double abs_floor = 1e-12) {
  CheckResult r{"power_rules"};
  for (double mu : power_rule_monomial_orders()) {
    for (double nu : power_rule_operator_orders()) {
      const bool excluded = Order(mu - nu).is_negative_integer();
      for (int n = 2; n <= max_n; ++n) {
        const Grid g(0.0, n);
        const GridFunction h =
            GridFunction::tabulate(g, 0, [mu](int k) { return monomial(Order(mu), k); });
        const GridFunction s = frac_sum(h, nu);
        for (int k = 0; k <= n; ++k) {
          const double e = detail::scaled_error(s[k], monomial(Order(mu + nu), k), rel, abs_floor);
          r.record(e <= 1.0, e,
                   "sum " + detail::where({{"mu", mu}, {"nu", nu}, {"n", double(n)}, {"t", double(k)}}));
        }
        if (excluded) {
          ++r.skipped;
          continue;
        }
        const GridFunction d = frac_diff(h, nu);
        for (int k = d.start(); k <= n; ++k) {
          const double e = detail::scaled_error(d[k], monomial(Order(mu - nu), k), rel, abs_floor);
          r.record(e <= 1.0, e,
                   "difference " + detail::where({{"mu", mu}, {"nu", nu}, {"n", double(n)}, {"t", double(k)}}));
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Green summation against the dense oracle

inline BoundaryParams random_theorem_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(0.0, 3.0);
  std::uniform_int_distribution<int> coin(0, 19);
  for (;;) {
    BoundaryParams bc{coef(rng), 0.0, coef(rng), coef(rng)};
    bc.beta = bc.alpha + coef(rng);
    const int pick = coin(rng);
    if (pick < 4) bc.alpha = 0.0;            // alpha = 0
    else if (pick < 7) bc.beta = bc.alpha;   // beta = alpha
    else if (pick < 10) bc.delta = 0.0;      // delta = 0
    else if (pick < 12) bc.gamma = 0.0;      // gamma = 0
    if (bc.alpha * bc.alpha + bc.beta * bc.beta <= 0.0) continue;
    if (bc.gamma * bc.gamma + bc.delta * bc.delta <= 0.0) continue;
    if (!bc.sign_hypotheses()) continue;
    return bc;
  }
}

inline GridFunction random_forcing(std::mt19937_64& rng, const Grid& g) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  return GridFunction::tabulate(g, 1, [&](int) { return unit(rng); });
}

/// |u_green - u_dense|_inf / max(1, |u_dense|_inf) for one instance.
inline double oracle_gap(const BvpInstance& inst) {
  const GridFunction ug = solve_via_green(inst);
  const DenseSolution ud = solve_dense(assemble_dense(inst));
  return (ug - ud.u).sup_norm() / std::max(1.0, ud.u.sup_norm());
}

/// `count` random theorem-mode instances with n <= max_n and nu in (1.05, 1.95).
inline CheckResult check_oracle_equivalence(std::uint64_t seed, int count = 100, int max_n = 40,
                                            double tol = 1e-8) {
  CheckResult r{"oracle_equivalence"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> order(1.05, 1.95);
  std::uniform_int_distribution<int> span(1, max_n);
  while (static_cast<int>(r.checked + r.skipped) < count) {
    const Problem p(Grid(0.0, span(rng)), order(rng), random_theorem_params(rng));
    const BvpInstance inst(p, random_forcing(rng, p.grid));
    if (is_singular(p)) {
      ++r.skipped;
      continue;
    }
    const double gap = oracle_gap(inst);
    r.record(gap <= tol, gap, detail::describe(p));
  }
  return r;
}

/// Oracle equivalence on given problems, `per_problem` random forcings each.
inline CheckResult check_oracle_on(const std::vector<Problem>& problems, std::uint64_t seed,
                                   int per_problem = 3, double tol = 1e-8) {
  CheckResult r{"oracle_equivalence"};
  std::mt19937_64 rng(seed);
  for (const Problem& p : problems) {
    for (int i = 0; i < per_problem; ++i) {
      const double gap = oracle_gap(BvpInstance(p, random_forcing(rng, p.grid)));
      r.record(gap <= tol, gap, detail::describe(p));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sign, bounds and monotonicity over theorem-mode problems

struct LatticeReport {
  CheckResult sign{"green_nonnegative"};
  CheckResult bounds{"green_bounds"};
  CheckResult monotonicity{"green_monotonicity"};
};

/// Scans each problem's Green table once and fills the three checks. `worst`
/// holds the most negative entry (as a positive number), the largest
/// max G - Omega or row sum - Lambda, and the largest monotonicity defect.
inline LatticeReport check_green_properties(const std::vector<Problem>& problems) {
  LatticeReport out;
  for (const Problem& p : problems) {
    const GreenTable g(p);
    const SignReport rep = verify_sign_and_monotonicity(g, p);
    const std::string where = detail::describe(p);

    const double min_g = g.min_entry();
    out.sign.record(rep.xi_positive && !rep.negative_entry, std::max(0.0, -min_g),
                    rep.negative_entry ? where + detail::where({{"t", double(rep.negative_entry->t)},
                                                                 {"s", double(rep.negative_entry->s)},
                                                                 {"G", rep.negative_entry->value}})
                                       : where);

    const double excess = std::max(rep.max_entry - rep.omega, rep.max_row_sum - rep.lambda);
    std::string bound_where = where;
    if (rep.omega_violation) {
      bound_where += detail::where({{" max_G", rep.max_entry}, {"omega", rep.omega},
                                    {"t", double(rep.omega_violation->t)},
                                    {"s", double(rep.omega_violation->s)}});
    } else if (rep.lambda_violation) {
      bound_where += detail::where({{" row_sum", rep.lambda_violation->value}, {"lambda", rep.lambda},
                                    {"t", double(rep.lambda_violation->t)}});
    }
    out.bounds.record(rep.bounds_ok(), excess, bound_where);

    double defect = 0.0;
    if (rep.u_decrease) defect = std::max(defect, -rep.u_decrease->value);
    if (rep.v_increase) defect = std::max(defect, rep.v_increase->value);
    std::string mono_where = where;
    if (rep.u_decrease) {
      mono_where += detail::where({{" u_decrease_t", double(rep.u_decrease->t)},
                                   {"s", double(rep.u_decrease->s)}});
    } else if (rep.v_increase) {
      mono_where += detail::where({{" v_increase_t", double(rep.v_increase->t)},
                                   {"s", double(rep.v_increase->s)}});
    }
    out.monotonicity.record(!rep.u_decrease && !rep.v_increase, defect, mono_where);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lyapunov inequality

namespace detail {

// det(M_q) / det(M_0) stays 1 for q = c on offsets 1..n, sampled across the
// default bracket.
inline bool determinant_ignores_constant_potential(const Problem& p) {
  const Matrix base = assemble_operator(p);
  const SignedLog base_det = LuDecomposition(base).log_determinant();
  const double hi = default_bracket(p).second;
  for (double c : {1e-3 * hi, 0.5 * hi, hi}) {
    Matrix m = base;
    add_potential(m, GridFunction::constant(p.grid, 1, c));
    const double ratio = (LuDecomposition(std::move(m)).log_determinant() / base_det).value();
    if (std::fabs(ratio - 1.0) > 1e-9) return false;
  }
  return true;
}

}  // namespace detail

/// For each problem, locate the constant eigenpotential on the default bracket
/// and require n |lambda*| > 1 / Omega strictly, and that the located lambda*
/// is detected as admitting a nontrivial solution. A problem whose bracket
/// holds no sign change is skipped only when det(M_q) does not depend on the
/// constant q at all (no eigenpotential exists); otherwise it fails. `worst`
/// is the smallest ratio n |lambda*| Omega seen (the check wants every
/// ratio > 1).
inline CheckResult check_lyapunov_necessity(const std::vector<Problem>& problems) {
  CheckResult r{"lyapunov_necessity"};
  double min_ratio = INFINITY;
  for (const Problem& p : problems) {
    double lambda = 0.0;
    try {
      lambda = find_constant_eigenpotential(p);
    } catch (const NoSignChange&) {
      if (detail::determinant_ignores_constant_potential(p)) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      if (r.failures == 0) r.first_failure = detail::describe(p) + " no sign change on default bracket";
      ++r.failures;
      continue;
    }
    const LyapunovVerdict v = evaluate_potential(p, GridFunction::constant(p.grid, 1, lambda));
    const double ratio = p.n() * std::fabs(lambda) / v.threshold;
    min_ratio = std::min(min_ratio, ratio);
    const bool ok = v.nontrivial_solution_exists && p.n() * std::fabs(lambda) > v.threshold &&
                    v.consistent();
    ++r.checked;
    if (!ok) {
      if (r.failures == 0) {
        r.first_failure = detail::describe(p) + detail::where({{" lambda", lambda},
                                                               {"threshold", v.threshold},
                                                               {"relative_det", v.relative_determinant}});
      }
      ++r.failures;
    }
  }
  r.worst = r.checked > 0 ? min_ratio : 0.0;
  return r;
}

/// `count` random potentials with sum |q| = 0.99 / Omega * u, u uniform in
/// (0, 1], on problems drawn from `problems`; each must leave the system
/// nonsingular. `worst` is the smallest relative determinant seen.
inline CheckResult check_lyapunov_safety(const std::vector<Problem>& problems, std::uint64_t seed,
                                         int count = 200) {
  CheckResult r{"lyapunov_safety"};
  if (problems.empty()) return r;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> fraction(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, problems.size() - 1);
  double min_det = INFINITY;
  for (int i = 0; i < count; ++i) {
    const Problem& p = problems[pick(rng)];
    GridFunction q = random_forcing(rng, p.grid);
    double l1 = 0.0;
    for (int s = 1; s <= p.n(); ++s) l1 += std::fabs(q[s]);
    const double target = 0.99 * lyapunov_threshold(p) * (1.0 - fraction(rng));
    q = (target / l1) * q;
    const LyapunovVerdict v = evaluate_potential(p, q);
    min_det = std::min(min_det, v.relative_determinant);
    ++r.checked;
    if (v.nontrivial_solution_exists || !v.consistent()) {
      if (r.failures == 0) {
        r.first_failure = detail::describe(p) + detail::where({{" l1", v.l1_norm},
                                                               {"relative_det", v.relative_determinant}});
      }
      ++r.failures;
    }
  }
  r.worst = min_det;
  return r;
}

// ---------------------------------------------------------------------------
// Spot values

inline CheckResult check_spot_values(double tol = 1e-12) {
  CheckResult r{"spot_values"};
  const Grid g(0.0, 4);
  const GridFunction ones = GridFunction::constant(g, 1, 1.0);
  const double values[4][2] = {
      {monomial(Order(0.5), 2), 1.5},
      {monomial_ratio(Order(0.5), 3, 2), 0.8},
      {frac_sum(ones, 0.5)[2], 1.5},
      {frac_diff(ones, 1.5)[2], -0.5},
  };
  const char* names[4] = {"H_0.5(a+2,a)", "h_0.5(a+3,a+2)", "sum_0.5(1)(a+2)", "diff_1.5(1)(a+2)"};
  for (int i = 0; i < 4; ++i) {
    const double e = std::fabs(values[i][0] - values[i][1]);
    r.record(e <= tol, e, names[i]);
  }
  return r;
}

}  // namespace nabla::verify
