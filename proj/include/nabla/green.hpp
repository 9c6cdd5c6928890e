#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/grid.hpp"
#include "nabla/monomials.hpp"

namespace nabla {

/// Coefficients of the two-point boundary conditions
///   alpha u(a+1) - beta (nabla u)(a+1) = 0,   gamma u(b) + delta (nabla u)(b) = 0.
struct BoundaryParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  void validate() const {
    for (double c : {alpha, beta, gamma, delta}) {
      if (!std::isfinite(c)) throw DomainError("BoundaryParams: non-finite coefficient");
    }
    if (alpha * alpha + beta * beta <= 0.0) {
      throw DomainError("BoundaryParams: alpha and beta both zero");
    }
    if (gamma * gamma + delta * delta <= 0.0) {
      throw DomainError("BoundaryParams: gamma and delta both zero");
    }
  }

  /// alpha, beta, gamma, delta >= 0 and beta >= alpha.
  [[nodiscard]] bool sign_hypotheses() const {
    return alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0 && delta >= 0.0 && beta >= alpha;
  }
};

/// The homogeneous two-point problem: grid, order 1 < nu < 2 and boundary data.
struct Problem {
  Grid grid;
  Order nu;
  BoundaryParams bc;

  Problem(Grid g, double order, BoundaryParams params) : grid(g), nu(order), bc(params) {
    if (!(order > 1.0 && order < 2.0)) {
      throw DomainError("Problem: order nu must satisfy 1 < nu < 2, got " + std::to_string(order));
    }
    bc.validate();
  }

  [[nodiscard]] int n() const { return grid.n; }
};

/// The three summands of xi, kept apart for the singularity gate.
struct XiTerms {
  double beta_gamma = 0.0;   // (beta - alpha) gamma
  double alpha_gamma = 0.0;  // alpha gamma H_{nu-1}(b, a)
  double alpha_delta = 0.0;  // alpha delta H_{nu-2}(b, a)

  [[nodiscard]] double value() const { return beta_gamma + alpha_gamma + alpha_delta; }
  [[nodiscard]] double scale() const {
    return std::max({std::fabs(beta_gamma), std::fabs(alpha_gamma), std::fabs(alpha_delta)});
  }
};

inline XiTerms xi_terms(const Problem& p) {
  const auto& [al, be, ga, de] = p.bc;
  const int n = p.n();
  return {(be - al) * ga, al * ga * monomial(Order(p.nu.value() - 1.0), n),
          al * de * monomial(Order(p.nu.value() - 2.0), n)};
}

/// xi = (beta - alpha) gamma + alpha gamma H_{nu-1}(b,a) + alpha delta H_{nu-2}(b,a).
/// The homogeneous problem has only the trivial solution iff xi != 0.
inline double xi(const Problem& p) { return xi_terms(p).value(); }

inline constexpr double kXiRelativeThreshold = 1e-12;

inline bool is_singular(const Problem& p) {
  const XiTerms t = xi_terms(p);
  return std::fabs(t.value()) <= kXiRelativeThreshold * t.scale();
}

/// Returns xi, or throws SingularProblem when it is zero relative to its largest term.
inline double checked_xi(const Problem& p) {
  const XiTerms t = xi_terms(p);
  if (std::fabs(t.value()) <= kXiRelativeThreshold * t.scale()) {
    throw SingularProblem("xi = " + std::to_string(t.value()) +
                          " vanishes; the boundary value problem has nontrivial "
                          "homogeneous solutions");
  }
  return t.value();
}

[[nodiscard]] inline bool satisfies_theorem_hypotheses(const Problem& p) {
  return p.bc.sign_hypotheses() && !is_singular(p) && xi(p) > 0.0;
}

inline void require_theorem_hypotheses(const Problem& p) {
  if (!p.bc.sign_hypotheses()) {
    throw HypothesisViolation(
        "sign hypotheses fail: need alpha, beta, gamma, delta >= 0 and beta >= alpha");
  }
  if (checked_xi(p) <= 0.0) throw HypothesisViolation("sign hypotheses fail: xi <= 0");
}

namespace detail {

inline void check_green_indices(const Problem& p, int t, int s) {
  if (t < 0 || t > p.n() || s < 1 || s > p.n()) {
    throw DomainError("green: (t, s) = (" + std::to_string(t) + ", " + std::to_string(s) +
                      ") outside [0, n] x [1, n]");
  }
}

}  // namespace detail

/// Branch of G used for t <= s - 1 (evaluated for any t in [0, n]).
inline double green_u(const Problem& p, int t_offset, int s_offset) {
  detail::check_green_indices(p, t_offset, s_offset);
  const double x = checked_xi(p);
  const auto& [al, be, ga, de] = p.bc;
  const Order nu1(p.nu.value() - 1.0);
  const Order nu2(p.nu.value() - 2.0);
  const int n = p.n();
  const double ht = monomial(nu1, t_offset);
  const double h1 = monomial(nu1, n, s_offset - 1);
  const double h2 = monomial(nu2, n, s_offset - 1);
  return (al * ga * ht * h1 + al * de * ht * h2 + (be - al) * ga * h1 + (be - al) * de * h2) / x;
}

/// Branch of G used for t >= s: u(t, s) - H_{nu-1}(t, rho(s)).
inline double green_v(const Problem& p, int t_offset, int s_offset) {
  const double u = green_u(p, t_offset, s_offset);
  if (t_offset < s_offset - 1) {
    throw DomainError("green_v: requires t_offset >= s_offset - 1");
  }
  return u - monomial(Order(p.nu.value() - 1.0), t_offset, s_offset - 1);
}

inline double green(const Problem& p, int t_offset, int s_offset) {
  return t_offset <= s_offset - 1 ? green_u(p, t_offset, s_offset)
                                  : green_v(p, t_offset, s_offset);
}

/// Omega: upper bound on max G. Requires the sign hypotheses.
inline double omega(const Problem& p) {
  require_theorem_hypotheses(p);
  const auto& [al, be, ga, de] = p.bc;
  const double x = xi(p);
  const double h = monomial(Order(p.nu.value() - 1.0), p.n());
  return (al * ga * h * h + al * de * h + (be - al) * ga * h + (be - al) * de) / x;
}

/// Lambda: upper bound on every row sum of G. Requires the sign hypotheses.
inline double lambda_bound(const Problem& p) {
  require_theorem_hypotheses(p);
  const auto& [al, be, ga, de] = p.bc;
  const double x = xi(p);
  const double h1 = monomial(Order(p.nu.value() - 1.0), p.n());
  const double h0 = monomial(p.nu, p.n());
  return (al * ga * h1 * h0 + al * de * h1 * h1 + (be - al) * ga * h0 + (be - al) * de * h1) / x;
}

/// Dense G(t, s) for t in [0, n], s in [1, n], with xi and, when the sign
/// hypotheses hold, Omega and Lambda.
class GreenTable {
 public:
  explicit GreenTable(const Problem& p)
      : grid_(p.grid), xi_(checked_xi(p)),
        entries_(static_cast<std::size_t>(p.n() + 1) * static_cast<std::size_t>(p.n())) {
    const int n = p.n();
    const auto& [al, be, ga, de] = p.bc;
    const Order nu1(p.nu.value() - 1.0);
    const Order nu2(p.nu.value() - 2.0);
    // H_{nu-1}(a+k, a) and H_{nu-2}(a+k, a) for k = 0..n.
    std::vector<double> h1(static_cast<std::size_t>(n + 1)), h2(h1.size());
    for (int k = 0; k <= n; ++k) {
      h1[k] = monomial(nu1, k);
      h2[k] = monomial(nu2, k);
    }
    for (int s = 1; s <= n; ++s) {
      const double b1 = h1[n - s + 1];
      const double b2 = h2[n - s + 1];
      const double slope = (al * ga * b1 + al * de * b2) / xi_;
      const double level = ((be - al) * ga * b1 + (be - al) * de * b2) / xi_;
      for (int t = 0; t <= n; ++t) {
        double g = slope * h1[t] + level;
        if (t >= s) g -= h1[t - s + 1];
        at(t, s) = g;
      }
    }
    if (satisfies_theorem_hypotheses(p)) {
      omega_ = nabla::omega(p);
      lambda_ = nabla::lambda_bound(p);
    }
  }

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] int n() const { return grid_.n; }
  [[nodiscard]] double xi() const { return xi_; }
  [[nodiscard]] std::optional<double> omega() const { return omega_; }
  [[nodiscard]] std::optional<double> lambda_bound() const { return lambda_; }

  [[nodiscard]] double operator()(int t, int s) const {
    return entries_[index(t, s)];
  }

  [[nodiscard]] double row_sum(int t) const {
    double sum = 0.0;
    for (int s = 1; s <= n(); ++s) sum += (*this)(t, s);
    return sum;
  }
  [[nodiscard]] double min_entry() const { return *std::min_element(entries_.begin(), entries_.end()); }
  [[nodiscard]] double max_entry() const { return *std::max_element(entries_.begin(), entries_.end()); }
  [[nodiscard]] double max_row_sum() const {
    double m = row_sum(0);
    for (int t = 1; t <= n(); ++t) m = std::max(m, row_sum(t));
    return m;
  }

 private:
  [[nodiscard]] std::size_t index(int t, int s) const {
    if (t < 0 || t > n() || s < 1 || s > n()) throw DomainError("GreenTable: index out of range");
    return static_cast<std::size_t>(t) * static_cast<std::size_t>(n()) + static_cast<std::size_t>(s - 1);
  }
  double& at(int t, int s) { return entries_[index(t, s)]; }

  Grid grid_;
  double xi_;
  std::vector<double> entries_;
  std::optional<double> omega_;
  std::optional<double> lambda_;
};

inline GreenTable green_table(const Problem& p) { return GreenTable(p); }


/// A grid location (t, s) together with the offending value.
struct Witness {
  int t = 0;
  int s = 0;
  double value = 0.0;
};

inline constexpr double kSignSlack = 1e-12;
inline constexpr double kBoundSlack = 1e-12;

/// Outcome of scanning a Green table for the sign, monotonicity and bound
/// properties that hold under the sign hypotheses. Every failed check keeps
/// the first witness found in (s, t) scan order.
struct SignReport {
  double xi = 0.0;
  bool xi_positive = false;
  std::optional<Witness> negative_entry;
  std::optional<Witness> u_decrease;  // nabla_t u(t, s) < -slack, 1 <= t <= s-1
  bool u_strictness_applies = false;  // alpha > 0 and (gamma, delta) != (0, 0)
  std::optional<Witness> u_not_strict;
  std::optional<Witness> v_increase;  // nabla_t v(t, s) > slack, s <= t <= n

  double max_entry = 0.0;
  double omega = 0.0;
  std::optional<Witness> omega_violation;  // location of max G when max G + slack >= omega
  double max_row_sum = 0.0;
  double lambda = 0.0;
  std::optional<Witness> lambda_violation;  // t of the offending row, s = 0
  bool max_on_hull = false;  // max G attained on {G(s-1, s), G(s, s)}

  [[nodiscard]] bool sign_and_monotonicity_ok() const {
    return xi_positive && !negative_entry && !u_decrease && !u_not_strict && !v_increase;
  }
  [[nodiscard]] bool bounds_ok() const { return !omega_violation && !lambda_violation; }
  [[nodiscard]] bool passed() const { return sign_and_monotonicity_ok() && bounds_ok(); }
};

inline SignReport verify_sign_and_monotonicity(const GreenTable& g, const Problem& p) {
  require_theorem_hypotheses(p);
  SignReport r;
  const int n = p.n();
  r.xi = g.xi();
  r.xi_positive = r.xi > 0.0;
  r.u_strictness_applies = p.bc.alpha > 0.0 && (p.bc.gamma > 0.0 || p.bc.delta > 0.0);

  Witness argmax{0, 1, g(0, 1)};
  double hull_max = -INFINITY;
  for (int s = 1; s <= n; ++s) {
    hull_max = std::max({hull_max, g(s - 1, s), g(s, s)});
    for (int t = 0; t <= n; ++t) {
      const double v = g(t, s);
      if (v < -kSignSlack && !r.negative_entry) r.negative_entry = Witness{t, s, v};
      if (v > argmax.value) argmax = Witness{t, s, v};
    }
    for (int t = 1; t <= s - 1; ++t) {
      const double d = g(t, s) - g(t - 1, s);
      if (d < -kSignSlack && !r.u_decrease) r.u_decrease = Witness{t, s, d};
      if (r.u_strictness_applies && !(d > 0.0) && !r.u_not_strict) r.u_not_strict = Witness{t, s, d};
    }
    // v(s - 1, s) = u(s - 1, s) since H_{nu-1}(rho(s), rho(s)) = 0, so the
    // first difference at t = s reads the stored u entry.
    for (int t = s; t <= n; ++t) {
      const double d = g(t, s) - g(t - 1, s);
      if (d > kSignSlack && !r.v_increase) r.v_increase = Witness{t, s, d};
    }
  }

  r.max_entry = argmax.value;
  r.max_on_hull = hull_max >= argmax.value;
  r.omega = omega(p);
  if (!(r.max_entry + kBoundSlack < r.omega)) r.omega_violation = argmax;

  r.lambda = lambda_bound(p);
  r.max_row_sum = -INFINITY;
  for (int t = 0; t <= n; ++t) {
    const double rs = g.row_sum(t);
    r.max_row_sum = std::max(r.max_row_sum, rs);
    if (!(rs + kBoundSlack < r.lambda) && !r.lambda_violation) r.lambda_violation = Witness{t, 0, rs};
  }
  return r;
}

inline SignReport verify_sign_and_monotonicity(const Problem& p) {
  require_theorem_hypotheses(p);
  return verify_sign_and_monotonicity(GreenTable(p), p);
}

}  // namespace nabla
