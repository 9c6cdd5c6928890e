#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nabla/nabla.hpp"

namespace {

using namespace nabla;

enum ExitCode : int {
  kPass = 0,
  kParseOrDomain = 2,
  kSingular = 3,
  kVerificationFailure = 4,
  kSearchFailure = 5,
};

// Opens --out when given, else standard output.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw ParseError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::pair<double, double> parse_bracket(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("--bracket: expected LO:HI, got '" + text + "'");
  const double lo = detail::parse_number<double>(text.substr(0, colon), "--bracket LO");
  const double hi = detail::parse_number<double>(text.substr(colon + 1), "--bracket HI");
  if (!(lo < hi)) throw ParseError("--bracket: need LO < HI");
  return {lo, hi};
}

const char* flag(bool b) { return b ? "true" : "false"; }

void print_check(std::ostream& os, const verify::CheckResult& r) {
  os << "check=" << r.name << " status=" << (r.passed() ? "pass" : "fail") << " checked=" << r.checked
     << " failures=" << r.failures << " skipped=" << r.skipped << " worst=" << format_real(r.worst);
  if (r.failures > 0) os << " first_failure=\"" << r.first_failure << '"';
  os << '\n';
}

int cmd_monomial(double mu, int k) {
  if (k < 0) throw DomainError("--k must be >= 0");
  std::cout << format_real(monomial(Order(mu), k)) << '\n';
  return kPass;
}

int cmd_green(const std::string& spec, const std::string& out) {
  const Problem p = read_problem_file(spec);
  const GreenTable g(p);
  Output o(out);
  write_green_csv(o.stream(), g);
  std::cerr << "green: n=" << p.n() << " xi=" << format_real(g.xi());
  if (g.omega()) std::cerr << " omega=" << format_real(*g.omega()) << " lambda=" << format_real(*g.lambda_bound());
  std::cerr << '\n';
  return kPass;
}

int cmd_solve(const std::string& spec, const std::string& forcing, const std::string& out) {
  const Problem p = read_problem_file(spec);
  const BvpInstance inst(p, read_grid_function_file(forcing, p.grid));
  const GridFunction u = solve_via_green(inst);
  Output o(out);
  write_grid_function(o.stream(), u);
  std::cerr << "residual=" << format_real(residual(inst, u).max()) << '\n';
  return kPass;
}

int cmd_verify(const std::string& spec, std::uint64_t seed, double tol) {
  std::vector<verify::CheckResult> results;
  std::vector<Problem> problems;
  if (!spec.empty()) {
    const Problem p = read_problem_file(spec);
    try {
      require_theorem_hypotheses(p);
    } catch (const HypothesisViolation& e) {
      std::cout << "check=hypotheses status=fail detail=\"" << e.what() << "\"\nresult=fail\n";
      return kVerificationFailure;
    }
    problems.push_back(p);
    std::cerr << "verify: single instance " << verify::detail::describe(p) << '\n';
  } else {
    problems = verify::default_lattice();
    std::cerr << "verify: default lattice, " << problems.size() << " instances\n";
    results.push_back(verify::check_spot_values());
    results.push_back(verify::check_monomial_identities());
    results.push_back(verify::check_power_rules());
    results.push_back(verify::check_oracle_equivalence(seed, 100, 40, tol));
  }
  if (!spec.empty()) results.push_back(verify::check_oracle_on(problems, seed, 3, tol));
  const verify::LatticeReport green = verify::check_green_properties(problems);
  results.push_back(green.sign);
  results.push_back(green.monotonicity);
  results.push_back(green.bounds);
  results.push_back(verify::check_lyapunov_necessity(problems));
  results.push_back(verify::check_lyapunov_safety(problems, seed));

  bool all = true;
  for (const auto& r : results) {
    print_check(std::cout, r);
    all = all && r.passed();
  }
  std::cout << "result=" << (all ? "pass" : "fail") << '\n';
  return all ? kPass : kVerificationFailure;
}

int cmd_lyapunov(const std::string& spec, const std::string& potential, const std::string& bracket) {
  const Problem p = read_problem_file(spec);
  const double threshold = lyapunov_threshold(p);
  if (potential.empty() && bracket.empty()) {
    std::cout << format_real(threshold) << '\n';
    return kPass;
  }
  bool consistent = true;
  if (!potential.empty()) {
    const GridFunction q = read_grid_function_file(potential, p.grid);
    const LyapunovVerdict v = evaluate_potential(p, q);
    std::cout << "threshold=" << format_real(v.threshold) << '\n'
              << "l1_norm=" << format_real(v.l1_norm) << '\n'
              << "relative_determinant=" << format_real(v.relative_determinant) << '\n'
              << "nontrivial_solution_exists=" << flag(v.nontrivial_solution_exists) << '\n'
              << "inequality_holds=" << flag(v.inequality_holds) << '\n';
    consistent = consistent && v.consistent();
  }
  if (!bracket.empty()) {
    const auto [lo, hi] = parse_bracket(bracket);
    const double lambda = find_constant_eigenpotential(p, lo, hi);
    const LyapunovVerdict v = evaluate_potential(p, GridFunction::constant(p.grid, 1, lambda));
    std::cout << "lambda=" << format_real(lambda) << '\n'
              << "l1_norm=" << format_real(v.l1_norm) << '\n'
              << "threshold=" << format_real(v.threshold) << '\n'
              << "nontrivial_solution_exists=" << flag(v.nontrivial_solution_exists) << '\n'
              << "inequality_holds=" << flag(v.inequality_holds) << '\n';
    consistent = consistent && v.consistent();
  }
  std::cout << "consistent=" << flag(consistent) << '\n';
  return consistent ? kPass : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nabla fractional boundary value problems: monomials, Green's functions, bounds"};
  app.require_subcommand(1);

  double mu = 0.0;
  int k = 0;
  auto* monomial_cmd = app.add_subcommand("monomial", "Print H_mu(a+k, a)");
  monomial_cmd->add_option("--mu", mu, "Order mu")->required();
  monomial_cmd->add_option("--k", k, "Offset k = t - a")->required();

  std::string spec;
  std::string out;
  auto* green_cmd = app.add_subcommand("green", "Write the Green table as CSV");
  green_cmd->add_option("--spec", spec, "Problem file")->required();
  green_cmd->add_option("--out", out, "Output CSV (default: stdout)");

  std::string forcing;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the forced problem by Green summation");
  solve_cmd->add_option("--spec", spec, "Problem file")->required();
  solve_cmd->add_option("--forcing", forcing, "Forcing h on offsets 1..n")->required();
  solve_cmd->add_option("--out", out, "Output grid function (default: stdout)");

  bool lattice = false;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  auto* verify_cmd = app.add_subcommand("verify", "Run the property checks");
  auto* spec_opt = verify_cmd->add_option("--spec", spec, "Check a single instance");
  verify_cmd->add_flag("--lattice", lattice, "Check the default lattice (the default)")->excludes(spec_opt);
  verify_cmd->add_option("--seed", seed, "Seed for randomized checks");
  verify_cmd->add_option("--tol", tol, "Tolerance for Green vs dense solutions")->check(CLI::PositiveNumber);

  std::string potential;
  std::string bracket;
  auto* lyapunov_cmd = app.add_subcommand("lyapunov", "Threshold 1/Omega, potential verdicts, eigenpotential search");
  lyapunov_cmd->add_option("--spec", spec, "Problem file")->required();
  lyapunov_cmd->add_option("--potential", potential, "Potential q on offsets 1..n");
  lyapunov_cmd->add_option("--bracket", bracket, "Search constant eigenpotential on LO:HI");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseOrDomain;
  }

  try {
    if (*monomial_cmd) return cmd_monomial(mu, k);
    if (*green_cmd) return cmd_green(spec, out);
    if (*solve_cmd) return cmd_solve(spec, forcing, out);
    if (*verify_cmd) return cmd_verify(spec, seed, tol);
    if (*lyapunov_cmd) return cmd_lyapunov(spec, potential, bracket);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseOrDomain;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseOrDomain;
  } catch (const SingularProblem& e) {
    std::cerr << "singular: " << e.what() << '\n';
    return kSingular;
  } catch (const SingularSystem& e) {
    std::cerr << "singular: " << e.what() << '\n';
    return kSingular;
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const NoSignChange& e) {
    std::cerr << "search failed: " << e.what() << '\n';
    return kSearchFailure;
  }
  return kParseOrDomain;
}
