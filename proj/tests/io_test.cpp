#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "nabla/io.hpp"

namespace nabla {
namespace {

std::string parse_error_message(const std::string& text) {
  std::istringstream in(text);
  try {
    read_problem(in);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

TEST(GridFunctionText, RoundTripIsExact) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int rep = 0; rep < 50; ++rep) {
    const Grid g(0.5, 1 + rep % 20);
    const int start = rep % 2;
    const GridFunction u = GridFunction::tabulate(g, start, [&](int) { return dist(rng) * 1e-3; });
    std::stringstream ss;
    write_grid_function(ss, u);
    const GridFunction v = read_grid_function(ss, g);
    ASSERT_EQ(v.start(), start);
    for (int k = start; k <= g.n; ++k) EXPECT_EQ(v[k], u[k]);
  }
}

TEST(GridFunctionText, CommentsAndBlankLines) {
  std::istringstream in("# forcing\n\n1, 0.5\n 2,-1e-3 \n3,+2\n");
  const GridFunction u = read_grid_function(in, Grid(0.0, 3));
  EXPECT_EQ(u.start(), 1);
  EXPECT_EQ(u[2], -1e-3);
  EXPECT_EQ(u[3], 2.0);
}

TEST(GridFunctionText, Errors) {
  const Grid g(0.0, 3);
  auto fails = [&](const std::string& text) {
    std::istringstream in(text);
    EXPECT_THROW(read_grid_function(in, g), ParseError) << text;
  };
  fails("");
  fails("1 0.5\n");
  fails("1,x\n2,1\n3,1\n");
  fails("1,1\n3,1\n");
  fails("1,1\n2,1\n");
  fails("1,1\n2,1\n3,1\n4,1\n");
  fails("1,1\n2,nan\n3,1\n");
}

TEST(ProblemText, RoundTrip) {
  const Problem p(Grid(-2.25, 17), 1.3333333333333333, {0.1, 0.7, 2.5, 1e-3});
  std::stringstream ss;
  write_problem(ss, p);
  const Problem q = read_problem(ss);
  EXPECT_EQ(q.grid, p.grid);
  EXPECT_EQ(q.nu.value(), p.nu.value());
  EXPECT_EQ(q.bc.alpha, p.bc.alpha);
  EXPECT_EQ(q.bc.beta, p.bc.beta);
  EXPECT_EQ(q.bc.gamma, p.bc.gamma);
  EXPECT_EQ(q.bc.delta, p.bc.delta);
}

TEST(ProblemText, CommentsAndOrder) {
  std::istringstream in("# sample\ndelta = 1\ngamma=1 # right\nbeta = 2\nalpha = 1\nnu = 1.5\nn = 10\na = 0\n");
  const Problem p = read_problem(in);
  EXPECT_EQ(p.n(), 10);
  EXPECT_EQ(p.bc.beta, 2.0);
}

TEST(ProblemText, ErrorsNameTheField) {
  const std::string base = "a = 0\nn = 4\nnu = 1.5\nalpha = 1\nbeta = 2\ngamma = 1\n";
  EXPECT_NE(parse_error_message(base).find("'delta'"), std::string::npos);
  EXPECT_NE(parse_error_message(base + "delta = one\n").find("'delta'"), std::string::npos);
  EXPECT_NE(parse_error_message(base + "delta = 1\nepsilon = 2\n").find("'epsilon'"), std::string::npos);
  EXPECT_NE(parse_error_message(base + "delta = 1\ngamma = 2\n").find("'gamma'"), std::string::npos);
  EXPECT_NE(parse_error_message("a = 0\nn = 4.5\nnu = 1.5\nalpha = 1\nbeta = 2\ngamma = 1\ndelta = 1\n")
                .find("'n'"),
            std::string::npos);
  EXPECT_NE(parse_error_message("a = 0\nn = 4\nnu = 2.5\nalpha = 1\nbeta = 2\ngamma = 1\ndelta = 1\n")
                .find("'nu'"),
            std::string::npos);
  EXPECT_NE(parse_error_message("a = 0\nn = 0\nnu = 1.5\nalpha = 1\nbeta = 2\ngamma = 1\ndelta = 1\n")
                .find("'n'"),
            std::string::npos);
  EXPECT_FALSE(parse_error_message("n 4\n").empty());
  EXPECT_FALSE(parse_error_message("a = 0\nn = 4\nnu = 1.5\nalpha = 0\nbeta = 0\ngamma = 1\ndelta = 1\n").empty());
}

TEST(ProblemText, MissingFile) {
  EXPECT_THROW(read_problem_file("/nonexistent/problem.txt"), ParseError);
}

TEST(GreenCsvText, WriteAndRead) {
  const Problem p(Grid(0.0, 6), 1.5, {1, 2, 1, 1});
  const GreenTable g(p);
  std::stringstream ss;
  write_green_csv(ss, g);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "t\\s,1,2,3,4,5,6");
  ss.seekg(0);
  const GreenCsv csv = read_green_csv(ss);
  ASSERT_EQ(csv.n, 6);
  ASSERT_EQ(csv.rows.size(), 7u);
  for (int t = 0; t <= 6; ++t) {
    for (int s = 1; s <= 6; ++s) EXPECT_EQ(csv.rows[t][s - 1], g(t, s));
  }
  EXPECT_EQ(csv.footer.at("xi"), g.xi());
  EXPECT_EQ(csv.footer.at("omega"), *g.omega());
  EXPECT_EQ(csv.footer.at("lambda"), *g.lambda_bound());
}

TEST(GreenCsvText, GeneralModeHasNoBounds) {
  const GreenTable g(Problem(Grid(0.0, 3), 1.5, {2, 1, 1, 1}));
  std::stringstream ss;
  write_green_csv(ss, g);
  const GreenCsv csv = read_green_csv(ss);
  EXPECT_EQ(csv.footer.count("xi"), 1u);
  EXPECT_EQ(csv.footer.count("omega"), 0u);
}

TEST(GreenCsvText, Malformed) {
  std::istringstream bad_header("t,1,2\n0,1,2\n");
  EXPECT_THROW(read_green_csv(bad_header), ParseError);
  std::istringstream ragged("t\\s,1,2\n0,1\n");
  EXPECT_THROW(read_green_csv(ragged), ParseError);
  std::istringstream empty("");
  EXPECT_THROW(read_green_csv(empty), ParseError);
}

TEST(FormatReal, SeventeenDigits) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(1.5), "1.5");
  EXPECT_EQ(std::stod(format_real(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
}  // namespace nabla
