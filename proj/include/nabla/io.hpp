#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/green.hpp"
#include "nabla/grid.hpp"

namespace nabla {

/// Shortest round-trip text is not required; 17 significant digits always is.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view text, const std::string& what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(what + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

}  // namespace detail

/// Grid-function text format: one "offset,value" record per line, offsets
/// contiguous and increasing. Blank lines and '#' comments are skipped.
inline void write_grid_function(std::ostream& os, const GridFunction& u) {
  for (int k = u.start(); k <= u.end(); ++k) os << k << ',' << format_real(u.at(k)) << '\n';
}

/// Reads a grid function for `grid`. The first offset found becomes the start.
inline GridFunction read_grid_function(std::istream& is, const Grid& grid) {
  std::vector<double> values;
  int start = 0;
  int expected = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string_view s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto comma = s.find(',');
    const std::string where = "grid function line " + std::to_string(line_no);
    if (comma == std::string_view::npos) throw ParseError(where + ": expected 'offset,value'");
    const int k = detail::parse_number<int>(s.substr(0, comma), where + " offset");
    const double v = detail::parse_number<double>(s.substr(comma + 1), where + " value");
    if (values.empty()) {
      start = expected = k;
    } else if (k != expected) {
      throw ParseError(where + ": offsets must be contiguous, expected " + std::to_string(expected));
    }
    values.push_back(v);
    ++expected;
  }
  if (values.empty()) throw ParseError("grid function: no records");
  if (expected - 1 != grid.n) {
    throw ParseError("grid function: last offset " + std::to_string(expected - 1) +
                     " does not match grid span " + std::to_string(grid.n));
  }
  try {
    return GridFunction(grid, start, std::move(values));
  } catch (const DomainError& e) {
    throw ParseError(std::string("grid function: ") + e.what());
  }
}

inline GridFunction read_grid_function_file(const std::string& path, const Grid& grid) {
  auto in = detail::open_input(path);
  return read_grid_function(in, grid);
}

/// Problem file: "key = value" lines with keys a, n, nu, alpha, beta, gamma,
/// delta; '#' starts a comment.
inline Problem read_problem(std::istream& is) {
  std::map<std::string, std::string, std::less<>> fields;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("problem line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(detail::trim(s.substr(0, eq)));
    static const std::vector<std::string> known{"a", "n", "nu", "alpha", "beta", "gamma", "delta"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError("problem: unknown field '" + key + "'");
    }
    if (fields.count(key)) throw ParseError("problem: duplicate field '" + key + "'");
    fields.emplace(std::move(key), std::string(detail::trim(s.substr(eq + 1))));
  }
  auto get = [&](const std::string& key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end()) throw ParseError("problem: missing field '" + key + "'");
    return it->second;
  };
  const double a = detail::parse_number<double>(get("a"), "problem field 'a'");
  const int n = detail::parse_number<int>(get("n"), "problem field 'n'");
  const double nu = detail::parse_number<double>(get("nu"), "problem field 'nu'");
  BoundaryParams bc{detail::parse_number<double>(get("alpha"), "problem field 'alpha'"),
                    detail::parse_number<double>(get("beta"), "problem field 'beta'"),
                    detail::parse_number<double>(get("gamma"), "problem field 'gamma'"),
                    detail::parse_number<double>(get("delta"), "problem field 'delta'")};
  if (n < 1) throw ParseError("problem field 'n': must be >= 1");
  if (!(nu > 1.0 && nu < 2.0)) throw ParseError("problem field 'nu': must satisfy 1 < nu < 2");
  try {
    return Problem(Grid(a, n), nu, bc);
  } catch (const DomainError& e) {
    throw ParseError(std::string("problem: ") + e.what());
  }
}

inline Problem read_problem_file(const std::string& path) {
  auto in = detail::open_input(path);
  return read_problem(in);
}

inline void write_problem(std::ostream& os, const Problem& p) {
  os << "a = " << format_real(p.grid.a) << '\n'
     << "n = " << p.n() << '\n'
     << "nu = " << format_real(p.nu.value()) << '\n'
     << "alpha = " << format_real(p.bc.alpha) << '\n'
     << "beta = " << format_real(p.bc.beta) << '\n'
     << "gamma = " << format_real(p.bc.gamma) << '\n'
     << "delta = " << format_real(p.bc.delta) << '\n';
}

/// Green table CSV: header "t\s,1,...,n", one row per t offset, then
/// "# xi=", "# omega=", "# lambda=" lines (the last two only when defined).
inline void write_green_csv(std::ostream& os, const GreenTable& g) {
  os << "t\\s";
  for (int s = 1; s <= g.n(); ++s) os << ',' << s;
  os << '\n';
  for (int t = 0; t <= g.n(); ++t) {
    os << t;
    for (int s = 1; s <= g.n(); ++s) os << ',' << format_real(g(t, s));
    os << '\n';
  }
  os << "# xi=" << format_real(g.xi()) << '\n';
  if (const auto w = g.omega()) os << "# omega=" << format_real(*w) << '\n';
  if (const auto l = g.lambda_bound()) os << "# lambda=" << format_real(*l) << '\n';
}

/// Parsed form of a Green table CSV.
struct GreenCsv {
  int n = 0;
  std::vector<std::vector<double>> rows;  // rows[t][s - 1]
  std::map<std::string, double, std::less<>> footer;
};

inline GreenCsv read_green_csv(std::istream& is) {
  GreenCsv out;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    const std::string_view s = detail::trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      const auto body = detail::trim(s.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      out.footer[std::string(detail::trim(body.substr(0, eq)))] =
          detail::parse_number<double>(body.substr(eq + 1), "green csv footer");
      continue;
    }
    std::vector<std::string_view> cells;
    std::size_t pos = 0;
    while (true) {
      const auto c = s.find(',', pos);
      cells.push_back(s.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos));
      if (c == std::string_view::npos) break;
      pos = c + 1;
    }
    if (!header) {
      if (cells.empty() || detail::trim(cells[0]) != "t\\s") throw ParseError("green csv: bad header");
      out.n = static_cast<int>(cells.size()) - 1;
      header = true;
      continue;
    }
    if (static_cast<int>(cells.size()) != out.n + 1) throw ParseError("green csv: ragged row");
    const int t = detail::parse_number<int>(cells[0], "green csv row index");
    if (t != static_cast<int>(out.rows.size())) throw ParseError("green csv: rows out of order");
    std::vector<double> row;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      row.push_back(detail::parse_number<double>(cells[i], "green csv entry"));
    }
    out.rows.push_back(std::move(row));
  }
  if (!header) throw ParseError("green csv: empty input");
  return out;
}

}  // namespace nabla
