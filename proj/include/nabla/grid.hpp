#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nabla/error.hpp"

namespace nabla {

/// The lattice {a, a+1, ..., a+n}. Points are addressed by integer offset k,
/// t = a + k; the base value a is carried for display only.
struct Grid {
  double a = 0.0;
  int n = 1;

  Grid() = default;
  Grid(double base, int span) : a(base), n(span) {
    if (span < 1) throw DomainError("Grid: span n must be >= 1");
    if (!std::isfinite(base)) throw DomainError("Grid: base a must be finite");
  }

  [[nodiscard]] double point(int offset) const { return a + offset; }
  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Real values on the contiguous offsets start..n of a grid.
class GridFunction {
 public:
  GridFunction(Grid grid, int start, std::vector<double> values)
      : grid_(grid), start_(start), values_(std::move(values)) {
    if (start_ < 0 || start_ > grid_.n) {
      throw DomainError("GridFunction: start offset outside grid");
    }
    if (static_cast<int>(values_.size()) != grid_.n - start_ + 1) {
      throw DomainError("GridFunction: expected " + std::to_string(grid_.n - start_ + 1) +
                        " values, got " + std::to_string(values_.size()));
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw DomainError("GridFunction: non-finite value");
    }
  }

  /// Samples f(k) on offsets start..n.
  template <class F>
  static GridFunction tabulate(Grid grid, int start, F&& f) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(grid.n - start + 1));
    for (int k = start; k <= grid.n; ++k) v.push_back(f(k));
    return GridFunction(grid, start, std::move(v));
  }

  static GridFunction constant(Grid grid, int start, double c) {
    return tabulate(grid, start, [c](int) { return c; });
  }

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] int start() const { return start_; }
  [[nodiscard]] int end() const { return grid_.n; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] bool contains(int offset) const { return offset >= start_ && offset <= grid_.n; }

  [[nodiscard]] double at(int offset) const {
    if (!contains(offset)) {
      throw DomainError("GridFunction: offset " + std::to_string(offset) + " outside [" +
                        std::to_string(start_) + ", " + std::to_string(grid_.n) + "]");
    }
    return values_[static_cast<std::size_t>(offset - start_)];
  }
  [[nodiscard]] double operator[](int offset) const { return at(offset); }

  [[nodiscard]] std::span<const double> values() const { return values_; }

  /// Restriction to offsets new_start..n.
  [[nodiscard]] GridFunction tail(int new_start) const {
    if (new_start < start_) throw DomainError("GridFunction: cannot extend domain by restriction");
    return GridFunction(grid_, new_start,
                        std::vector<double>(values_.begin() + (new_start - start_), values_.end()));
  }

  [[nodiscard]] double sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
  }

  friend GridFunction operator+(const GridFunction& x, const GridFunction& y) {
    return combine(x, y, 1.0);
  }
  friend GridFunction operator-(const GridFunction& x, const GridFunction& y) {
    return combine(x, y, -1.0);
  }
  friend GridFunction operator*(double c, const GridFunction& x) {
    std::vector<double> v(x.values_);
    for (double& e : v) e *= c;
    return GridFunction(x.grid_, x.start_, std::move(v));
  }

 private:
  static GridFunction combine(const GridFunction& x, const GridFunction& y, double c) {
    if (!(x.grid_ == y.grid_) || x.start_ != y.start_) {
      throw DomainError("GridFunction: operands live on different domains");
    }
    std::vector<double> v(x.values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * y.values_[i];
    return GridFunction(x.grid_, x.start_, std::move(v));
  }

  Grid grid_;
  int start_ = 0;
  std::vector<double> values_;
};

}  // namespace nabla
