#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/gamma.hpp"

namespace nabla {

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const {
    if (x.size() != cols_) throw DomainError("Matrix::multiply: size mismatch");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
      y[i] = acc;
    }
    return y;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

inline constexpr double kPivotThreshold = 1e-13;

/// PA = LU with partial pivoting. Factoring never fails; solve() refuses a
/// factorization with a pivot below kPivotThreshold times its row's scale.
class LuDecomposition {
 public:
  explicit LuDecomposition(Matrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    const std::size_t n = lu_.rows();
    if (lu_.cols() != n) throw DomainError("LU: matrix must be square");
    std::vector<double> scale(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      perm_[i] = i;
      for (double x : lu_.row(i)) scale[i] = std::max(scale[i], std::fabs(x));
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (std::fabs(lu_(i, k)) > std::fabs(lu_(p, k))) p = i;
      }
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
        std::swap(perm_[k], perm_[p]);
        std::swap(scale[k], scale[p]);
        parity_ = -parity_;
      }
      const double pivot = lu_(k, k);
      if (std::fabs(pivot) < kPivotThreshold * scale[k] || pivot == 0.0) {
        if (!singular_pivot_) singular_pivot_ = k;
      }
      if (pivot == 0.0) continue;
      for (std::size_t i = k + 1; i < n; ++i) {
        const double f = lu_(i, k) / pivot;
        lu_(i, k) = f;
        if (f == 0.0) continue;
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
      }
    }
  }

  [[nodiscard]] std::size_t size() const { return lu_.rows(); }
  [[nodiscard]] bool singular() const { return singular_pivot_.has_value(); }

  /// Determinant as sign and log-magnitude; exact zero when a pivot is 0.
  [[nodiscard]] SignedLog log_determinant() const {
    SignedLog d{parity_, 0.0};
    for (std::size_t k = 0; k < size(); ++k) d = d * SignedLog::from(lu_(k, k));
    return d;
  }
  [[nodiscard]] double determinant() const { return log_determinant().value(); }

  [[nodiscard]] std::vector<double> solve(std::span<const double> b) const {
    const std::size_t n = size();
    if (b.size() != n) throw DomainError("LU::solve: size mismatch");
    if (singular_pivot_) {
      throw SingularSystem("pivot " + std::to_string(*singular_pivot_) +
                           " below threshold; matrix is numerically singular");
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = b[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * x[j];
      x[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
      double acc = x[i];
      for (std::size_t j = i + 1; j < n; ++j) acc -= lu_(i, j) * x[j];
      x[i] = acc / lu_(i, i);
    }
    return x;
  }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int parity_ = 1;
  std::optional<std::size_t> singular_pivot_;
};

}  // namespace nabla
