#pragma once

// Small dense complex matrices: LU with partial pivoting, determinants in
// scaled (mantissa, exponent) form, and linear solves.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "gaudin/errors.hpp"

namespace gaudin {

using cplx = std::complex<double>;

/// Row-major square-or-rectangular complex matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const cplx> data() const noexcept { return data_; }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator*(cplx s, Matrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// det = mantissa · 2^exponent, with |mantissa| in [0.5, 1) unless zero.
struct ScaledDeterminant {
  cplx mantissa{0.0};
  int exponent = 0;

  cplx value() const { return mantissa * std::ldexp(1.0, exponent); }
  bool is_zero() const noexcept { return mantissa == cplx{}; }

  /// log2 |det|; −inf for a zero determinant.
  double log2_abs() const {
    return is_zero() ? -std::numeric_limits<double>::infinity()
                     : std::log2(std::abs(mantissa)) + exponent;
  }
};

/// Packed LU factors of a square matrix, PA = LU with unit-diagonal L.
class LuDecomposition {
 public:
  explicit LuDecomposition(Matrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    if (lu_.rows() != lu_.cols()) throw InvalidArgument("LU requires a square matrix");
    const std::size_t n = lu_.rows();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t pivot = k;
      double best = std::abs(lu_(k, k));
      for (std::size_t i = k + 1; i < n; ++i) {
        const double v = std::abs(lu_(i, k));
        if (v > best) {
          best = v;
          pivot = i;
        }
      }
      if (pivot != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(pivot, j));
        std::swap(perm_[k], perm_[pivot]);
        sign_ = -sign_;
      }
      if (best == 0.0) {
        singular_ = true;
        continue;
      }
      const cplx inv = 1.0 / lu_(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        const cplx factor = lu_(i, k) * inv;
        lu_(i, k) = factor;
        if (factor == cplx{}) continue;
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
      }
    }
  }

  bool singular() const noexcept { return singular_; }

  ScaledDeterminant determinant() const {
    if (singular_) return {};
    ScaledDeterminant det{cplx{static_cast<double>(sign_)}, 0};
    for (std::size_t i = 0; i < lu_.rows(); ++i) {
      det.mantissa *= lu_(i, i);
      int e = 0;
      const double mag = std::frexp(std::abs(det.mantissa), &e);
      if (mag == 0.0) return {};
      det.mantissa *= std::ldexp(1.0, -e);
      det.exponent += e;
    }
    return det;
  }

  /// Solves A x = b.
  std::vector<cplx> solve(std::span<const cplx> b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) throw InvalidArgument("right-hand side has the wrong length");
    if (singular_) throw SingularJacobian("matrix is exactly singular");
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = b[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      cplx s = x[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
      x[i] = s / lu_(i, i);
    }
    return x;
  }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  bool singular_ = false;
};

inline ScaledDeterminant scaled_determinant(const Matrix& a) {
  return LuDecomposition(a).determinant();
}

inline cplx determinant(const Matrix& a) { return scaled_determinant(a).value(); }

}  // namespace gaudin
