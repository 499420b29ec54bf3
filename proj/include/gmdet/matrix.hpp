#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmdet/curve.hpp"
#include "gmdet/errors.hpp"

namespace gmdet {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& one, const T& zero) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<T>& data() const { return a_; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.a_.size(); ++i)
      if (a.a_[i] != b.a_[i]) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

  T trace() const {
    if (rows_ != cols_ || rows_ == 0) throw InternalError("trace of a non-square matrix");
    T s = a_[0];
    for (std::size_t i = 1; i < rows_; ++i) s += (*this)(i, i);
    return s;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("matrix shape mismatch");
  }
};

template <class A, class B>
auto operator*(const Matrix<A>& x, const Matrix<B>& y) -> Matrix<decltype(std::declval<A>() * std::declval<B>())> {
  using R = decltype(std::declval<A>() * std::declval<B>());
  if (x.cols() != y.rows() || x.cols() == 0) throw InternalError("matrix product shape mismatch");
  Matrix<R> r(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) {
      R acc = x(i, 0) * y(0, j);
      for (std::size_t k = 1; k < x.cols(); ++k)
        if (!x(i, k).is_zero()) acc += x(i, k) * y(k, j);
      r(i, j) = std::move(acc);
    }
  return r;
}

template <class T>
Matrix<T> scale(const Matrix<T>& m, const BaseScalar& s) {
  return m.map([&](const T& x) { return x * s; });
}

template <class T>
Matrix<T> operator*(const Matrix<T>& m, const BaseScalar& s) {
  return scale(m, s);
}

using ScalarMatrix = Matrix<BaseScalar>;
using FormMatrix = Matrix<BaseOneForm>;
using FunctionMatrix = Matrix<CurveFunction>;

ScalarMatrix scalar_identity(std::size_t n);
ScalarMatrix scalar_zero(std::size_t rows, std::size_t cols);
BaseScalar determinant(const ScalarMatrix& m);
std::optional<ScalarMatrix> inverse(const ScalarMatrix& m);
// Characteristic-style polynomial det(m - x I) coefficients, constant term first.
std::vector<BaseScalar> shifted_determinant(const ScalarMatrix& m);

// Row echelon data for a linear system over K.
struct Echelon {
  ScalarMatrix rows;                // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};
Echelon row_reduce(ScalarMatrix m);
// Basis of {x : m x = 0}.
std::vector<std::vector<BaseScalar>> nullspace(const ScalarMatrix& m);

FormMatrix form_zero(std::size_t rows, std::size_t cols, std::size_t arity);
FormMatrix d_base(const ScalarMatrix& m);
ScalarMatrix component(const FormMatrix& m, std::size_t j);

std::string to_string(const ScalarMatrix& m, const Names& names);

}  // namespace gmdet
