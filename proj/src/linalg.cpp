#include "gmdet/matrix.hpp"

namespace gmdet {

ScalarMatrix scalar_identity(std::size_t n) { return ScalarMatrix::identity(n, BaseScalar(1), BaseScalar(0)); }

ScalarMatrix scalar_zero(std::size_t rows, std::size_t cols) { return ScalarMatrix(rows, cols, BaseScalar(0)); }

BaseScalar determinant(const ScalarMatrix& m0) {
  if (m0.rows() != m0.cols()) throw InternalError("determinant of a non-square matrix");
  ScalarMatrix m = m0;
  std::size_t n = m.rows();
  BaseScalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return BaseScalar(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    BaseScalar inv = m(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      BaseScalar f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::optional<ScalarMatrix> inverse(const ScalarMatrix& m0) {
  std::size_t n = m0.rows();
  if (n != m0.cols()) throw InternalError("inverse of a non-square matrix");
  ScalarMatrix aug(n, 2 * n, BaseScalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m0(i, j);
    aug(i, n + i) = BaseScalar(1);
  }
  Echelon e = row_reduce(aug);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  ScalarMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = e.rows(i, n + j);
  return r;
}

std::vector<BaseScalar> shifted_determinant(const ScalarMatrix& m) {
  // Faddeev-LeVerrier: det(xI - m) = sum c_k x^k, then det(m - xI) = (-1)^n det(xI - m).
  std::size_t n = m.rows();
  std::vector<BaseScalar> c(n + 1, BaseScalar(0));
  c[n] = BaseScalar(1);
  ScalarMatrix mk = scalar_zero(n, n);
  ScalarMatrix id = scalar_identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    ScalarMatrix t = mk + scale(id, c[n - k + 1]);
    mk = m * t;
    c[n - k] = -mk.trace() / BaseScalar(static_cast<long>(k));
  }
  if (n % 2) for (auto& x : c) x = -x;
  return c;
}

Echelon row_reduce(ScalarMatrix m) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    BaseScalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      BaseScalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rows = std::move(m);
  return e;
}

std::vector<std::vector<BaseScalar>> nullspace(const ScalarMatrix& m) {
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<BaseScalar>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<BaseScalar> v(m.cols(), BaseScalar(0));
    v[f] = BaseScalar(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

FormMatrix form_zero(std::size_t rows, std::size_t cols, std::size_t arity) {
  return FormMatrix(rows, cols, BaseOneForm::zero(arity));
}

FormMatrix d_base(const ScalarMatrix& m) {
  return m.map([](const BaseScalar& x) { return d_base(x); });
}

ScalarMatrix component(const FormMatrix& m, std::size_t j) {
  return m.map([j](const BaseOneForm& w) { return w[j]; });
}

std::string to_string(const ScalarMatrix& m, const Names& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ";";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += m(i, j).to_string(names);
    }
  }
  return out + "]";
}

}  // namespace gmdet
