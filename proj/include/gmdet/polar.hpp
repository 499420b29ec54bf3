#pragma once

#include <map>
#include <vector>

#include "gmdet/laurent.hpp"

namespace gmdet {

using Column = ScalarMatrix;
using ColumnSeries = LaurentSeries<Column>;

// Vector of rational functions with poles only at a fixed list of finite
// points, stored in partial-fraction form:
//   sum_i sum_k polar[i][k-1] (t - e_i)^-k + sum_j poly[j] t^j.
struct PolarVector {
  std::vector<std::vector<Column>> polar;
  std::vector<Column> poly;

  int max_order(std::size_t i) const;
  int degree() const;
  bool is_zero() const;
  void trim();

  PolarVector& operator+=(const PolarVector& o);
  PolarVector& operator-=(const PolarVector& o);
  PolarVector& operator*=(const BaseScalar& s);
  friend PolarVector operator+(PolarVector a, const PolarVector& b) { return a += b; }
  friend PolarVector operator-(PolarVector a, const PolarVector& b) { return a -= b; }
  friend PolarVector operator*(PolarVector a, const BaseScalar& s) { return a *= s; }
};

// Finite pole positions and rank shared by a family of polar vectors.  Point
// index finite_count() denotes infinity.
class PolarSpace {
 public:
  PolarSpace(std::size_t rank, std::vector<BaseScalar> points);

  std::size_t rank() const { return rank_; }
  std::size_t finite_count() const { return points_.size(); }
  std::size_t infinity_index() const { return points_.size(); }
  const std::vector<BaseScalar>& points() const { return points_; }
  Point point(std::size_t index) const;

  PolarVector zero() const;
  PolarVector pole_term(std::size_t i, int k, Column w) const;
  PolarVector poly_term(int j, Column w) const;
  Column unit(std::size_t comp) const;
  Column zero_column() const;

  ColumnSeries expand(const PolarVector& f, std::size_t index, int order) const;
  PolarVector derivative(const PolarVector& f) const;
  PolarVector derivative_param(const PolarVector& f, std::size_t var) const;
  PolarVector from_functions(const std::vector<CurveFunction>& f) const;
  std::vector<CurveFunction> to_functions(const PolarVector& f) const;

 private:
  std::size_t rank_;
  std::vector<BaseScalar> points_;
};

// A rational matrix together with cached expansions at every point of a PolarSpace.
class MatrixExpansion {
 public:
  MatrixExpansion(const FunctionMatrix& m, const PolarSpace& space) : m_(m), space_(&space) {}
  const MatrixSeries& at(std::size_t index, int order);
  const FunctionMatrix& matrix() const { return m_; }

 private:
  FunctionMatrix m_;
  const PolarSpace* space_;
  std::map<std::size_t, MatrixSeries> cache_;
};

PolarVector multiply(MatrixExpansion& m, const PolarVector& f, const PolarSpace& space);

}  // namespace gmdet
