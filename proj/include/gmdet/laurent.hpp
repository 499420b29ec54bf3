#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gmdet/matrix.hpp"

namespace gmdet {

// A point of P^1 over K: either t = value or t = infinity.
struct Point {
  bool infinity = false;
  BaseScalar value;

  static Point finite(BaseScalar e) { return Point{false, std::move(e)}; }
  static Point at_infinity() { return Point{true, BaseScalar(0)}; }
  bool operator==(const Point& o) const { return infinity == o.infinity && (infinity || value == o.value); }
  std::string to_string(const Names& names) const { return infinity ? "inf" : value.to_string(names); }
};

// Truncated Laurent series sum_{n=v}^{N} c_n z^n + O(z^(N+1)) in the local
// coordinate at a point (z = t - e, or z = 1/t at infinity).  The valuation is
// exact: leading zero coefficients are stripped, and a series that vanishes
// through its window reports valuation N + 1.
template <class C>
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(Point p, int low, std::vector<C> coeffs, int truncation, C zero)
      : point_(std::move(p)), low_(low), c_(std::move(coeffs)), trunc_(truncation), zero_(std::move(zero)) {
    if (static_cast<int>(c_.size()) > trunc_ - low_ + 1) c_.resize(std::max(0, trunc_ - low_ + 1), zero_);
    std::size_t k = 0;
    while (k < c_.size() && c_[k].is_zero()) ++k;
    if (k == c_.size()) {
      c_.clear();
      low_ = trunc_ + 1;
    } else if (k > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(k));
      low_ += static_cast<int>(k);
    }
  }

  static LaurentSeries monomial(Point p, int n, C c, int truncation, C zero) {
    return LaurentSeries(std::move(p), n, std::vector<C>{std::move(c)}, std::max(n, truncation), std::move(zero));
  }

  const Point& point() const { return point_; }
  int valuation() const { return low_; }
  int truncation() const { return trunc_; }
  bool is_zero() const { return c_.empty(); }
  const C& zero() const { return zero_; }

  const C& coeff(int n) const {
    if (n > trunc_) throw TruncationError("Laurent window too small: coefficient of z^" + std::to_string(n) +
                                          " requested, series known through z^" + std::to_string(trunc_));
    if (n < low_ || n - low_ >= static_cast<int>(c_.size())) return zero_;
    return c_[n - low_];
  }
  const C& leading() const {
    if (c_.empty()) throw TruncationError("leading coefficient of a series that vanishes through its window");
    return c_.front();
  }

  LaurentSeries truncated(int n) const {
    if (n > trunc_) coeff(n);
    return LaurentSeries(point_, low_, c_, n, zero_);
  }

  // Multiplication by z^k.
  LaurentSeries shifted(int k) const { return LaurentSeries(point_, low_ + k, c_, trunc_ + k, zero_); }

  LaurentSeries derivative() const {
    std::vector<C> d;
    for (int n = low_; n <= trunc_; ++n) d.push_back(coeff(n) * BaseScalar(static_cast<long>(n)));
    return LaurentSeries(point_, low_ - 1, std::move(d), trunc_ - 1, zero_);
  }

  template <class F>
  auto map(F f, decltype(f(std::declval<const C&>())) zero) const
      -> LaurentSeries<decltype(f(std::declval<const C&>()))> {
    using R = decltype(f(std::declval<const C&>()));
    std::vector<R> d;
    for (const auto& x : c_) d.push_back(f(x));
    return LaurentSeries<R>(point_, low_, std::move(d), trunc_, std::move(zero));
  }

  LaurentSeries operator-() const {
    std::vector<C> d;
    for (const auto& x : c_) d.push_back(-x);
    return LaurentSeries(point_, low_, std::move(d), trunc_, zero_);
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    int n = std::min(a.trunc_, b.trunc_);
    int low = std::min(a.low_, b.low_);
    std::vector<C> d;
    for (int k = low; k <= n; ++k) d.push_back(a.coeff(k) + b.coeff(k));
    return LaurentSeries(a.point_, low, std::move(d), n, a.zero_);
  }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

  // Coefficients strictly below z^0, as a map exponent -> coefficient.
  std::vector<std::pair<int, C>> principal_part() const {
    std::vector<std::pair<int, C>> out;
    for (int n = low_; n < 0; ++n)
      if (!coeff(n).is_zero()) out.emplace_back(n, coeff(n));
    return out;
  }

 private:
  Point point_;
  int low_ = 0;
  std::vector<C> c_;
  int trunc_ = 0;
  C zero_;
};

template <class A, class B>
auto operator*(const LaurentSeries<A>& a, const LaurentSeries<B>& b)
    -> LaurentSeries<decltype(std::declval<A>() * std::declval<B>())> {
  using R = decltype(std::declval<A>() * std::declval<B>());
  R zero = a.zero() * b.zero();
  int va = a.valuation(), vb = b.valuation();
  int n = std::min(a.truncation() + vb, b.truncation() + va);
  std::vector<R> c;
  for (int k = va + vb; k <= n; ++k) {
    R acc = zero;
    for (int i = va; i <= k - vb; ++i)
      if (!a.coeff(i).is_zero()) acc += a.coeff(i) * b.coeff(k - i);
    c.push_back(std::move(acc));
  }
  return LaurentSeries<R>(a.point(), va + vb, std::move(c), n, std::move(zero));
}

using ScalarSeries = LaurentSeries<BaseScalar>;
using FormSeries = LaurentSeries<BaseOneForm>;
using MatrixSeries = LaurentSeries<ScalarMatrix>;
using FormMatrixSeries = LaurentSeries<FormMatrix>;

ScalarSeries inverse(const ScalarSeries& s);
MatrixSeries inverse(const MatrixSeries& s);
MatrixSeries scalar_times(const ScalarSeries& s, const MatrixSeries& m);
FormSeries d_base(const ScalarSeries& s);
FormMatrixSeries d_base(const MatrixSeries& s);
ScalarSeries trace(const MatrixSeries& s);
FormSeries trace(const FormMatrixSeries& s);

// Series of f at p, valid through z^order (or through the valuation when that is larger).
ScalarSeries laurent_expand(const CurveFunction& f, const Point& p, int order);
MatrixSeries laurent_expand(const FunctionMatrix& m, const Point& p, int order);
int valuation(const CurveFunction& f, const Point& p);

// Residue of f dt at p.
BaseScalar residue(const CurveFunction& f, const Point& p);
ScalarMatrix residue(const FunctionMatrix& m, const Point& p);
// Residue of sum_j f_j da_j dt at p, with the da_j carried along linearly.
BaseOneForm residue(const std::vector<CurveFunction>& f, const Point& p);

// Sum of residues of f dt over the given finite points, any remaining finite
// poles (handled through a trace when their denominator is squarefree) and
// infinity.  Zero for every rational function by the residue theorem.
BaseScalar residue_sum(const CurveFunction& f, const std::vector<BaseScalar>& points);

template <class C>
std::string series_to_string(const LaurentSeries<C>& s, const Names& names, const std::string& var = "z") {
  std::string out;
  for (int n = s.valuation(); n <= s.truncation(); ++n) {
    const C& c = s.coeff(n);
    if (c.is_zero()) continue;
    if (!out.empty()) out += "+";
    out += "(" + c.to_string(names) + ")";
    if (n != 0) out += "*" + var + "^" + (n < 0 ? "(" + std::to_string(n) + ")" : std::to_string(n));
  }
  if (!out.empty()) out += "+";
  return out + "O(" + var + "^(" + std::to_string(s.truncation() + 1) + "))";
}

}  // namespace gmdet
