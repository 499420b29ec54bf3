#include "gmdet/polar.hpp"

namespace gmdet {

namespace {

BaseScalar binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return BaseScalar(Rational(b));
}

bool column_zero(const Column& c) { return c.is_zero(); }

}  // namespace

int PolarVector::max_order(std::size_t i) const {
  if (i >= polar.size()) return 0;
  for (int k = static_cast<int>(polar[i].size()); k >= 1; --k)
    if (!column_zero(polar[i][k - 1])) return k;
  return 0;
}

int PolarVector::degree() const {
  for (int j = static_cast<int>(poly.size()) - 1; j >= 0; --j)
    if (!column_zero(poly[j])) return j;
  return -1;
}

bool PolarVector::is_zero() const {
  for (std::size_t i = 0; i < polar.size(); ++i)
    if (max_order(i) > 0) return false;
  return degree() < 0;
}

void PolarVector::trim() {
  for (std::size_t i = 0; i < polar.size(); ++i) polar[i].resize(max_order(i));
  poly.resize(degree() + 1);
}

PolarVector& PolarVector::operator+=(const PolarVector& o) {
  if (polar.size() < o.polar.size()) polar.resize(o.polar.size());
  for (std::size_t i = 0; i < o.polar.size(); ++i) {
    if (polar[i].size() < o.polar[i].size()) {
      std::size_t r = o.polar[i].front().rows();
      polar[i].resize(o.polar[i].size(), scalar_zero(r, 1));
    }
    for (std::size_t k = 0; k < o.polar[i].size(); ++k) polar[i][k] += o.polar[i][k];
  }
  if (poly.size() < o.poly.size()) poly.resize(o.poly.size(), scalar_zero(o.poly.front().rows(), 1));
  for (std::size_t j = 0; j < o.poly.size(); ++j) poly[j] += o.poly[j];
  trim();
  return *this;
}

PolarVector& PolarVector::operator-=(const PolarVector& o) {
  PolarVector n = o;
  n *= BaseScalar(-1);
  return *this += n;
}

PolarVector& PolarVector::operator*=(const BaseScalar& s) {
  for (auto& v : polar)
    for (auto& c : v) c = scale(c, s);
  for (auto& c : poly) c = scale(c, s);
  trim();
  return *this;
}

PolarSpace::PolarSpace(std::size_t rank, std::vector<BaseScalar> points) : rank_(rank), points_(std::move(points)) {}

Point PolarSpace::point(std::size_t index) const {
  return index == points_.size() ? Point::at_infinity() : Point::finite(points_.at(index));
}

PolarVector PolarSpace::zero() const {
  PolarVector v;
  v.polar.resize(points_.size());
  return v;
}

Column PolarSpace::zero_column() const { return scalar_zero(rank_, 1); }

Column PolarSpace::unit(std::size_t comp) const {
  Column c = zero_column();
  c(comp, 0) = BaseScalar(1);
  return c;
}

PolarVector PolarSpace::pole_term(std::size_t i, int k, Column w) const {
  PolarVector v = zero();
  v.polar[i].assign(k, zero_column());
  v.polar[i][k - 1] = std::move(w);
  v.trim();
  return v;
}

PolarVector PolarSpace::poly_term(int j, Column w) const {
  PolarVector v = zero();
  v.poly.assign(j + 1, zero_column());
  v.poly[j] = std::move(w);
  v.trim();
  return v;
}

ColumnSeries PolarSpace::expand(const PolarVector& f, std::size_t index, int order) const {
  Point p = point(index);
  int low;
  if (index == infinity_index()) low = std::min(-f.degree(), 1);
  else low = std::min(-f.max_order(index), 0);
  if (low > order) return ColumnSeries(p, order + 1, {}, order, zero_column());
  std::vector<Column> c(order - low + 1, zero_column());
  auto at = [&](int n) -> Column& { return c[n - low]; };
  if (index == infinity_index()) {
    for (int d = 0; d <= f.degree(); ++d)
      if (-d <= order) at(-d) += f.poly[d];
    for (std::size_t j = 0; j < f.polar.size(); ++j) {
      const BaseScalar& e = points_[j];
      for (int k = 1; k <= f.max_order(j); ++k) {
        const Column& w = f.polar[j][k - 1];
        if (w.is_zero()) continue;
        BaseScalar epow(1);
        for (int n = 0; k + n <= order; ++n) {
          at(k + n) += scale(w, binomial(k + n - 1, n) * epow);
          epow *= e;
        }
      }
    }
  } else {
    const BaseScalar& ei = points_[index];
    for (int k = std::max(1, -order); k <= f.max_order(index); ++k) at(-k) += f.polar[index][k - 1];
    for (std::size_t j = 0; j < f.polar.size(); ++j) {
      if (j == index || f.max_order(j) == 0 || order < 0) continue;
      BaseScalar dinv = (ei - points_[j]).inverse();
      for (int k = 1; k <= f.max_order(j); ++k) {
        const Column& w = f.polar[j][k - 1];
        if (w.is_zero()) continue;
        BaseScalar pw = dinv.pow(k);
        for (int n = 0; n <= order; ++n) {
          BaseScalar b = binomial(k + n - 1, n) * pw;
          if (n % 2) b = -b;
          at(n) += scale(w, b);
          pw *= dinv;
        }
      }
    }
    for (int d = 0; d <= f.degree(); ++d) {
      const Column& w = f.poly[d];
      if (w.is_zero()) continue;
      for (int n = 0; n <= std::min(d, order); ++n) at(n) += scale(w, binomial(d, n) * ei.pow(d - n));
    }
  }
  return ColumnSeries(p, low, std::move(c), order, zero_column());
}

PolarVector PolarSpace::derivative(const PolarVector& f) const {
  PolarVector d = zero();
  for (std::size_t i = 0; i < f.polar.size(); ++i) {
    int K = f.max_order(i);
    if (K == 0) continue;
    d.polar[i].assign(K + 1, zero_column());
    for (int k = 1; k <= K; ++k) d.polar[i][k] = scale(f.polar[i][k - 1], BaseScalar(-k));
  }
  for (int j = 1; j <= f.degree(); ++j) {
    if (d.poly.empty()) d.poly.assign(f.degree(), zero_column());
    d.poly[j - 1] = scale(f.poly[j], BaseScalar(j));
  }
  d.trim();
  return d;
}

PolarVector PolarSpace::derivative_param(const PolarVector& f, std::size_t var) const {
  auto dcol = [var](const Column& c) { return c.map([var](const BaseScalar& x) { return x.derivative(var); }); };
  PolarVector d = zero();
  for (std::size_t i = 0; i < f.polar.size(); ++i) {
    int K = f.max_order(i);
    if (K == 0) continue;
    BaseScalar de = points_[i].derivative(var);
    d.polar[i].assign(K + 1, zero_column());
    for (int k = 1; k <= K; ++k) {
      d.polar[i][k - 1] += dcol(f.polar[i][k - 1]);
      if (!de.is_zero()) d.polar[i][k] += scale(f.polar[i][k - 1], de * BaseScalar(k));
    }
  }
  for (int j = 0; j <= f.degree(); ++j) {
    if (d.poly.empty()) d.poly.assign(f.degree() + 1, zero_column());
    d.poly[j] = dcol(f.poly[j]);
  }
  d.trim();
  return d;
}

PolarVector PolarSpace::from_functions(const std::vector<CurveFunction>& f) const {
  if (f.size() != rank_) throw InternalError("from_functions: wrong vector length");
  PolarVector v = zero();
  CurvePolynomial rest_check(1);
  for (std::size_t c = 0; c < rank_; ++c) {
    CurvePolynomial den = f[c].den();
    for (const auto& e : points_) {
      CurvePolynomial lin = CurvePolynomial::linear_factor(e);
      while (den.degree() > 0) {
        auto [q, r] = den.divmod(lin);
        if (!r.is_zero()) break;
        den = q;
      }
    }
    if (den.degree() > 0) throw InputError("form has poles outside the divisor");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    Point p = Point::finite(points_[i]);
    for (std::size_t c = 0; c < rank_; ++c) {
      if (f[c].is_zero()) continue;
      ScalarSeries s = laurent_expand(f[c], p, -1);
      for (int k = 1; k <= -s.valuation(); ++k) {
        if (v.polar[i].size() < static_cast<std::size_t>(k)) v.polar[i].resize(k, zero_column());
        v.polar[i][k - 1](c, 0) = s.coeff(-k);
      }
    }
  }
  for (std::size_t c = 0; c < rank_; ++c) {
    if (f[c].is_zero()) continue;
    ScalarSeries s = laurent_expand(f[c], Point::at_infinity(), 0);
    for (int j = 0; j <= -s.valuation(); ++j) {
      if (v.poly.size() < static_cast<std::size_t>(j + 1)) v.poly.resize(j + 1, zero_column());
      v.poly[j](c, 0) = s.coeff(-j);
    }
  }
  v.trim();
  return v;
}

std::vector<CurveFunction> PolarSpace::to_functions(const PolarVector& f) const {
  std::vector<CurveFunction> out(rank_, CurveFunction());
  for (std::size_t i = 0; i < f.polar.size(); ++i) {
    CurvePolynomial lin = CurvePolynomial::linear_factor(points_[i]);
    for (int k = 1; k <= f.max_order(i); ++k)
      for (std::size_t c = 0; c < rank_; ++c) {
        const BaseScalar& x = f.polar[i][k - 1](c, 0);
        if (!x.is_zero()) out[c] += CurveFunction(CurvePolynomial(x), lin.pow(k));
      }
  }
  for (int j = 0; j <= f.degree(); ++j)
    for (std::size_t c = 0; c < rank_; ++c) {
      const BaseScalar& x = f.poly[j](c, 0);
      if (!x.is_zero()) out[c] += CurveFunction(CurvePolynomial::t().pow(j) * x);
    }
  return out;
}

const MatrixSeries& MatrixExpansion::at(std::size_t index, int order) {
  auto it = cache_.find(index);
  if (it != cache_.end() && it->second.truncation() >= order) return it->second;
  int target = order;
  if (it != cache_.end()) target = std::max(order, it->second.truncation() + 4);
  MatrixSeries s = laurent_expand(m_, space_->point(index), target);
  return cache_[index] = std::move(s);
}

PolarVector multiply(MatrixExpansion& m, const PolarVector& f, const PolarSpace& space) {
  PolarVector out = space.zero();
  if (f.is_zero()) return out;
  for (std::size_t i = 0; i < space.finite_count(); ++i) {
    int K = f.max_order(i);
    const MatrixSeries& ms = m.at(i, -1 + K);
    if (ms.is_zero() && ms.truncation() >= -1 + K) continue;
    int vm = ms.valuation();
    ColumnSeries fs = space.expand(f, i, -1 - vm);
    ColumnSeries prod = ms * fs;
    if (prod.truncation() < -1) throw InternalError("multiply: insufficient precision");
    for (int k = 1; k <= -prod.valuation(); ++k) {
      if (out.polar[i].size() < static_cast<std::size_t>(k)) out.polar[i].resize(k, space.zero_column());
      out.polar[i][k - 1] = prod.coeff(-k);
    }
  }
  std::size_t inf = space.infinity_index();
  int d = f.degree();
  int vf = d >= 0 ? -d : 1;
  const MatrixSeries& ms = m.at(inf, -vf);
  if (!(ms.is_zero() && ms.truncation() >= -vf)) {
    ColumnSeries fs = space.expand(f, inf, -ms.valuation());
    ColumnSeries prod = ms * fs;
    if (prod.truncation() < 0) throw InternalError("multiply: insufficient precision at infinity");
    for (int j = 0; j <= -prod.valuation(); ++j) {
      if (out.poly.size() < static_cast<std::size_t>(j + 1)) out.poly.resize(j + 1, space.zero_column());
      out.poly[j] = prod.coeff(-j);
    }
  }
  out.trim();
  return out;
}

}  // namespace gmdet
