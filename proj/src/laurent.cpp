#include "gmdet/laurent.hpp"

namespace gmdet {

namespace {

// Power series quotient n/d where both start at their lowest nonzero index.
std::vector<BaseScalar> series_quotient(const std::vector<BaseScalar>& n, const std::vector<BaseScalar>& d, int terms) {
  std::vector<BaseScalar> q;
  BaseScalar inv = d.at(0).inverse();
  for (int i = 0; i < terms; ++i) {
    BaseScalar acc = i < static_cast<int>(n.size()) ? n[i] : BaseScalar(0);
    for (int j = 1; j <= i && j < static_cast<int>(d.size()); ++j)
      if (!d[j].is_zero()) acc -= d[j] * q[i - j];
    q.push_back(acc * inv);
  }
  return q;
}

std::vector<BaseScalar> local_coeffs(const CurvePolynomial& p, const Point& pt, int& low) {
  std::vector<BaseScalar> c;
  if (pt.infinity) {
    int d = p.degree();
    for (int i = d; i >= 0; --i) c.push_back(p.coeff(i));
    low = -d;
  } else {
    c = p.taylor_shift(pt.value).coeffs();
    low = 0;
  }
  std::size_t k = 0;
  while (k < c.size() && c[k].is_zero()) ++k;
  c.erase(c.begin(), c.begin() + static_cast<long>(k));
  low += static_cast<int>(k);
  return c;
}

}  // namespace

int valuation(const CurveFunction& f, const Point& p) {
  return p.infinity ? f.valuation_at_infinity() : f.valuation_at(p.value);
}

ScalarSeries laurent_expand(const CurveFunction& f, const Point& p, int order) {
  if (f.is_zero()) return ScalarSeries(p, order + 1, {}, order, BaseScalar(0));
  int ln = 0, ld = 0;
  auto n = local_coeffs(f.num(), p, ln);
  auto d = local_coeffs(f.den(), p, ld);
  int v = ln - ld;
  int top = std::max(order, v);
  auto q = series_quotient(n, d, top - v + 1);
  return ScalarSeries(p, v, std::move(q), top, BaseScalar(0));
}

MatrixSeries laurent_expand(const FunctionMatrix& m, const Point& p, int order) {
  std::size_t r = m.rows(), c = m.cols();
  std::vector<ScalarSeries> entries;
  int low = order + 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      entries.push_back(laurent_expand(m(i, j), p, order));
      if (!entries.back().is_zero()) low = std::min(low, entries.back().valuation());
    }
  std::vector<ScalarMatrix> coeffs;
  for (int n = low; n <= order; ++n) {
    ScalarMatrix x = scalar_zero(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) x(i, j) = entries[i * c + j].coeff(n);
    coeffs.push_back(std::move(x));
  }
  return MatrixSeries(p, low, std::move(coeffs), order, scalar_zero(r, c));
}

ScalarSeries inverse(const ScalarSeries& s) {
  int v = s.valuation();
  int rel = s.truncation() - v;
  std::vector<BaseScalar> c;
  BaseScalar inv = s.leading().inverse();
  for (int i = 0; i <= rel; ++i) {
    BaseScalar acc = i == 0 ? BaseScalar(1) : BaseScalar(0);
    for (int j = 1; j <= i; ++j)
      if (!s.coeff(v + j).is_zero()) acc -= s.coeff(v + j) * c[i - j];
    c.push_back(acc * inv);
  }
  return ScalarSeries(s.point(), -v, std::move(c), -v + rel, BaseScalar(0));
}

MatrixSeries inverse(const MatrixSeries& s) {
  int v = s.valuation();
  int rel = s.truncation() - v;
  auto inv0 = inverse(s.leading());
  if (!inv0) throw PreconditionError("leading coefficient of a matrix series is singular");
  std::size_t n = s.zero().rows();
  std::vector<ScalarMatrix> r;
  for (int i = 0; i <= rel; ++i) {
    ScalarMatrix acc = i == 0 ? scalar_identity(n) : scalar_zero(n, n);
    for (int j = 1; j <= i; ++j)
      if (!s.coeff(v + j).is_zero()) acc -= r[i - j] * s.coeff(v + j);
    r.push_back(acc * *inv0);
  }
  return MatrixSeries(s.point(), -v, std::move(r), -v + rel, scalar_zero(n, n));
}

MatrixSeries scalar_times(const ScalarSeries& s, const MatrixSeries& m) {
  std::size_t r = m.zero().rows(), c = m.zero().cols();
  MatrixSeries sm = s.map([&](const BaseScalar& x) { return scale(scalar_identity(r), x); }, scalar_zero(r, r));
  (void)c;
  return sm * m;
}

FormSeries d_base(const ScalarSeries& s) {
  return s.map([](const BaseScalar& x) { return d_base(x); }, BaseOneForm());
}

FormMatrixSeries d_base(const MatrixSeries& s) {
  std::size_t r = s.zero().rows(), c = s.zero().cols();
  return s.map([](const ScalarMatrix& x) { return d_base(x); }, FormMatrix(r, c));
}

ScalarSeries trace(const MatrixSeries& s) {
  return s.map([](const ScalarMatrix& x) { return x.trace(); }, BaseScalar(0));
}

FormSeries trace(const FormMatrixSeries& s) {
  return s.map([](const FormMatrix& x) { return x.trace(); }, BaseOneForm());
}

BaseScalar residue(const CurveFunction& f, const Point& p) {
  if (p.infinity) return -laurent_expand(f, p, 1).coeff(1);
  return laurent_expand(f, p, -1).coeff(-1);
}

ScalarMatrix residue(const FunctionMatrix& m, const Point& p) {
  return m.map([&](const CurveFunction& f) { return residue(f, p); });
}

BaseOneForm residue(const std::vector<CurveFunction>& f, const Point& p) {
  std::vector<BaseScalar> c;
  for (const auto& x : f) c.push_back(residue(x, p));
  return BaseOneForm(std::move(c));
}

BaseScalar residue_sum(const CurveFunction& f, const std::vector<BaseScalar>& points) {
  BaseScalar total = residue(f, Point::at_infinity());
  CurvePolynomial rest = f.den();
  for (const auto& e : points) {
    total += residue(f, Point::finite(e));
    CurvePolynomial lin = CurvePolynomial::linear_factor(e);
    while (rest.degree() > 0) {
      auto [q, r] = rest.divmod(lin);
      if (!r.is_zero()) break;
      rest = q;
    }
  }
  if (rest.degree() <= 0) return total;
  // Remaining poles at the roots of `rest`: sum of residues is the trace of
  // num / (other * rest') over K[t]/(rest) when rest is squarefree.
  if (gcd(rest, rest.derivative()).degree() > 0)
    throw InputError("residue sum: undeclared poles with a non-squarefree denominator");
  CurvePolynomial other = f.den().divmod(rest).first;
  auto inv = inverse_mod(other * rest.derivative(), rest);
  if (!inv) throw InternalError("residue sum: declared and undeclared poles overlap");
  CurvePolynomial psi = (f.num() * *inv).divmod(rest.monic()).second;
  CurvePolynomial h = rest.monic();
  int d = h.degree();
  std::vector<BaseScalar> newton(d, BaseScalar(0));
  newton[0] = BaseScalar(static_cast<long>(d));
  for (int L = 1; L < d; ++L) {
    BaseScalar acc(0);
    for (int i = 1; i < L; ++i) acc += h.coeff(d - i) * newton[L - i];
    acc += h.coeff(d - L) * BaseScalar(static_cast<long>(L));
    newton[L] = -acc;
  }
  for (int i = 0; i <= psi.degree(); ++i) total += psi.coeff(i) * newton[i];
  return total;
}

}  // namespace gmdet
