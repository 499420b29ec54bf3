#include "gmdet/random.hpp"

namespace gmdet::gen {

long Rng::integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }

Rational Rng::rational(long num_bound, long den_bound) {
  Rational q(integer(-num_bound, num_bound), integer(1, den_bound));
  q.canonicalize();
  return q;
}

Rational Rng::nonzero_rational(long num_bound, long den_bound) {
  for (;;) {
    Rational q = rational(num_bound, den_bound);
    if (sgn(q) != 0) return q;
  }
}

BaseScalar polynomial_scalar(Rng& rng, std::size_t arity, int max_degree, int max_terms) {
  BasePolynomial p(arity);
  int terms = static_cast<int>(rng.integer(1, max_terms));
  for (int k = 0; k < terms; ++k) {
    Exponents e(arity, 0);
    int budget = static_cast<int>(rng.integer(0, max_degree));
    for (int b = 0; b < budget && arity > 0; ++b) ++e[static_cast<std::size_t>(rng.integer(0, static_cast<long>(arity) - 1))];
    p += BasePolynomial::monomial(e, rng.nonzero_rational(5, 3));
  }
  return BaseScalar(p);
}

BaseScalar scalar(Rng& rng, std::size_t arity) {
  BaseScalar n = polynomial_scalar(rng, arity, 2, 3);
  if (rng.coin()) return n;
  BaseScalar d = polynomial_scalar(rng, arity, 1, 2);
  if (d.is_zero()) return n;
  return n / d;
}

CurvePolynomial curve_polynomial(Rng& rng, std::size_t arity, int degree) {
  std::vector<BaseScalar> c;
  for (int i = 0; i <= degree; ++i) c.push_back(polynomial_scalar(rng, arity, 1, 2));
  while (c.back().is_zero()) c.back() = BaseScalar(rng.nonzero_rational(4, 2), arity);
  return CurvePolynomial(c);
}

CurveFunction curve_function(Rng& rng, std::size_t arity, const std::vector<BaseScalar>& poles, int max_order,
                             int max_degree) {
  CurveFunction f(curve_polynomial(rng, arity, static_cast<int>(rng.integer(0, max_degree))));
  for (const auto& e : poles) {
    int k = static_cast<int>(rng.integer(1, max_order));
    for (int j = 1; j <= k; ++j) {
      BaseScalar c = polynomial_scalar(rng, arity, 1, 2);
      f += CurveFunction(CurvePolynomial(c), CurvePolynomial::linear_factor(e).pow(static_cast<unsigned>(j)));
    }
  }
  return f.reduced();
}

ScalarMatrix rational_matrix(Rng& rng, std::size_t n, bool invertible) {
  for (;;) {
    ScalarMatrix m(n, n, BaseScalar(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = BaseScalar(rng.rational(5, 3));
    if (!invertible || !determinant(m).is_zero()) return m;
  }
}

BaseOneForm one_form(Rng& rng, std::size_t arity) {
  std::vector<BaseScalar> c;
  for (std::size_t j = 0; j < arity; ++j) c.push_back(polynomial_scalar(rng, arity, 2, 2));
  return BaseOneForm(c);
}

Connection exponential(const CurvePolynomial& f, std::size_t arity, const Names& names) {
  FunctionMatrix at(1, 1, CurveFunction(f.derivative()));
  std::vector<FunctionMatrix> par;
  for (std::size_t j = 0; j < arity; ++j) par.emplace_back(1, 1, CurveFunction(f.derivative_param(j)));
  return make_connection(1, arity, {}, at, par, names);
}

CurvePolynomial generic_potential(std::size_t d) {
  std::vector<BaseScalar> c(1, BaseScalar(Rational(0), d));
  for (std::size_t i = 0; i < d; ++i) c.push_back(BaseScalar::parameter(d, i));
  return CurvePolynomial(c);
}

Connection vertical_rank2(Rng& rng, std::size_t arity, int degree, bool finite_pole, bool integrable) {
  std::vector<CurveFunction> f;
  for (int k = 0; k < 2; ++k) {
    CurveFunction fk(curve_polynomial(rng, arity, degree));
    if (finite_pole)
      fk += CurveFunction(CurvePolynomial(BaseScalar(rng.nonzero_rational(3, 1), arity) +
                                          BaseScalar::parameter(arity, 0) * BaseScalar(rng.rational(3, 1))),
                          CurvePolynomial::t());
    f.push_back(fk.reduced());
  }
  FunctionMatrix at(2, 2);
  std::vector<FunctionMatrix> par(arity, FunctionMatrix(2, 2));
  for (int k = 0; k < 2; ++k) {
    at(k, k) = f[k].derivative();
    for (std::size_t j = 0; j < arity; ++j) par[j](k, k) = f[k].derivative_param(j);
  }
  if (!integrable) {
    BaseOneForm w = one_form(rng, arity);
    for (std::size_t j = 0; j < arity; ++j)
      for (int k = 0; k < 2; ++k) par[j](k, k) += CurveFunction(w[j]);
  }
  std::vector<BaseScalar> poles;
  if (finite_pole) poles.push_back(BaseScalar(0));
  Connection c = make_connection(2, arity, poles, at, par);
  ScalarMatrix p = rational_matrix(rng, 2, true);
  FunctionMatrix pf(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) pf(i, j) = CurveFunction(p(i, j));
  FunctionMatrix u(2, 2);
  u(0, 0) = CurveFunction(1);
  u(1, 1) = CurveFunction(1);
  u(0, 1) = CurveFunction(polynomial_scalar(rng, arity, 1, 2));
  return gauge_transform(gauge_transform(c, pf), u);
}

LocalOneForm closed_local_form(Rng& rng, std::size_t arity, int max_order, int truncation) {
  Point p = Point::finite(BaseScalar(0));
  int k = static_cast<int>(rng.integer(1, max_order));
  std::vector<BaseScalar> prim;
  int low = 1 - k;
  for (int n = low; n <= truncation + 1; ++n) prim.push_back(n == 0 ? BaseScalar(0) : polynomial_scalar(rng, arity, 2, 2));
  if (low < 0 && prim.front().is_zero()) prim.front() = BaseScalar(Rational(1), arity);
  ScalarSeries phi(p, low, prim, truncation + 1, BaseScalar(0));
  Rational c = rng.rational(4, 3);
  ScalarSeries a = phi.derivative() + ScalarSeries::monomial(p, -1, BaseScalar(c, arity), truncation, BaseScalar(0));
  FormSeries b = d_base(phi);
  return LocalOneForm{a.truncated(truncation), b.truncated(truncation)};
}

}  // namespace gmdet::gen
