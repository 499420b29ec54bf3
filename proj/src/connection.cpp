#include "gmdet/connection.hpp"

#include <map>

namespace gmdet {

namespace {

FunctionMatrix map_derivative_param(const FunctionMatrix& m, std::size_t j) {
  return m.map([j](const CurveFunction& f) { return f.derivative_param(j); });
}

FunctionMatrix map_derivative(const FunctionMatrix& m) {
  return m.map([](const CurveFunction& f) { return f.derivative(); });
}

std::string describe_factor(const CurvePolynomial& p, const Names& names) {
  if (p.degree() == 1) return "t = " + (-p.coeff(0) / p.coeff(1)).to_string(names);
  return "roots of " + p.to_string(names);
}

CurvePolynomial strip_declared(CurvePolynomial den, const std::vector<BaseScalar>& poles) {
  for (const auto& e : poles) {
    CurvePolynomial lin = CurvePolynomial::linear_factor(e);
    while (den.degree() > 0) {
      auto [q, r] = den.divmod(lin);
      if (!r.is_zero()) break;
      den = q;
    }
  }
  return den;
}

FormMatrix with_form(const ScalarMatrix& m, const BaseOneForm& w) {
  return m.map([&](const BaseScalar& x) { return w * x; });
}

FormMatrixSeries matrix_series_times_form(const MatrixSeries& s, const BaseOneForm& w) {
  std::size_t r = s.zero().rows(), c = s.zero().cols();
  return s.map([&](const ScalarMatrix& x) { return with_form(x, w); }, FormMatrix(r, c));
}

// Smallest positive integer root of sum_k c_k n^k, deciding over K exactly.
Verdict positive_integer_root_test(const std::vector<BaseScalar>& c, std::string& reason) {
  std::size_t arity = 0;
  for (const auto& x : c) arity = std::max(arity, x.arity());
  BasePolynomial den(arity, Rational(1));
  for (const auto& x : c) {
    if (x.is_zero() || x.den().is_constant()) continue;
    if (!den.divide_exact(x.den())) den *= x.den();
  }
  std::map<Exponents, std::vector<Rational>> groups;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    BasePolynomial p = c[k].num() * *den.divide_exact(c[k].den());
    for (const auto& t : p.terms()) {
      Exponents e = t.exps;
      e.resize(arity, 0);
      auto& v = groups[e];
      v.resize(c.size(), Rational(0));
      v[k] += t.coeff;
    }
  }
  BasePolynomial g(1);
  for (const auto& [mono, coeffs] : groups) {
    BasePolynomial q(1);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (sgn(coeffs[k]) != 0) q += BasePolynomial::monomial(Exponents{static_cast<std::uint32_t>(k)}, coeffs[k]);
    g = g.is_zero() ? q.monic() : gcd(g, q);
  }
  if (g.is_zero()) {
    reason = "det(g0 - n) vanishes identically";
    return Verdict::Fail;
  }
  if (g.is_constant()) return Verdict::Pass;
  std::vector<Rational> coeffs(g.total_degree() + 1, Rational(0));
  for (const auto& t : g.terms()) coeffs[t.exps[0]] = t.coeff;
  std::size_t lo = 0;
  while (sgn(coeffs[lo]) == 0) ++lo;
  Rational bound = 0;
  for (std::size_t k = lo; k + 1 < coeffs.size(); ++k) bound = std::max(bound, Rational(abs(coeffs[k] / coeffs.back())));
  bound += 1;
  if (bound > 1000000) {
    reason = "integer root bound too large to scan";
    return Verdict::Inconclusive;
  }
  long limit = static_cast<long>(mpz_class(bound.get_num() / bound.get_den()).get_si());
  for (long n = 1; n <= limit; ++n) {
    Rational v = 0, pw = 1;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      v += coeffs[k] * pw;
      pw *= n;
    }
    if (sgn(v) == 0) {
      reason = "det(g0 - " + std::to_string(n) + ") = 0";
      return Verdict::Fail;
    }
  }
  return Verdict::Pass;
}

}  // namespace

Connection make_connection(std::size_t rank, std::size_t arity, std::vector<BaseScalar> finite_poles, FunctionMatrix a_t,
                           std::vector<FunctionMatrix> a_par, Names names) {
  if (rank == 0) throw InputError("rank must be positive");
  if (a_t.rows() != rank || a_t.cols() != rank)
    throw InputError("dt matrix has shape " + std::to_string(a_t.rows()) + "x" + std::to_string(a_t.cols()) +
                     ", expected " + std::to_string(rank) + "x" + std::to_string(rank));
  if (a_par.size() != arity) throw InputError("expected one parameter matrix per parameter");
  for (const auto& m : a_par)
    if (m.rows() != rank || m.cols() != rank) throw InputError("parameter matrix shape does not match rank");
  if (names.empty()) names = default_names(arity);
  for (std::size_t i = 0; i < finite_poles.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (finite_poles[i] == finite_poles[j])
        throw InputError("duplicate pole " + finite_poles[i].to_string(names));
  auto check = [&](const FunctionMatrix& m, const std::string& what) {
    for (const auto& f : m.data()) {
      CurvePolynomial rest = strip_declared(f.den(), finite_poles);
      if (rest.degree() > 0) throw InputError("undeclared pole in " + what + " at " + describe_factor(rest, names));
    }
  };
  check(a_t, "dt part");
  for (std::size_t j = 0; j < arity; ++j) check(a_par[j], "d" + names[j] + " part");
  Connection c;
  c.rank = rank;
  c.arity = arity;
  c.finite_poles = std::move(finite_poles);
  c.a_t = std::move(a_t);
  c.a_par = std::move(a_par);
  c.names = std::move(names);
  return c;
}

namespace {

std::optional<FunctionMatrix> invert(FunctionMatrix m) {
  const std::size_t n = m.rows();
  FunctionMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = CurveFunction(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col).is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(piv, j), m(col, j));
      std::swap(inv(piv, j), inv(col, j));
    }
    CurveFunction p = CurveFunction(1) / m(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) = (m(col, j) * p).reduced();
      inv(col, j) = (inv(col, j) * p).reduced();
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m(i, col).is_zero()) continue;
      CurveFunction f = m(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = (m(i, j) - f * m(col, j)).reduced();
        inv(i, j) = (inv(i, j) - f * inv(col, j)).reduced();
      }
    }
  }
  return inv;
}

FunctionMatrix reduce_all(FunctionMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j).reduced();
  return m;
}

}  // namespace

Connection gauge_transform(const Connection& c, const FunctionMatrix& p, std::vector<BaseScalar> extra_poles) {
  if (p.rows() != c.rank || p.cols() != c.rank) throw InputError("gauge matrix shape does not match rank");
  auto pinv = invert(p);
  if (!pinv) throw InputError("gauge matrix is not invertible");
  auto derivative = [](const FunctionMatrix& m, auto&& f) { return m.map([&](const CurveFunction& x) { return f(x); }); };
  FunctionMatrix at = reduce_all(*pinv * c.a_t * p + *pinv * derivative(p, [](const CurveFunction& x) { return x.derivative(); }));
  std::vector<FunctionMatrix> par;
  for (std::size_t j = 0; j < c.arity; ++j)
    par.push_back(reduce_all(*pinv * c.a_par[j] * p +
                             *pinv * derivative(p, [j](const CurveFunction& x) { return x.derivative_param(j); })));
  std::vector<BaseScalar> poles = c.finite_poles;
  for (auto& e : extra_poles) poles.push_back(std::move(e));
  return make_connection(c.rank, c.arity, std::move(poles), std::move(at), std::move(par), c.names);
}

std::vector<BaseScalar> PoleProfile::finite_positions() const {
  std::vector<BaseScalar> e;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) e.push_back(points[i].point.value);
  return e;
}

PoleProfile pole_profile(const Connection& c) {
  PoleProfile prof;
  for (const auto& e : c.finite_poles) {
    Point p = Point::finite(e);
    int ord = 0;
    for (const auto& f : c.a_t.data())
      if (!f.is_zero()) ord = std::max(ord, -valuation(f, p));
    if (ord <= 0) {
      bool par_pole = false;
      for (const auto& m : c.a_par)
        for (const auto& f : m.data())
          if (!f.is_zero() && valuation(f, p) < 0) par_pole = true;
      if (!par_pole) continue;
      ord = 1;
    }
    prof.points.push_back({p, ord, laurent_expand(c.a_t, p, -ord).coeff(-ord)});
  }
  Point inf = Point::at_infinity();
  int ord = 1;
  for (const auto& f : c.a_t.data())
    if (!f.is_zero()) ord = std::max(ord, 2 - valuation(f, inf));
  prof.points.push_back({inf, ord, laurent_expand(c.a_t, inf, 2 - ord).coeff(2 - ord)});
  return prof;
}

bool Curvature::vertical() const {
  for (const auto& m : mixed)
    if (!m.is_zero()) return false;
  return true;
}

bool Curvature::integrable() const {
  if (!vertical()) return false;
  for (const auto& m : base)
    if (!m.is_zero()) return false;
  return true;
}

Curvature curvature(const Connection& c) {
  Curvature k;
  for (std::size_t j = 0; j < c.arity; ++j) {
    const auto& aj = c.a_par[j];
    k.mixed.push_back(map_derivative_param(c.a_t, j) - map_derivative(aj) + (aj * c.a_t - c.a_t * aj));
  }
  for (std::size_t i = 0; i < c.arity; ++i)
    for (std::size_t j = i + 1; j < c.arity; ++j) {
      const auto& ai = c.a_par[i];
      const auto& aj = c.a_par[j];
      k.base.push_back(map_derivative_param(aj, i) - map_derivative_param(ai, j) + (ai * aj - aj * ai));
    }
  return k;
}

MatrixSeries local_az(const Connection& c, const Point& p, int order) {
  if (!p.infinity) return laurent_expand(c.a_t, p, order);
  return -laurent_expand(c.a_t, p, order + 2).shifted(-2);
}

FormMatrixSeries local_h(const Connection& c, const Point& p, int order) {
  std::size_t r = c.rank;
  FormMatrixSeries h(p, order + 1, {}, order, FormMatrix(r, r));
  for (std::size_t j = 0; j < c.arity; ++j) {
    MatrixSeries s = laurent_expand(c.a_par[j], p, order);
    h = h + matrix_series_times_form(s, BaseOneForm::basis(c.arity, j));
  }
  if (!p.infinity) {
    BaseOneForm de = d_base(p.value);
    if (!de.is_zero()) h = h + matrix_series_times_form(local_az(c, p, order), de);
  }
  return h.truncated(order);
}

LocalConnectionData local_data(const Connection& c, const PolePoint& pp, const SectionChoice& s, int order) {
  LocalConnectionData d;
  d.point = pp.point;
  d.m = pp.m;
  int m = pp.m;
  d.az = local_az(c, pp.point, order - m);
  if (s.global) {
    if (pp.point.infinity) d.sigma = -laurent_expand(*s.global, pp.point, order - m + 2).shifted(-2);
    else d.sigma = laurent_expand(*s.global, pp.point, order - m);
    if (d.sigma.valuation() != -m)
      throw PreconditionError("section has pole order " + std::to_string(-d.sigma.valuation()) + " at " +
                              pp.point.to_string(c.names) + ", expected " + std::to_string(m));
  } else {
    d.sigma = ScalarSeries::monomial(pp.point, -m, s.scale.pow(1 - m), order + m, BaseScalar(0));
  }
  MatrixSeries g = scalar_times(inverse(d.sigma), d.az);
  if (g.truncation() < order) throw InternalError("local_data: insufficient precision for g");
  d.g = g.truncated(order);
  d.h = local_h(c, pp.point, order - m + 1);
  d.eta = d.h.shifted(m - 1);
  d.g0 = d.g.coeff(0);
  return d;
}

int euler_characteristic(std::size_t rank, const PoleProfile& p) {
  int s = 0;
  for (const auto& pt : p.points) s += std::max(0, pt.m - 1);
  return static_cast<int>(rank) * (2 - static_cast<int>(p.n()) - s);
}

int euler_characteristic(const Connection& c) { return euler_characteristic(c.rank, pole_profile(c)); }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    default: return "Inconclusive";
  }
}

Verdict MinimalityReport::overall() const {
  Verdict v = Verdict::Pass;
  for (const auto& p : points) {
    if (p.verdict == Verdict::Fail) return Verdict::Fail;
    if (p.verdict == Verdict::Inconclusive) v = Verdict::Inconclusive;
  }
  return v;
}

MinimalityReport minimality_check(const Connection& c) {
  MinimalityReport rep;
  PoleProfile prof = pole_profile(c);
  for (const auto& pp : prof.points) {
    PointMinimality pm{pp.point, pp.m, Verdict::Pass, ""};
    ScalarMatrix g0 = pp.point.infinity ? -pp.leading : pp.leading;
    if (pp.m >= 2) {
      if (determinant(g0).is_zero()) {
        pm.verdict = Verdict::Fail;
        pm.reason = "det g0 = 0";
      }
    } else {
      pm.verdict = positive_integer_root_test(shifted_determinant(g0), pm.reason);
    }
    rep.points.push_back(std::move(pm));
  }
  return rep;
}

TorsionTerm torsion_term(const Connection& c, const std::vector<BaseScalar>& scales) {
  TorsionTerm tt;
  tt.value = BaseOneForm::zero(c.arity);
  PoleProfile prof = pole_profile(c);
  for (std::size_t i = 0; i < prof.points.size(); ++i) {
    const auto& pp = prof.points[i];
    if (pp.m < 2) continue;
    SectionChoice s;
    if (i < scales.size()) s.scale = scales[i];
    ScalarMatrix g0 = local_data(c, pp, s, 0).g0;
    BaseScalar u = determinant(g0);
    if (u.is_zero()) throw PreconditionError("torsion term: det g0 = 0 at " + pp.point.to_string(c.names));
    Rational q(pp.m, 2);
    q.canonicalize();
    tt.units.push_back({u, q});
    tt.value += dlog(u) * BaseScalar(q);
  }
  return tt;
}

}  // namespace gmdet
