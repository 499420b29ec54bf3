#include "gmdet/verify.hpp"

#include <map>

namespace gmdet {

std::string to_string(Status s) {
  switch (s) {
    case Status::ExactlyEqual: return "ExactlyEqual";
    case Status::EqualModDlog: return "EqualModDlog";
    case Status::EqualModHalfDlog: return "EqualModHalfDlog";
    case Status::EqualModRationalDlog: return "EqualModRationalDlog";
    case Status::Distinct: return "Distinct";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(DlogMode m) {
  switch (m) {
    case DlogMode::Integer: return "integer";
    case DlogMode::Half: return "half";
    case DlogMode::Rational: return "rational";
  }
  return "?";
}

namespace {

BasePolynomial lcm(const BasePolynomial& a, const BasePolynomial& b) {
  if (a.is_constant()) return b;
  if (b.is_constant()) return a;
  BasePolynomial g = gcd(a, b);
  return *(a * b).divide_exact(g);
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }
bool is_half_integer(const Rational& q) { return q.get_den() == 1 || q.get_den() == 2; }

}  // namespace

std::optional<std::vector<Rational>> solve_dlog(const BaseOneForm& w, const std::vector<BaseScalar>& units) {
  std::size_t arity = w.arity();
  std::vector<BaseOneForm> forms;
  for (const auto& u : units) {
    forms.push_back(dlog(u));
    arity = std::max(arity, forms.back().arity());
  }
  if (w.is_zero()) return std::vector<Rational>(units.size(), Rational(0));
  if (units.empty()) return std::nullopt;

  std::vector<std::map<Exponents, std::vector<Rational>>> rows(arity);
  const std::size_t n = units.size();
  for (std::size_t i = 0; i < arity; ++i) {
    BasePolynomial den(arity, Rational(1));
    auto absorb = [&](const BaseScalar& x) {
      if (!x.is_zero()) den = lcm(den, x.den());
    };
    absorb(w[i]);
    for (const auto& f : forms) absorb(f[i]);
    auto add = [&](const BaseScalar& x, std::size_t col) {
      if (x.is_zero()) return;
      BasePolynomial p = x.num() * *den.divide_exact(x.den());
      for (const auto& t : p.terms()) {
        Exponents e = t.exps;
        e.resize(arity, 0);
        auto& r = rows[i][e];
        r.resize(n + 1, Rational(0));
        r[col] += t.coeff;
      }
    };
    for (std::size_t j = 0; j < n; ++j) add(forms[j][i], j);
    add(w[i], n);
  }
  std::size_t count = 0;
  for (const auto& r : rows) count += r.size();
  ScalarMatrix m(count, n + 1, BaseScalar(0));
  std::size_t k = 0;
  for (const auto& r : rows)
    for (const auto& [mono, v] : r) {
      for (std::size_t j = 0; j < v.size(); ++j) m(k, j) = BaseScalar(v[j]);
      ++k;
    }
  Echelon e = row_reduce(m);
  std::vector<Rational> q(n, Rational(0));
  for (std::size_t r = 0; r < e.rank(); ++r) {
    if (e.pivots[r] == n) return std::nullopt;
    q[e.pivots[r]] = e.rows(r, n).constant_value();
  }
  return q;
}

DlogBasis independent_units(const std::vector<BaseScalar>& units) {
  DlogBasis b;
  std::vector<BaseOneForm> seen;
  for (const auto& u0 : units) {
    if (u0.is_zero() || u0.is_constant()) continue;
    BaseScalar u = u0.canonical();
    BaseOneForm w = dlog(u);
    if (!b.units.empty() && solve_dlog(w, b.units)) continue;
    b.units.push_back(u);
  }
  return b;
}

DlogBasis auto_basis(const Connection& c, const std::vector<CurvePolynomial>& sections) {
  std::vector<BaseScalar> u;
  for (std::size_t j = 0; j < c.arity; ++j) u.push_back(BaseScalar::parameter(c.arity, j));
  PoleProfile prof = pole_profile(c);
  for (std::size_t i = 0; i < prof.finite_count(); ++i) u.push_back(prof.points[i].point.value);
  for (std::size_t i = 0; i < prof.finite_count(); ++i)
    for (std::size_t j = i + 1; j < prof.finite_count(); ++j)
      u.push_back(prof.points[i].point.value - prof.points[j].point.value);
  for (const auto& pp : prof.points)
    if (pp.m >= 2) {
      BaseScalar d = determinant(pp.leading);
      if (!d.is_zero()) u.push_back(d);
    }
  for (std::size_t i = 0; i < c.rank; ++i)
    for (std::size_t j = 0; j < c.rank; ++j) {
      const CurveFunction& f = c.a_t(i, j);
      if (f.is_zero()) continue;
      u.push_back(f.num().leading());
      u.push_back(f.den().leading());
    }
  for (const auto& h : sections) {
    if (h.is_zero()) continue;
    u.push_back(h.leading());
    if (h.degree() >= 2) {
      BaseScalar d = discriminant(h);
      if (!d.is_zero()) u.push_back(d);
    }
  }
  return independent_units(u);
}

FlatnessReport flatness_report(const BaseOneForm& w) {
  FlatnessReport r;
  BaseTwoForm d = exterior_d(w);
  if (!d.is_zero()) {
    r.closed = false;
    r.witness = d;
  }
  return r;
}

Comparison dlog_equivalent(const BaseOneForm& lhs, const BaseOneForm& rhs, const DlogBasis& basis, DlogMode mode) {
  Comparison cmp;
  cmp.residual = lhs - rhs;
  if (cmp.residual.is_zero()) {
    cmp.status = Status::ExactlyEqual;
    return cmp;
  }
  BaseTwoForm dw = exterior_d(cmp.residual);
  if (!dw.is_zero()) {
    cmp.status = Status::Distinct;
    cmp.witness = dw;
    cmp.note = "residual is not closed";
    return cmp;
  }
  auto q = solve_dlog(cmp.residual, basis.units);
  if (!q) {
    cmp.status = Status::Inconclusive;
    cmp.note = "closed residual outside the span of the unit basis";
    return cmp;
  }
  bool integral = true, half = true;
  for (std::size_t j = 0; j < q->size(); ++j) {
    if (sgn((*q)[j]) == 0) continue;
    cmp.decomposition.push_back({basis.units[j], (*q)[j]});
    integral = integral && is_integer((*q)[j]);
    half = half && is_half_integer((*q)[j]);
  }
  if (integral) {
    cmp.status = Status::EqualModDlog;
  } else if (half && mode != DlogMode::Integer) {
    cmp.status = Status::EqualModHalfDlog;
  } else if (mode == DlogMode::Rational) {
    cmp.status = Status::EqualModRationalDlog;
  } else {
    cmp.status = Status::Distinct;
    cmp.note = "decomposition needs coefficients outside the " + to_string(mode) + " lattice";
  }
  return cmp;
}

std::optional<CurvePolynomial> exponential_potential(const Connection& c) {
  if (c.rank != 1) return std::nullopt;
  const CurveFunction& at = c.a_t(0, 0);
  if (!at.is_polynomial()) return std::nullopt;
  CurvePolynomial fp = at.num() * at.den().leading().inverse();
  std::vector<BaseScalar> coeffs(1, BaseScalar(0));
  for (int i = 0; i <= fp.degree(); ++i) coeffs.push_back(fp.coeff(i) * BaseScalar(Rational(1, i + 1)));
  CurvePolynomial f(coeffs);
  for (std::size_t j = 0; j < c.arity; ++j)
    if (c.a_par[j](0, 0) != CurveFunction(f.derivative_param(j))) return std::nullopt;
  return f;
}

namespace {

bool refuse(CheckReport& rep, std::string why) {
  rep.refused = true;
  rep.refusal = std::move(why);
  return true;
}

bool common_preconditions(const Connection& c, CheckReport& rep, DeRhamComplex& dr) {
  if (!curvature(c).integrable()) return refuse(rep, "connection is not integrable");
  MinimalityReport mr = minimality_check(c);
  for (const auto& p : mr.points)
    if (p.verdict != Verdict::Pass)
      return refuse(rep, "minimality " + to_string(p.verdict) + " at " + p.point.to_string(c.names) +
                             (p.reason.empty() ? "" : ": " + p.reason));
  const H0Result& z = dr.h0();
  if (z.dim() != 0) return refuse(rep, "H^0 is nonzero (dim " + std::to_string(z.dim()) + ")");
  if (z.saturated) return refuse(rep, "H^0 search hit its degree bound");
  return false;
}

void compare(const Connection& c, const CheckOptions& opts, CheckReport& rep, DeRhamComplex& dr, bool newton) {
  rep.dim_h1 = dr.h1().dim();
  rep.chi = euler_characteristic(c);
  rep.det_gm = dr.det_gm();
  rep.section = opts.section ? *opts.section : default_section(c);
  rep.pairing = pairing_value(c, *rep.section);
  rep.rhs = rep.pairing->total;
  if (auto f = exponential_potential(c); newton && f && f->degree() >= 2) {
    rep.exponential = true;
    rep.newton_rhs = rhs_rank1_exponential(*f, opts.sum_bound);
    rep.rhs = *rep.newton_rhs;
  }
  rep.torsion = torsion_term(c);
  rep.units = opts.units ? *opts.units : auto_basis(c, {rep.section->h});
  rep.mode = opts.mode.value_or(newton ? DlogMode::Half : DlogMode::Rational);
  rep.comparison = dlog_equivalent(rep.det_gm, rep.rhs, rep.units, rep.mode);
  Comparison tc = dlog_equivalent(rep.comparison.residual, rep.torsion.value, rep.units, DlogMode::Integer);
  rep.torsion_consistent = tc.status == Status::ExactlyEqual || tc.status == Status::EqualModDlog;
}

}  // namespace

CheckReport check_rank1_theorem(const Connection& c, const CheckOptions& opts) {
  CheckReport rep;
  if (c.rank != 1) {
    refuse(rep, "rank " + std::to_string(c.rank) + " connection; the rank one check needs rank 1");
    return rep;
  }
  DeRhamComplex dr(c, opts.derham);
  if (common_preconditions(c, rep, dr)) return rep;
  compare(c, opts, rep, dr, true);
  return rep;
}

CheckReport check_conjecture(const Connection& c, const CheckOptions& opts) {
  CheckReport rep;
  DeRhamComplex dr(c, opts.derham);
  if (common_preconditions(c, rep, dr)) return rep;
  PoleProfile prof = pole_profile(c);
  for (const auto& pp : prof.points) {
    LocalConnectionData ld = local_data(c, pp, SectionChoice{}, 0);
    if (determinant(ld.g0).is_zero())
      return refuse(rep, "g0 is singular at " + pp.point.to_string(c.names)), rep;
    FormMatrixSeries h = local_h(c, pp.point, 0);
    if (!h.is_zero() && h.valuation() < 1 - pp.m)
      return refuse(rep, "the parameter part has a pole of order above m - 1 at " + pp.point.to_string(c.names)),
             rep;
  }
  compare(c, opts, rep, dr, false);
  return rep;
}

}  // namespace gmdet
