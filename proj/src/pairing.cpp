#include "gmdet/pairing.hpp"

namespace gmdet {

namespace {

CurveFunction trace_of(const FunctionMatrix& m) {
  CurveFunction s;
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

int expected_section_degree(const PoleProfile& prof) {
  int d = prof.infinity().m - 2;
  for (std::size_t i = 0; i < prof.finite_count(); ++i) d += prof.points[i].m;
  return d;
}

}  // namespace

CurveFunction section_function(const PoleProfile& prof, const GlobalSection& s) {
  CurvePolynomial den(1);
  for (std::size_t i = 0; i < prof.finite_count(); ++i)
    den = den * CurvePolynomial::linear_factor(prof.points[i].point.value).pow(prof.points[i].m);
  return CurveFunction(s.h, den);
}

void validate_section(const Connection& c, const PoleProfile& prof, const GlobalSection& s) {
  if (s.h.is_zero()) throw InputError("section numerator is zero");
  int want = expected_section_degree(prof);
  if (s.h.degree() != want)
    throw InputError("section numerator has degree " + std::to_string(s.h.degree()) + ", expected " +
                     std::to_string(want));
  for (std::size_t i = 0; i < prof.finite_count(); ++i)
    if (s.h.eval(prof.points[i].point.value).is_zero())
      throw InputError("section vanishes at the divisor point " + prof.points[i].point.to_string(c.names));
}

GlobalSection default_section(const Connection& c) {
  PoleProfile prof = pole_profile(c);
  int want = expected_section_degree(prof);
  if (want < 0) throw InputError("no global section of the required pole orders exists (degree would be negative)");
  if (c.rank == 1) {
    CurvePolynomial den(1);
    for (std::size_t i = 0; i < prof.finite_count(); ++i)
      den = den * CurvePolynomial::linear_factor(prof.points[i].point.value).pow(prof.points[i].m);
    CurveFunction h = (c.a_t(0, 0) * CurveFunction(den)).reduced();
    if (h.is_polynomial() && !h.is_zero()) {
      GlobalSection s{h.num() * h.den().leading().inverse()};
      bool ok = s.h.degree() == want;
      for (std::size_t i = 0; ok && i < prof.finite_count(); ++i)
        if (s.h.eval(prof.points[i].point.value).is_zero()) ok = false;
      if (ok) return s;
    }
  }
  long shift = 0;
  for (bool clash = true; clash; ++shift) {
    clash = false;
    for (const auto& e : c.finite_poles)
      if (e == BaseScalar(shift)) clash = true;
    if (!clash) break;
  }
  return GlobalSection{CurvePolynomial::linear_factor(BaseScalar(shift)).pow(static_cast<unsigned>(want))};
}

std::vector<BaseScalar> newton_sums(const CurvePolynomial& p0, int L) {
  if (p0.is_zero()) throw InputError("newton sums of the zero polynomial");
  CurvePolynomial p = p0.monic();
  int d = p.degree();
  std::vector<BaseScalar> n(L + 1, BaseScalar(0));
  n[0] = BaseScalar(static_cast<long>(d));
  for (int k = 1; k <= L; ++k) {
    BaseScalar acc(0);
    for (int i = 1; i <= std::min(k - 1, d); ++i) acc += p.coeff(d - i) * n[k - i];
    if (k <= d) acc += p.coeff(d - k) * BaseScalar(static_cast<long>(k));
    n[k] = -acc;
  }
  return n;
}

BaseScalar trace_at_divisor(const CurvePolynomial& h0, const CurveFunction& phi) {
  if (h0.is_zero()) throw InputError("trace over the zero divisor");
  if (h0.degree() == 0 || phi.is_zero()) return BaseScalar(0);
  CurvePolynomial h = h0.monic();
  auto inv = inverse_mod(phi.den(), h);
  if (!inv) {
    CurvePolynomial g = gcd(phi.den(), h);
    throw InputError("trace_at_divisor: denominator shares the factor " + g.to_string(default_names(0)) +
                     " with the divisor");
  }
  CurvePolynomial psi = (phi.num() * *inv).divmod(h).second;
  auto n = newton_sums(h, h.degree() - 1);
  BaseScalar s(0);
  for (int i = 0; i <= psi.degree(); ++i) s += psi.coeff(i) * n[i];
  return s;
}

BaseOneForm trace_at_divisor(const CurvePolynomial& h, const std::vector<CurveFunction>& phi) {
  std::vector<BaseScalar> c;
  for (const auto& f : phi) c.push_back(trace_at_divisor(h, f));
  return BaseOneForm(std::move(c));
}

CorrectionTerm residue_trace_correction(const Connection& c, const PolePoint& p, const SectionChoice& s) {
  FormMatrixSeries h0 = local_h(c, p.point, 0);
  int vh = h0.is_zero() ? 1 : h0.valuation();
  int w = std::max({p.m, -vh, 1}) + 1;
  LocalConnectionData ld = local_data(c, p, s, w);
  if (determinant(ld.g0).is_zero())
    throw PreconditionError("g0 is singular at " + p.point.to_string(c.names) + "; the section does not trivialise");
  MatrixSeries gi = inverse(ld.g);
  MatrixSeries x = ld.g.derivative() * gi;
  FormMatrixSeries y = d_base(ld.g) * gi;
  CorrectionTerm ct;
  ct.point = p.point;
  ct.xh = trace(x * ld.h).coeff(-1);
  ct.yg = trace(y * ld.az).coeff(-1);
  ct.value = ct.xh - ct.yg;
  ct.value += BaseOneForm::zero(c.arity);
  return ct;
}

LocalIdentityCheck local_identity_check(const Connection& c, const PolePoint& p) {
  CorrectionTerm ct = residue_trace_correction(c, p, SectionChoice{});
  FormMatrixSeries h0 = local_h(c, p.point, 0);
  int vh = h0.is_zero() ? 1 : h0.valuation();
  int w = std::max({p.m, -vh, 1}) + 1;
  LocalConnectionData ld = local_data(c, p, SectionChoice{}, w);
  MatrixSeries gi = inverse(ld.g);
  MatrixSeries x = ld.g.derivative() * gi;
  LocalIdentityCheck chk;
  chk.full = ct.value;
  chk.via_eta = trace(x * ld.eta.shifted(1 - p.m)).coeff(-1) + BaseOneForm::zero(c.arity);
  FormMatrixSeries comm = (ld.eta * ld.g - ld.g * ld.eta).shifted(1 - p.m);
  chk.commutator_regular = comm.valuation() >= 0;
  return chk;
}

PairingValue pairing_value(const Connection& c, const GlobalSection& s) {
  PoleProfile prof = pole_profile(c);
  validate_section(c, prof, s);
  PairingValue pv;
  pv.main = BaseOneForm::zero(c.arity);
  pv.pullback = BaseOneForm::zero(c.arity);
  const CurvePolynomial& h = s.h;
  CurveFunction tr_t = trace_of(c.a_t);
  if (h.degree() > 0) {
    CurvePolynomial hp = h.derivative();
    bool squarefree = gcd(h, hp).degree() == 0;
    for (std::size_t j = 0; j < c.arity; ++j) {
      CurveFunction tr_j = trace_of(c.a_par[j]);
      CurvePolynomial dh = h.derivative_param(j);
      BaseScalar base = trace_at_divisor(h, tr_j);
      BaseScalar pull(0);
      if (!dh.is_zero()) {
        if (squarefree) {
          pull = -trace_at_divisor(h, (tr_t * CurveFunction(dh, hp)).reduced());
        } else {
          CurveFunction f = (tr_t * CurveFunction(dh, h)).reduced();
          pull = residue(f, Point::at_infinity());
          for (std::size_t i = 0; i < prof.finite_count(); ++i) pull += residue(f, prof.points[i].point);
        }
      }
      pv.main = pv.main + BaseOneForm::basis(c.arity, j, base + pull);
      pv.pullback = pv.pullback + BaseOneForm::basis(c.arity, j, pull);
    }
  }
  CurveFunction sf = section_function(prof, s);
  pv.total = pv.main;
  for (const auto& pp : prof.points) {
    SectionChoice sc;
    sc.global = sf;
    CorrectionTerm ct = residue_trace_correction(c, pp, sc);
    pv.total -= ct.value;
    pv.corrections.push_back(std::move(ct));
  }
  return pv;
}

BaseOneForm closed_form_m3(const FormMatrix& b0, const FormMatrix& b1, const FormMatrix& b2, const ScalarMatrix& c0,
                           const ScalarMatrix& c1) {
  auto c1inv = inverse(c1);
  if (!c1inv) throw InputError("closed_form_m3 requires an invertible C1");
  ScalarMatrix m = c0 * *c1inv;
  return (b0 - b1 * m + b2 * m * m).trace();
}

BaseOneForm rhs_rank1_exponential(const CurvePolynomial& f, SumBound bound) {
  int m = f.degree() + 1;
  if (m < 3) return BaseOneForm();
  auto n = newton_sums(f.derivative(), m - 1);
  int top = bound == SumBound::MMinus1 ? m - 1 : m - 2;
  BaseOneForm r;
  for (int i = 0; i <= top; ++i) {
    BaseOneForm df = d_base(f.coeff(i));
    if (!df.is_zero()) r += df * n[i];
  }
  return r;
}

}  // namespace gmdet
