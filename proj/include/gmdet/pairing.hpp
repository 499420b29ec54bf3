#pragma once

#include <vector>

#include "gmdet/connection.hpp"

namespace gmdet {

// Relative form s = h(t) dt / prod_e (t - e)^{m_e} over the finite divisor
// points, with deg h = sum_e m_e + m_inf - 2 and h(e) != 0.
struct GlobalSection {
  CurvePolynomial h;
};

CurveFunction section_function(const PoleProfile& prof, const GlobalSection& s);
void validate_section(const Connection& c, const PoleProfile& prof, const GlobalSection& s);
GlobalSection default_section(const Connection& c);

// N_0..N_L, the power sums of the roots of p.
std::vector<BaseScalar> newton_sums(const CurvePolynomial& p, int L);
// Trace of multiplication by phi on K[t]/(h); phi's denominator must be coprime to h.
BaseScalar trace_at_divisor(const CurvePolynomial& h, const CurveFunction& phi);
BaseOneForm trace_at_divisor(const CurvePolynomial& h, const std::vector<CurveFunction>& phi);

// res Tr(dg g^-1 ^ A) at one divisor point, split as res Tr(X H) - res Tr(Y G)
// where dg g^-1 = X dz + Y and A = G dz + H in the chart (z, a).
struct CorrectionTerm {
  Point point;
  BaseOneForm value;
  BaseOneForm xh;
  BaseOneForm yg;
};

CorrectionTerm residue_trace_correction(const Connection& c, const PolePoint& p, const SectionChoice& s);

// The two identities for the standard section dz/z^m: the correction agrees
// with res Tr(dg g^-1 ^ eta z^(1-m)), and [eta, g] z^(1-m) is regular.
struct LocalIdentityCheck {
  BaseOneForm full;
  BaseOneForm via_eta;
  bool commutator_regular = false;
  bool holds() const { return full == via_eta && commutator_regular; }
};

LocalIdentityCheck local_identity_check(const Connection& c, const PolePoint& p);

struct PairingValue {
  // Sum over the zeros b of s of Tr(A) restricted along t = b(a).
  BaseOneForm main;
  // The part of main coming from the motion of the zeros (dt pulled back to db).
  BaseOneForm pullback;
  std::vector<CorrectionTerm> corrections;
  BaseOneForm total;
};

PairingValue pairing_value(const Connection& c, const GlobalSection& s);

BaseOneForm closed_form_m3(const FormMatrix& b0, const FormMatrix& b1, const FormMatrix& b2, const ScalarMatrix& c0,
                           const ScalarMatrix& c1);

enum class SumBound { MMinus1, MMinus2 };

// sum_{i <= bound} N_i(f') d f_i for f of degree m - 1.
BaseOneForm rhs_rank1_exponential(const CurvePolynomial& f, SumBound bound);

}  // namespace gmdet
