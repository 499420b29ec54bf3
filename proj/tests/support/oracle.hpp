#pragma once

#include <vector>

#include "gmdet/connection.hpp"

// Independent reference computations used to derive expected values.  None of
// these go through the polar reduction, series inversion or quotient-algebra
// trace code they check.
namespace oracle {

using namespace gmdet;

// Coordinates of p dt in the basis t^i dt (0 <= i < deg f - 1) of H^1 for d + df,
// by repeated division: q f' dt = -q' dt in cohomology.
std::vector<BaseScalar> exp_reduce(const CurvePolynomial& f, CurvePolynomial p);
FormMatrix exp_gauss_manin(const CurvePolynomial& f, std::size_t arity);
BaseOneForm exp_det_gm(const CurvePolynomial& f, std::size_t arity);

// res_e f dt via ((t - e)^k f)^(k-1)(e) / (k-1)!.
BaseScalar residue_by_derivatives(const CurveFunction& f, const BaseScalar& e);
// res_inf f dt as minus the t^-1 coefficient from polynomial long division.
BaseScalar residue_at_infinity(const CurveFunction& f);

std::vector<Rational> power_sums(const std::vector<Rational>& roots, int L);
BaseScalar root_sum(const std::vector<Rational>& roots, const CurveFunction& phi);

int euler_formula(std::size_t rank, const std::vector<int>& orders);

// Scalar substitution into B0 - B1 C0/C1 + B2 C0^2/C1^2.
BaseOneForm closed_form_rank1(const BaseOneForm& b0, const BaseOneForm& b1, const BaseOneForm& b2, const BaseScalar& c0,
                              const BaseScalar& c1);

// sum q_j du_j / u_j with du computed from partial derivatives.
BaseOneForm dlog_combination(const std::vector<std::pair<BaseScalar, Rational>>& terms, std::size_t arity);

// da_j^dt coefficient of dA + A^A: dA_t/da_j - dA_j/dt + [A_j, A_t], entry by entry.
FunctionMatrix mixed_curvature(const Connection& c, std::size_t j);

Connection direct_sum(const Connection& a, const Connection& b);
// a_j -> v everywhere; A_par[j] becomes zero.
Connection specialize(const Connection& c, std::size_t j, const Rational& v);

}  // namespace oracle
