#pragma once

#include <cstdint>
#include <random>

#include "gmdet/connection.hpp"
#include "gmdet/irregularity.hpp"

namespace gmdet::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  long integer(long lo, long hi);
  Rational rational(long num_bound, long den_bound);
  Rational nonzero_rational(long num_bound, long den_bound);
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937_64 eng_;
};

// Sparse polynomial in the parameters with small rational coefficients.
BaseScalar polynomial_scalar(Rng& rng, std::size_t arity, int max_degree, int max_terms);
// Ratio of two random polynomials, or a polynomial.
BaseScalar scalar(Rng& rng, std::size_t arity);
CurvePolynomial curve_polynomial(Rng& rng, std::size_t arity, int degree);
// Rational function in t with the given constant poles of order <= max_order.
CurveFunction curve_function(Rng& rng, std::size_t arity, const std::vector<BaseScalar>& poles, int max_order,
                             int max_degree);
ScalarMatrix rational_matrix(Rng& rng, std::size_t n, bool invertible);
BaseOneForm one_form(Rng& rng, std::size_t arity);

// d + df for f in K[t] (arity given by the coefficients); A_par[j] = d_j f.
Connection exponential(const CurvePolynomial& f, std::size_t arity, const Names& names = {});
// f = a_1 t + ... + a_d t^d over d parameters.
CurvePolynomial generic_potential(std::size_t d);

// Conjugate of diag(df1, df2) by a random constant matrix, with optional
// parameter-dependent unipotent frame change and a scalar base term omega*I.
// Vertical by construction; integrable iff omega is closed.
Connection vertical_rank2(Rng& rng, std::size_t arity, int degree, bool finite_pole, bool integrable);

// Closed local form a dz + b da at z = 0 with pole order <= max_order, built
// as d(primitive) + c dz/z + regular closed part.
LocalOneForm closed_local_form(Rng& rng, std::size_t arity, int max_order, int truncation);

}  // namespace gmdet::gen
