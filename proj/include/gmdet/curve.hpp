#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmdet/forms.hpp"

namespace gmdet {

// Dense polynomial in t over K.  The coefficient list never ends in zero.
class CurvePolynomial {
 public:
  CurvePolynomial() = default;
  explicit CurvePolynomial(std::vector<BaseScalar> coeffs);
  CurvePolynomial(const BaseScalar& c);
  CurvePolynomial(long c) : CurvePolynomial(BaseScalar(c)) {}
  static CurvePolynomial t();
  static CurvePolynomial linear_factor(const BaseScalar& e);  // t - e

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  BaseScalar coeff(int i) const;
  const BaseScalar& leading() const { return c_.back(); }
  const std::vector<BaseScalar>& coeffs() const { return c_; }

  CurvePolynomial operator-() const;
  CurvePolynomial& operator+=(const CurvePolynomial& o);
  CurvePolynomial& operator-=(const CurvePolynomial& o);
  CurvePolynomial& operator*=(const BaseScalar& s);
  friend CurvePolynomial operator+(CurvePolynomial a, const CurvePolynomial& b) { return a += b; }
  friend CurvePolynomial operator-(CurvePolynomial a, const CurvePolynomial& b) { return a -= b; }
  friend CurvePolynomial operator*(const CurvePolynomial& a, const CurvePolynomial& b);
  friend CurvePolynomial operator*(CurvePolynomial a, const BaseScalar& s) { return a *= s; }
  friend bool operator==(const CurvePolynomial& a, const CurvePolynomial& b);
  friend bool operator!=(const CurvePolynomial& a, const CurvePolynomial& b) { return !(a == b); }

  std::pair<CurvePolynomial, CurvePolynomial> divmod(const CurvePolynomial& d) const;
  CurvePolynomial pow(unsigned n) const;
  CurvePolynomial monic() const;
  CurvePolynomial derivative() const;
  CurvePolynomial derivative_param(std::size_t var) const;
  CurvePolynomial substitute(std::size_t var, const Rational& value) const;
  BaseScalar eval(const BaseScalar& x) const;
  // Coefficients of P(e + z) as a polynomial in z.
  CurvePolynomial taylor_shift(const BaseScalar& e) const;
  // Order of vanishing at t = e (-1 for the zero polynomial).
  int order_at(const BaseScalar& e) const;

  std::string to_string(const Names& names, const std::string& var = "t") const;

 private:
  std::vector<BaseScalar> c_;
  void trim();
};

CurvePolynomial gcd(const CurvePolynomial& a, const CurvePolynomial& b);
// u with u*a = 1 mod h, or nullopt when gcd(a, h) is not constant.
std::optional<CurvePolynomial> inverse_mod(const CurvePolynomial& a, const CurvePolynomial& h);
BaseScalar resultant(const CurvePolynomial& p, const CurvePolynomial& q);
BaseScalar discriminant(const CurvePolynomial& p);

// Rational function in t over K, with monic denominator.
class CurveFunction {
 public:
  CurveFunction() : num_(), den_(1) {}
  CurveFunction(const CurvePolynomial& p) : num_(p), den_(1) {}
  CurveFunction(const BaseScalar& c) : num_(c), den_(1) {}
  CurveFunction(long c) : num_(c), den_(1) {}
  CurveFunction(CurvePolynomial num, CurvePolynomial den);

  const CurvePolynomial& num() const { return num_; }
  const CurvePolynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  CurveFunction operator-() const;
  CurveFunction& operator+=(const CurveFunction& o);
  CurveFunction& operator-=(const CurveFunction& o);
  CurveFunction& operator*=(const CurveFunction& o);
  CurveFunction& operator/=(const CurveFunction& o);
  friend CurveFunction operator+(CurveFunction a, const CurveFunction& b) { return a += b; }
  friend CurveFunction operator-(CurveFunction a, const CurveFunction& b) { return a -= b; }
  friend CurveFunction operator*(CurveFunction a, const CurveFunction& b) { return a *= b; }
  friend CurveFunction operator/(CurveFunction a, const CurveFunction& b) { return a /= b; }
  friend bool operator==(const CurveFunction& a, const CurveFunction& b);
  friend bool operator!=(const CurveFunction& a, const CurveFunction& b) { return !(a == b); }

  CurveFunction pow(int n) const;
  CurveFunction derivative() const;
  CurveFunction derivative_param(std::size_t var) const;
  CurveFunction substitute(std::size_t var, const Rational& value) const;
  // Cancels the gcd of numerator and denominator.
  CurveFunction reduced() const;
  // Valuation at a finite point, exact.
  int valuation_at(const BaseScalar& e) const;
  int valuation_at_infinity() const;

  std::string to_string(const Names& names) const;

 private:
  CurvePolynomial num_, den_;
};

struct MixedTwoForm;

// A dt + sum_j B_j da_j with A, B_j rational in t over K.
struct MixedOneForm {
  CurveFunction dt;
  std::vector<CurveFunction> da;
};

// Coefficients of dt^da_j and da_i^da_j (i < j, row-major).
struct MixedTwoForm {
  std::vector<CurveFunction> dt_da;
  std::vector<CurveFunction> da_da;
  bool is_zero() const;
};

MixedOneForm exterior_d(const CurveFunction& f, std::size_t arity);
MixedTwoForm exterior_d(const MixedOneForm& w);

}  // namespace gmdet
