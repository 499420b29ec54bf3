#pragma once

#include <string>

#include "gmdet/polynomial.hpp"

namespace gmdet {

// Element of K = Q(a1..ak), stored as numerator/denominator.  Equality is
// decided by cross-multiplication, so results never depend on how far a
// value has been simplified.  A multivariate gcd cancellation runs whenever
// the combined size of numerator and denominator exceeds kGcdThreshold.
class BaseScalar {
 public:
  static constexpr std::size_t kGcdThreshold = 3;

  BaseScalar() = default;
  BaseScalar(long v) : num_(0, Rational(v)), den_(0, Rational(1)) {}
  BaseScalar(const Rational& v, std::size_t arity = 0) : num_(arity, v), den_(arity, Rational(1)) {}
  explicit BaseScalar(BasePolynomial num);
  BaseScalar(BasePolynomial num, BasePolynomial den);

  static BaseScalar parameter(std::size_t arity, std::size_t index);

  const BasePolynomial& num() const { return num_; }
  const BasePolynomial& den() const { return den_; }
  std::size_t arity() const { return std::max(num_.arity(), den_.arity()); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_constant() const;
  Rational constant_value() const;

  BaseScalar operator-() const;
  BaseScalar& operator+=(const BaseScalar& o);
  BaseScalar& operator-=(const BaseScalar& o);
  BaseScalar& operator*=(const BaseScalar& o);
  BaseScalar& operator/=(const BaseScalar& o);
  friend BaseScalar operator+(BaseScalar a, const BaseScalar& b) { return a += b; }
  friend BaseScalar operator-(BaseScalar a, const BaseScalar& b) { return a -= b; }
  friend BaseScalar operator*(BaseScalar a, const BaseScalar& b) { return a *= b; }
  friend BaseScalar operator/(BaseScalar a, const BaseScalar& b) { return a /= b; }
  friend bool operator==(const BaseScalar& a, const BaseScalar& b);
  friend bool operator!=(const BaseScalar& a, const BaseScalar& b) { return !(a == b); }

  BaseScalar inverse() const;
  BaseScalar pow(int n) const;
  BaseScalar derivative(std::size_t var) const;
  BaseScalar substitute(std::size_t var, const Rational& value) const;

  // Fully reduced form: gcd-cancelled, integer coefficients, denominator with
  // positive leading coefficient and unit content.
  BaseScalar canonical() const;
  std::string to_string(const Names& names) const;
  std::string to_string() const { return to_string(default_names(arity())); }

 private:
  BasePolynomial num_{0, Rational(0)};
  BasePolynomial den_{0, Rational(1)};
  void normalize();
};

}  // namespace gmdet
