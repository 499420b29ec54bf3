#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gmdet {

using Rational = mpq_class;
using Exponents = std::vector<std::uint32_t>;
using Names = std::vector<std::string>;

Names default_names(std::size_t arity);
std::string rational_to_string(const Rational& q);

// Sparse polynomial in the base parameters a1..ak with rational coefficients.
// Terms are kept sorted by decreasing graded-lex order with nonzero
// coefficients; the zero polynomial has no terms.  An arity-0 constant
// combines with polynomials of any arity.
class BasePolynomial {
 public:
  struct Term {
    Exponents exps;
    Rational coeff;
  };

  BasePolynomial() = default;
  explicit BasePolynomial(std::size_t arity) : arity_(arity) {}
  BasePolynomial(std::size_t arity, const Rational& c);

  static BasePolynomial variable(std::size_t arity, std::size_t index);
  static BasePolynomial monomial(const Exponents& exps, const Rational& c);

  std::size_t arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;
  const Term& leading() const { return terms_.front(); }
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const;

  BasePolynomial operator-() const;
  BasePolynomial& operator+=(const BasePolynomial& o);
  BasePolynomial& operator-=(const BasePolynomial& o);
  BasePolynomial& operator*=(const BasePolynomial& o);
  BasePolynomial& operator*=(const Rational& c);

  friend BasePolynomial operator+(BasePolynomial a, const BasePolynomial& b) { return a += b; }
  friend BasePolynomial operator-(BasePolynomial a, const BasePolynomial& b) { return a -= b; }
  friend BasePolynomial operator*(const BasePolynomial& a, const BasePolynomial& b);
  friend BasePolynomial operator*(BasePolynomial a, const Rational& c) { return a *= c; }
  friend bool operator==(const BasePolynomial& a, const BasePolynomial& b);

  BasePolynomial pow(unsigned n) const;
  BasePolynomial derivative(std::size_t var) const;
  BasePolynomial substitute(std::size_t var, const Rational& value) const;
  BasePolynomial shift_exponents(const Exponents& by, bool down) const;
  Exponents min_exponents() const;

  // Quotient if d divides *this exactly, nullopt otherwise.
  std::optional<BasePolynomial> divide_exact(const BasePolynomial& d) const;

  // Positive rational c with (*this / c) having coprime integer coefficients.
  Rational content() const;
  // Leading coefficient scaled to one.
  BasePolynomial monic() const;

  std::string to_string(const Names& names) const;
  std::string to_string() const { return to_string(default_names(arity_)); }

 private:
  std::size_t arity_ = 0;
  std::vector<Term> terms_;

  friend class PolyBuilder;
  void promote_to(std::size_t arity);
  static std::size_t joint_arity(const BasePolynomial& a, const BasePolynomial& b);
};

// Greatest common divisor over Q, normalised monic in graded-lex order.
BasePolynomial gcd(const BasePolynomial& a, const BasePolynomial& b);

bool grlex_greater(const Exponents& a, const Exponents& b);

}  // namespace gmdet
