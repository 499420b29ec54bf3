#pragma once

#include <string>
#include <vector>

#include "gmdet/scalar.hpp"

namespace gmdet {

// Sum of g_j da_j.  An empty coefficient list is the zero form of any arity.
class BaseOneForm {
 public:
  BaseOneForm() = default;
  explicit BaseOneForm(std::vector<BaseScalar> coeffs) : c_(std::move(coeffs)) {}
  static BaseOneForm zero(std::size_t arity);
  static BaseOneForm basis(std::size_t arity, std::size_t j, const BaseScalar& g = BaseScalar(1));

  std::size_t arity() const { return c_.size(); }
  BaseScalar operator[](std::size_t j) const { return j < c_.size() ? c_[j] : BaseScalar(0); }
  const std::vector<BaseScalar>& coeffs() const { return c_; }
  bool is_zero() const;

  BaseOneForm operator-() const;
  BaseOneForm& operator+=(const BaseOneForm& o);
  BaseOneForm& operator-=(const BaseOneForm& o);
  BaseOneForm& operator*=(const BaseScalar& s);
  friend BaseOneForm operator+(BaseOneForm a, const BaseOneForm& b) { return a += b; }
  friend BaseOneForm operator-(BaseOneForm a, const BaseOneForm& b) { return a -= b; }
  friend BaseOneForm operator*(BaseOneForm a, const BaseScalar& s) { return a *= s; }
  friend BaseOneForm operator*(const BaseScalar& s, BaseOneForm a) { return a *= s; }
  friend bool operator==(const BaseOneForm& a, const BaseOneForm& b);
  friend bool operator!=(const BaseOneForm& a, const BaseOneForm& b) { return !(a == b); }

  BaseOneForm substitute(std::size_t var, const Rational& value) const;
  std::string to_string(const Names& names) const;
  std::string to_string() const { return to_string(default_names(arity())); }

 private:
  std::vector<BaseScalar> c_;
};

// Sum over i<j of w_ij da_i^da_j.
class BaseTwoForm {
 public:
  BaseTwoForm() = default;
  explicit BaseTwoForm(std::size_t arity);
  std::size_t arity() const { return arity_; }
  BaseScalar get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, BaseScalar w);
  bool is_zero() const;
  std::string to_string(const Names& names) const;

 private:
  std::size_t arity_ = 0;
  std::vector<BaseScalar> w_;
  std::size_t index(std::size_t i, std::size_t j) const;
};

BaseOneForm d_base(const BaseScalar& g);
BaseTwoForm exterior_d(const BaseOneForm& w);
BaseOneForm dlog(const BaseScalar& u);

}  // namespace gmdet
