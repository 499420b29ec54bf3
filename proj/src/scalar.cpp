#include "gmdet/scalar.hpp"

#include "gmdet/errors.hpp"

namespace gmdet {

BaseScalar::BaseScalar(BasePolynomial num) : num_(std::move(num)), den_(num_.arity(), Rational(1)) {}

BaseScalar::BaseScalar(BasePolynomial num, BasePolynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw InputError("division by zero in K");
  normalize();
}

BaseScalar BaseScalar::parameter(std::size_t arity, std::size_t index) {
  return BaseScalar(BasePolynomial::variable(arity, index));
}

void BaseScalar::normalize() {
  std::size_t n = arity();
  if (num_.is_zero()) {
    num_ = BasePolynomial(n);
    den_ = BasePolynomial(n, Rational(1));
    return;
  }
  if (den_.is_constant()) {
    num_ *= Rational(1) / den_.constant_value();
    den_ = BasePolynomial(n, Rational(1));
    return;
  }
  Exponents mn = num_.min_exponents(), md = den_.min_exponents();
  bool shift = false;
  for (std::size_t i = 0; i < mn.size() && i < md.size(); ++i) {
    mn[i] = std::min(mn[i], md[i]);
    if (mn[i]) shift = true;
  }
  if (shift) {
    num_ = num_.shift_exponents(mn, true);
    den_ = den_.shift_exponents(mn, true);
  }
  if (num_.size() + den_.size() > kGcdThreshold && !num_.is_constant()) {
    BasePolynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  Rational lc = den_.leading().coeff;
  if (lc != 1) {
    num_ *= Rational(1) / lc;
    den_ *= Rational(1) / lc;
  }
  if (den_.is_constant()) den_ = BasePolynomial(n, Rational(1));
}

bool BaseScalar::is_constant() const { return num_.is_constant() && den_.is_constant(); }

Rational BaseScalar::constant_value() const {
  if (!is_constant()) {
    BaseScalar c = canonical();
    if (!c.is_constant()) throw InternalError("constant_value of non-constant scalar");
    return c.constant_value();
  }
  return num_.constant_value() / den_.constant_value();
}

BaseScalar BaseScalar::operator-() const {
  BaseScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

BaseScalar& BaseScalar::operator+=(const BaseScalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else if (o.den_.is_constant()) {
    num_ += o.num_ * den_ * (Rational(1) / o.den_.constant_value());
  } else if (den_.is_constant()) {
    num_ = num_ * o.den_ * (Rational(1) / den_.constant_value()) + o.num_;
    den_ = o.den_;
  } else {
    BasePolynomial g = gcd(den_, o.den_);
    if (g.is_constant()) {
      num_ = num_ * o.den_ + o.num_ * den_;
      den_ *= o.den_;
    } else {
      BasePolynomial od = *o.den_.divide_exact(g);
      BasePolynomial md = *den_.divide_exact(g);
      num_ = num_ * od + o.num_ * md;
      den_ = den_ * od;
    }
  }
  normalize();
  return *this;
}

BaseScalar& BaseScalar::operator-=(const BaseScalar& o) { return *this += -o; }

BaseScalar& BaseScalar::operator*=(const BaseScalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = BaseScalar(Rational(0), std::max(arity(), o.arity()));
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

BaseScalar& BaseScalar::operator/=(const BaseScalar& o) { return *this *= o.inverse(); }

BaseScalar BaseScalar::inverse() const {
  if (is_zero()) throw InputError("division by zero in K");
  return BaseScalar(den_, num_);
}

BaseScalar BaseScalar::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  BaseScalar r = *this;
  r.num_ = num_.pow(static_cast<unsigned>(n));
  r.den_ = den_.pow(static_cast<unsigned>(n));
  return r;
}

bool operator==(const BaseScalar& a, const BaseScalar& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

BaseScalar BaseScalar::derivative(std::size_t var) const {
  if (!num_.depends_on(var) && !den_.depends_on(var)) return BaseScalar(Rational(0), arity());
  if (den_.is_constant()) return BaseScalar(num_.derivative(var), den_);
  return BaseScalar(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

BaseScalar BaseScalar::substitute(std::size_t var, const Rational& value) const {
  BasePolynomial d = den_.substitute(var, value);
  if (d.is_zero()) throw InputError("specialisation hits a pole of a coefficient");
  return BaseScalar(num_.substitute(var, value), d);
}

BaseScalar BaseScalar::canonical() const {
  BaseScalar r = *this;
  std::size_t n = arity();
  if (r.num_.is_zero()) return BaseScalar(Rational(0), n);
  BasePolynomial g = gcd(r.num_, r.den_);
  if (!g.is_constant()) {
    r.num_ = *r.num_.divide_exact(g);
    r.den_ = *r.den_.divide_exact(g);
  }
  Rational cn = r.num_.content(), cd = r.den_.content();
  r.num_ *= Rational(1) / cn;
  r.den_ *= Rational(1) / cd;
  Rational ratio = cn / cd;
  if (sgn(r.den_.leading().coeff) < 0) {
    r.den_ = -r.den_;
    ratio = -ratio;
  }
  r.num_ *= ratio.get_num();
  r.den_ *= ratio.get_den();
  return r;
}

std::string BaseScalar::to_string(const Names& names) const {
  BaseScalar c = canonical();
  std::string n = c.num_.to_string(names);
  if (c.den_.is_constant() && c.den_.constant_value() == 1) return n;
  std::string d = c.den_.to_string(names);
  bool num_atomic = c.num_.size() == 1 && n.find('/') == std::string::npos;
  bool den_atomic = c.den_.size() == 1 && c.den_.leading().exps == Exponents(c.den_.arity(), 0);
  std::string out = num_atomic ? n : "(" + n + ")";
  out += "/";
  out += den_atomic ? d : "(" + d + ")";
  return out;
}

}  // namespace gmdet
