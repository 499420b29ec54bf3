#include "gmdet/curve.hpp"

#include <sstream>

#include "gmdet/errors.hpp"

namespace gmdet {

CurvePolynomial::CurvePolynomial(std::vector<BaseScalar> coeffs) : c_(std::move(coeffs)) { trim(); }

CurvePolynomial::CurvePolynomial(const BaseScalar& c) {
  if (!c.is_zero()) c_.push_back(c);
}

CurvePolynomial CurvePolynomial::t() { return CurvePolynomial(std::vector<BaseScalar>{BaseScalar(0), BaseScalar(1)}); }

CurvePolynomial CurvePolynomial::linear_factor(const BaseScalar& e) {
  return CurvePolynomial(std::vector<BaseScalar>{-e, BaseScalar(1)});
}

void CurvePolynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BaseScalar CurvePolynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return BaseScalar(0);
  return c_[i];
}

CurvePolynomial CurvePolynomial::operator-() const {
  CurvePolynomial r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

CurvePolynomial& CurvePolynomial::operator+=(const CurvePolynomial& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), BaseScalar(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

CurvePolynomial& CurvePolynomial::operator-=(const CurvePolynomial& o) { return *this += -o; }

CurvePolynomial& CurvePolynomial::operator*=(const BaseScalar& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

CurvePolynomial operator*(const CurvePolynomial& a, const CurvePolynomial& b) {
  if (a.is_zero() || b.is_zero()) return CurvePolynomial();
  std::vector<BaseScalar> c(a.c_.size() + b.c_.size() - 1, BaseScalar(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return CurvePolynomial(std::move(c));
}

bool operator==(const CurvePolynomial& a, const CurvePolynomial& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

std::pair<CurvePolynomial, CurvePolynomial> CurvePolynomial::divmod(const CurvePolynomial& d) const {
  if (d.is_zero()) throw InternalError("polynomial division by zero");
  CurvePolynomial r = *this;
  int dd = d.degree();
  if (r.degree() < dd) return {CurvePolynomial(), r};
  std::vector<BaseScalar> q(r.degree() - dd + 1, BaseScalar(0));
  BaseScalar inv = d.leading().inverse();
  while (!r.is_zero() && r.degree() >= dd) {
    int shift = r.degree() - dd;
    BaseScalar f = r.leading() * inv;
    q[shift] = f;
    for (int i = 0; i <= dd; ++i) r.c_[i + shift] -= f * d.c_[i];
    r.c_.pop_back();
    r.trim();
  }
  return {CurvePolynomial(std::move(q)), r};
}

CurvePolynomial CurvePolynomial::pow(unsigned n) const {
  CurvePolynomial r(1), b = *this;
  while (n) {
    if (n & 1u) r = r * b;
    n >>= 1u;
    if (n) b = b * b;
  }
  return r;
}

CurvePolynomial CurvePolynomial::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

CurvePolynomial CurvePolynomial::derivative() const {
  std::vector<BaseScalar> c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * BaseScalar(static_cast<long>(i)));
  return CurvePolynomial(std::move(c));
}

CurvePolynomial CurvePolynomial::derivative_param(std::size_t var) const {
  std::vector<BaseScalar> c;
  for (const auto& x : c_) c.push_back(x.derivative(var));
  return CurvePolynomial(std::move(c));
}

CurvePolynomial CurvePolynomial::substitute(std::size_t var, const Rational& value) const {
  std::vector<BaseScalar> c;
  for (const auto& x : c_) c.push_back(x.substitute(var, value));
  return CurvePolynomial(std::move(c));
}

BaseScalar CurvePolynomial::eval(const BaseScalar& x) const {
  BaseScalar r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

CurvePolynomial CurvePolynomial::taylor_shift(const BaseScalar& e) const {
  if (e.is_zero()) return *this;
  std::vector<BaseScalar> r(c_.size(), BaseScalar(0));
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    for (std::size_t i = r.size() - 1; i > 0; --i) r[i] = r[i] * e + r[i - 1];
    r[0] = r[0] * e + *it;
  }
  return CurvePolynomial(std::move(r));
}

int CurvePolynomial::order_at(const BaseScalar& e) const {
  if (is_zero()) return -1;
  CurvePolynomial s = taylor_shift(e);
  int k = 0;
  while (s.c_[k].is_zero()) ++k;
  return k;
}

std::string CurvePolynomial::to_string(const Names& names, const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    std::string g = c_[i].to_string(names);
    std::string mono = i == 0 ? "" : i == 1 ? var : var + "^" + std::to_string(i);
    std::string term;
    if (mono.empty()) {
      term = g;
    } else if (g == "1") {
      term = mono;
    } else if (g == "-1") {
      term = "-" + mono;
    } else {
      bool simple = g.find_first_of("+-/", 1) == std::string::npos;
      term = (simple ? g : "(" + g + ")") + "*" + mono;
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

namespace {

std::size_t coefficient_arity(const CurvePolynomial& p) {
  std::size_t n = 0;
  for (int i = 0; i <= p.degree(); ++i) n = std::max(n, p.coeff(i).arity());
  return n;
}

bool constant_coefficients(const CurvePolynomial& p) {
  for (int i = 0; i <= p.degree(); ++i)
    if (!p.coeff(i).is_constant()) return false;
  return true;
}

// p with denominators cleared, as a polynomial in (a_1, ..., a_n, t).
BasePolynomial lift(const CurvePolynomial& p, std::size_t arity) {
  BasePolynomial den(arity, Rational(1));
  for (int i = 0; i <= p.degree(); ++i) {
    BasePolynomial d = p.coeff(i).den();
    if (d.is_constant()) continue;
    BasePolynomial g = gcd(den, d);
    den = *(den * d).divide_exact(g);
  }
  BasePolynomial out(arity + 1);
  for (int i = 0; i <= p.degree(); ++i) {
    BaseScalar c = p.coeff(i);
    if (c.is_zero()) continue;
    BasePolynomial q = c.num() * *den.divide_exact(c.den());
    for (const auto& t : q.terms()) {
      Exponents e = t.exps;
      e.resize(arity + 1, 0);
      e[arity] = static_cast<std::uint32_t>(i);
      out += BasePolynomial::monomial(e, t.coeff);
    }
  }
  return out;
}

CurvePolynomial drop(const BasePolynomial& q, std::size_t arity) {
  std::vector<BasePolynomial> c;
  for (const auto& t : q.terms()) {
    std::size_t i = t.exps.size() > arity ? t.exps[arity] : 0;
    if (c.size() <= i) c.resize(i + 1, BasePolynomial(arity));
    Exponents e(t.exps.begin(), t.exps.begin() + static_cast<long>(std::min(arity, t.exps.size())));
    e.resize(arity, 0);
    c[i] += BasePolynomial::monomial(e, t.coeff);
  }
  std::vector<BaseScalar> coeffs;
  for (auto& x : c) coeffs.push_back(BaseScalar(std::move(x)));
  return CurvePolynomial(coeffs);
}

}  // namespace

CurvePolynomial gcd(const CurvePolynomial& a0, const CurvePolynomial& b0) {
  if (a0.is_zero()) return b0.is_zero() ? b0 : b0.monic();
  if (b0.is_zero()) return a0.monic();
  if (a0.degree() == 0 || b0.degree() == 0) return CurvePolynomial(BaseScalar(1));
  if (constant_coefficients(a0) && constant_coefficients(b0)) {
    CurvePolynomial a = a0, b = b0;
    while (!b.is_zero()) {
      CurvePolynomial r = a.divmod(b).second;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic();
  }
  std::size_t n = std::max(coefficient_arity(a0), coefficient_arity(b0));
  return drop(gcd(lift(a0, n), lift(b0, n)), n).monic();
}

std::optional<CurvePolynomial> inverse_mod(const CurvePolynomial& a, const CurvePolynomial& h) {
  CurvePolynomial r0 = h, r1 = a.divmod(h).second;
  CurvePolynomial s0(0), s1(1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    CurvePolynomial s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) return std::nullopt;
  return (s0 * r0.leading().inverse()).divmod(h).second;
}

BaseScalar resultant(const CurvePolynomial& p, const CurvePolynomial& q) {
  if (p.is_zero() || q.is_zero()) return BaseScalar(0);
  if (q.degree() == 0) return q.leading().pow(p.degree());
  if (p.degree() == 0) return p.leading().pow(q.degree());
  CurvePolynomial a = p, b = q;
  BaseScalar acc(1);
  while (b.degree() > 0) {
    CurvePolynomial r = a.divmod(b).second;
    if (r.is_zero()) return BaseScalar(0);
    int da = a.degree(), db = b.degree(), dr = r.degree();
    if ((da * db) % 2) acc = -acc;
    acc *= b.leading().pow(da - dr);
    a = std::move(b);
    b = std::move(r);
  }
  return acc * b.leading().pow(a.degree());
}

BaseScalar discriminant(const CurvePolynomial& p) {
  int n = p.degree();
  if (n < 1) throw InputError("discriminant of a constant polynomial");
  BaseScalar r = resultant(p, p.derivative()) / p.leading();
  if ((n * (n - 1) / 2) % 2) r = -r;
  return r;
}

// ---------------------------------------------------------------------------

CurveFunction::CurveFunction(CurvePolynomial num, CurvePolynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw InputError("division by zero rational function");
  if (num_.is_zero()) {
    den_ = CurvePolynomial(1);
    return;
  }
  BaseScalar lc = den_.leading();
  if (!lc.is_one()) {
    BaseScalar inv = lc.inverse();
    num_ *= inv;
    den_ *= inv;
  }
}

CurveFunction CurveFunction::operator-() const {
  CurveFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

CurveFunction& CurveFunction::operator+=(const CurveFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    *this = CurveFunction(num_ + o.num_, den_);
  } else if (o.is_polynomial()) {
    *this = CurveFunction(num_ + o.num_ * den_, den_);
  } else if (is_polynomial()) {
    *this = CurveFunction(num_ * o.den_ + o.num_, o.den_);
  } else {
    CurvePolynomial g = gcd(den_, o.den_);
    if (g.degree() == 0) {
      *this = CurveFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    } else {
      CurvePolynomial od = o.den_.divmod(g).first, md = den_.divmod(g).first;
      *this = CurveFunction(num_ * od + o.num_ * md, den_ * od);
    }
  }
  if (num_.is_zero()) den_ = CurvePolynomial(1);
  return *this;
}

CurveFunction& CurveFunction::operator-=(const CurveFunction& o) { return *this += -o; }

CurveFunction& CurveFunction::operator*=(const CurveFunction& o) {
  if (is_zero() || o.is_zero()) return *this = CurveFunction();
  if (is_polynomial() && o.is_polynomial()) return *this = CurveFunction(num_ * o.num_);
  return *this = CurveFunction(num_ * o.num_, den_ * o.den_).reduced();
}

CurveFunction& CurveFunction::operator/=(const CurveFunction& o) {
  if (o.is_zero()) throw InputError("division by zero rational function");
  return *this = CurveFunction(num_ * o.den_, den_ * o.num_).reduced();
}

bool operator==(const CurveFunction& a, const CurveFunction& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

CurveFunction CurveFunction::pow(int n) const {
  if (n < 0) return (CurveFunction(1) / *this).pow(-n);
  return CurveFunction(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
}

CurveFunction CurveFunction::derivative() const {
  if (is_polynomial()) return CurveFunction(num_.derivative() * den_.leading().inverse());
  return CurveFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_).reduced();
}

CurveFunction CurveFunction::derivative_param(std::size_t var) const {
  CurvePolynomial dn = num_.derivative_param(var), dd = den_.derivative_param(var);
  if (dd.is_zero()) return CurveFunction(dn, den_);
  return CurveFunction(dn * den_ - num_ * dd, den_ * den_).reduced();
}

CurveFunction CurveFunction::substitute(std::size_t var, const Rational& value) const {
  return CurveFunction(num_.substitute(var, value), den_.substitute(var, value)).reduced();
}

CurveFunction CurveFunction::reduced() const {
  if (is_zero() || den_.degree() == 0) return *this;
  CurvePolynomial g = gcd(num_, den_);
  if (g.degree() == 0) return *this;
  return CurveFunction(num_.divmod(g).first, den_.divmod(g).first);
}

int CurveFunction::valuation_at(const BaseScalar& e) const {
  if (is_zero()) throw InternalError("valuation of zero function");
  return num_.order_at(e) - den_.order_at(e);
}

int CurveFunction::valuation_at_infinity() const {
  if (is_zero()) throw InternalError("valuation of zero function");
  return den_.degree() - num_.degree();
}

std::string CurveFunction::to_string(const Names& names) const {
  std::string n = num_.to_string(names);
  if (den_.degree() == 0) return n;
  return "(" + n + ")/(" + den_.to_string(names) + ")";
}

bool MixedTwoForm::is_zero() const {
  for (const auto& f : dt_da)
    if (!f.is_zero()) return false;
  for (const auto& f : da_da)
    if (!f.is_zero()) return false;
  return true;
}

MixedOneForm exterior_d(const CurveFunction& f, std::size_t arity) {
  MixedOneForm w;
  w.dt = f.derivative();
  for (std::size_t j = 0; j < arity; ++j) w.da.push_back(f.derivative_param(j));
  return w;
}

MixedTwoForm exterior_d(const MixedOneForm& w) {
  MixedTwoForm r;
  std::size_t k = w.da.size();
  for (std::size_t j = 0; j < k; ++j) r.dt_da.push_back(w.da[j].derivative() - w.dt.derivative_param(j));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) r.da_da.push_back(w.da[j].derivative_param(i) - w.da[i].derivative_param(j));
  return r;
}

}  // namespace gmdet
