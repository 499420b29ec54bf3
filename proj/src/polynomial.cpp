#include "gmdet/polynomial.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "gmdet/errors.hpp"

namespace gmdet {

namespace {

std::uint32_t degree_of(const Exponents& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

int grlex_cmp(const Exponents& a, const Exponents& b) {
  auto da = degree_of(a), db = degree_of(b);
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  return 0;
}

using Term = BasePolynomial::Term;

void canonicalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return grlex_cmp(x.exps, y.exps) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exps == t.exps) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  terms = std::move(out);
}

}  // namespace

class PolyBuilder {
 public:
  static BasePolynomial make(std::size_t arity, std::vector<Term> terms) {
    BasePolynomial p(arity);
    canonicalize(terms);
    p.terms_ = std::move(terms);
    return p;
  }
};

bool grlex_greater(const Exponents& a, const Exponents& b) { return grlex_cmp(a, b) > 0; }

Names default_names(std::size_t arity) {
  Names n;
  for (std::size_t i = 0; i < arity; ++i) n.push_back("a" + std::to_string(i + 1));
  return n;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

BasePolynomial::BasePolynomial(std::size_t arity, const Rational& c) : arity_(arity) {
  if (sgn(c) != 0) terms_.push_back({Exponents(arity, 0), c});
  if (!terms_.empty()) terms_[0].coeff.canonicalize();
}

BasePolynomial BasePolynomial::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw InputError("parameter index out of range");
  BasePolynomial p(arity);
  Exponents e(arity, 0);
  e[index] = 1;
  p.terms_.push_back({e, Rational(1)});
  return p;
}

BasePolynomial BasePolynomial::monomial(const Exponents& exps, const Rational& c) {
  BasePolynomial p(exps.size());
  if (sgn(c) != 0) p.terms_.push_back({exps, c});
  if (!p.terms_.empty()) p.terms_[0].coeff.canonicalize();
  return p;
}

bool BasePolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_[0].exps) == 0);
}

Rational BasePolynomial::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw InternalError("constant_value of non-constant polynomial");
  return terms_[0].coeff;
}

std::uint32_t BasePolynomial::total_degree() const {
  return terms_.empty() ? 0 : degree_of(terms_.front().exps);
}

std::uint32_t BasePolynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_)
    if (var < t.exps.size()) d = std::max(d, t.exps[var]);
  return d;
}

bool BasePolynomial::depends_on(std::size_t var) const { return degree_in(var) > 0; }

void BasePolynomial::promote_to(std::size_t arity) {
  if (arity == arity_) return;
  if (!is_constant()) throw InternalError("arity mismatch between parameter polynomials");
  arity_ = arity;
  for (auto& t : terms_) t.exps.assign(arity, 0);
}

std::size_t BasePolynomial::joint_arity(const BasePolynomial& a, const BasePolynomial& b) {
  if (a.arity_ == b.arity_) return a.arity_;
  if (a.arity_ != 0 && b.arity_ != 0 && !a.is_constant() && !b.is_constant())
    throw InternalError("arity mismatch between parameter polynomials");
  return std::max(a.arity_, b.arity_);
}

BasePolynomial BasePolynomial::operator-() const {
  BasePolynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

BasePolynomial& BasePolynomial::operator+=(const BasePolynomial& o) {
  if (o.terms_.empty()) {
    if (o.arity_ > arity_ && is_constant()) promote_to(o.arity_);
    return *this;
  }
  std::size_t n = joint_arity(*this, o);
  promote_to(n);
  BasePolynomial other = o;
  other.promote_to(n);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    int c;
    if (i == terms_.size()) c = -1;
    else if (j == other.terms_.size()) c = 1;
    else c = grlex_cmp(terms_[i].exps, other.terms_[j].exps);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(other.terms_[j++]);
    } else {
      Rational s = terms_[i].coeff + other.terms_[j].coeff;
      if (sgn(s) != 0) out.push_back({std::move(terms_[i].exps), s});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

BasePolynomial& BasePolynomial::operator-=(const BasePolynomial& o) { return *this += -o; }

BasePolynomial operator*(const BasePolynomial& a, const BasePolynomial& b) {
  std::size_t n = BasePolynomial::joint_arity(a, b);
  if (a.terms_.empty() || b.terms_.empty()) return BasePolynomial(n);
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Exponents e(n, 0);
      for (std::size_t i = 0; i < x.exps.size(); ++i) e[i] += x.exps[i];
      for (std::size_t i = 0; i < y.exps.size(); ++i) e[i] += y.exps[i];
      terms.push_back({std::move(e), x.coeff * y.coeff});
    }
  }
  return PolyBuilder::make(n, std::move(terms));
}

BasePolynomial& BasePolynomial::operator*=(const BasePolynomial& o) { return *this = *this * o; }

BasePolynomial& BasePolynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

bool operator==(const BasePolynomial& a, const BasePolynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
    const auto& x = a.terms_[i].exps;
    const auto& y = b.terms_[i].exps;
    if (x.size() == y.size()) {
      if (x != y) return false;
    } else if (degree_of(x) != 0 || degree_of(y) != 0) {
      return false;
    }
  }
  return true;
}

BasePolynomial BasePolynomial::pow(unsigned n) const {
  BasePolynomial result(arity_, Rational(1));
  BasePolynomial base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

BasePolynomial BasePolynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (var >= t.exps.size() || t.exps[var] == 0) continue;
    Term d = t;
    d.coeff *= t.exps[var];
    d.exps[var] -= 1;
    out.push_back(std::move(d));
  }
  return PolyBuilder::make(arity_, std::move(out));
}

BasePolynomial BasePolynomial::substitute(std::size_t var, const Rational& value) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Term s = t;
    if (var < t.exps.size() && t.exps[var] > 0) {
      Rational p = 1;
      for (std::uint32_t i = 0; i < t.exps[var]; ++i) p *= value;
      s.coeff *= p;
      s.exps[var] = 0;
    }
    out.push_back(std::move(s));
  }
  return PolyBuilder::make(arity_, std::move(out));
}

Exponents BasePolynomial::min_exponents() const {
  if (terms_.empty()) return Exponents(arity_, 0);
  Exponents m = terms_.front().exps;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.exps[i]);
  return m;
}

BasePolynomial BasePolynomial::shift_exponents(const Exponents& by, bool down) const {
  BasePolynomial r = *this;
  for (auto& t : r.terms_)
    for (std::size_t i = 0; i < by.size() && i < t.exps.size(); ++i) {
      if (down) t.exps[i] -= by[i];
      else t.exps[i] += by[i];
    }
  return r;
}

std::optional<BasePolynomial> BasePolynomial::divide_exact(const BasePolynomial& d) const {
  if (d.is_zero()) throw InternalError("division by zero polynomial");
  std::size_t n = joint_arity(*this, d);
  BasePolynomial r = *this;
  r.promote_to(n);
  BasePolynomial dd = d;
  dd.promote_to(n);
  if (dd.is_constant()) {
    r *= Rational(1) / dd.constant_value();
    return r;
  }
  const Term& lt = dd.terms_.front();
  std::vector<Term> q;
  while (!r.is_zero()) {
    const Term& rt = r.terms_.front();
    Exponents e(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (rt.exps[i] < lt.exps[i]) return std::nullopt;
      e[i] = rt.exps[i] - lt.exps[i];
    }
    Rational c = rt.coeff / lt.coeff;
    BasePolynomial step = monomial(e, c);
    q.push_back({e, c});
    r -= step * dd;
  }
  return PolyBuilder::make(n, std::move(q));
}

Rational BasePolynomial::content() const {
  if (terms_.empty()) return 1;
  mpz_class g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(g, l);
  c.canonicalize();
  return c;
}

BasePolynomial BasePolynomial::monic() const {
  if (terms_.empty()) return *this;
  BasePolynomial r = *this;
  r *= Rational(1) / terms_.front().coeff;
  return r;
}

std::string BasePolynomial::to_string(const Names& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (neg) os << "-";
    else if (!first) os << "+";
    first = false;
    bool unit = degree_of(t.exps) == 0;
    bool wrote = false;
    if (unit || c != 1) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (t.exps[i] == 0) continue;
      if (wrote) os << "*";
      os << (i < names.size() ? names[i] : "a" + std::to_string(i + 1));
      if (t.exps[i] > 1) os << "^" << t.exps[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Multivariate gcd by recursive primitive polynomial remainder sequences.

namespace {

using Poly = BasePolynomial;
using UPoly = std::vector<Poly>;  // coefficients in a distinguished variable

UPoly to_univariate(const Poly& p, std::size_t var) {
  UPoly u(p.degree_in(var) + 1, Poly(p.arity()));
  std::vector<std::vector<Term>> buckets(u.size());
  for (const auto& t : p.terms()) {
    Term s = t;
    std::uint32_t k = s.exps[var];
    s.exps[var] = 0;
    buckets[k].push_back(std::move(s));
  }
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = PolyBuilder::make(p.arity(), std::move(buckets[k]));
  return u;
}

Poly from_univariate(const UPoly& u, std::size_t var, std::size_t arity) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < u.size(); ++k)
    for (const auto& t : u[k].terms()) {
      Term s = t;
      s.exps.resize(arity, 0);
      s.exps[var] += static_cast<std::uint32_t>(k);
      terms.push_back(std::move(s));
    }
  return PolyBuilder::make(arity, std::move(terms));
}

void trim(UPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Poly gcd_rec(const Poly& a, const Poly& b);

Poly content_in(const UPoly& u) {
  Poly g(u.empty() ? 0 : u.front().arity());
  for (const auto& c : u) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_rec(g, c);
    if (g.is_constant()) return Poly(g.arity(), Rational(1));
  }
  return g;
}

UPoly divide_coeffs(const UPoly& u, const Poly& c) {
  UPoly out;
  out.reserve(u.size());
  for (const auto& x : u) {
    auto q = x.divide_exact(c);
    if (!q) throw InternalError("content does not divide coefficient");
    out.push_back(std::move(*q));
  }
  return out;
}

UPoly pseudo_remainder(UPoly r, const UPoly& b) {
  const Poly& lb = b.back();
  std::size_t db = b.size() - 1;
  trim(r);
  while (!r.empty() && r.size() - 1 >= db) {
    Poly lr = r.back();
    std::size_t shift = r.size() - 1 - db;
    for (auto& c : r) c *= lb;
    for (std::size_t i = 0; i <= db; ++i) r[i + shift] -= lr * b[i];
    trim(r);
  }
  return r;
}

void make_primitive(UPoly& u) {
  mpz_class g = 0, l = 1;
  for (const auto& c : u)
    for (const auto& t : c.terms()) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
  if (g == 0) return;
  Rational f(l, g);
  f.canonicalize();
  for (auto& c : u) c *= f;
}

Rational eval_at(const Poly& p, const std::vector<Rational>& at) {
  Rational s = 0;
  for (const auto& t : p.terms()) {
    Rational x = t.coeff;
    for (std::size_t i = 0; i < t.exps.size(); ++i)
      for (std::uint32_t k = 0; k < t.exps[i]; ++k) x *= at[i];
    s += x;
  }
  return s;
}

std::vector<Rational> image(const UPoly& u, const std::vector<Rational>& at) {
  std::vector<Rational> out;
  for (const auto& c : u) out.push_back(eval_at(c, at));
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::size_t univariate_gcd_degree(std::vector<Rational> a, std::vector<Rational> b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      Rational q = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
      a.pop_back();
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Degree in the main variable of the gcd of the images at a fixed point, or
// nothing when a leading coefficient vanishes there.  The image degree bounds
// the true gcd degree from above.
std::optional<std::size_t> image_gcd_degree(const UPoly& a, const UPoly& b, std::size_t arity) {
  static const long kPoints[] = {3, 7, 13, 19, 29, 37, 43, 53, 61, 71, 79, 89};
  std::vector<Rational> at(arity);
  for (std::size_t i = 0; i < arity; ++i) at[i] = Rational(kPoints[i % 12] + 97 * static_cast<long>(i / 12), 1 + i % 5);
  auto ia = image(a, at), ib = image(b, at);
  if (ia.size() != a.size() || ib.size() != b.size()) return std::nullopt;
  return univariate_gcd_degree(ia, ib);
}

std::vector<std::size_t> variables_of(const Poly& p) {
  std::vector<std::size_t> vs;
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (p.depends_on(i)) vs.push_back(i);
  return vs;
}

Poly gcd_rec(const Poly& a0, const Poly& b0) {
  if (a0.is_zero()) return b0.monic();
  if (b0.is_zero()) return a0.monic();
  std::size_t n = std::max(a0.arity(), b0.arity());
  if (a0.is_constant() || b0.is_constant()) return Poly(n, Rational(1));

  Exponents ma = a0.min_exponents(), mb = b0.min_exponents();
  Exponents mg(n, 0);
  for (std::size_t i = 0; i < n; ++i) mg[i] = std::min(ma[i], mb[i]);
  Poly a = a0.shift_exponents(ma, true);
  Poly b = b0.shift_exponents(mb, true);
  Poly mono = Poly::monomial(mg, Rational(1));

  auto va = variables_of(a), vb = variables_of(b);
  if (va.empty() || vb.empty()) return mono;
  for (auto v : va)
    if (!std::binary_search(vb.begin(), vb.end(), v)) return (gcd_rec(content_in(to_univariate(a, v)), b) * mono).monic();
  for (auto v : vb)
    if (!std::binary_search(va.begin(), va.end(), v)) return (gcd_rec(a, content_in(to_univariate(b, v))) * mono).monic();

  std::size_t var = va.front();
  std::uint32_t best = a.degree_in(var) + b.degree_in(var);
  for (auto v : va) {
    std::uint32_t d = a.degree_in(v) + b.degree_in(v);
    if (d < best) {
      best = d;
      var = v;
    }
  }
  UPoly ua = to_univariate(a, var), ub = to_univariate(b, var);
  Poly ca = content_in(ua), cb = content_in(ub);
  Poly c = gcd_rec(ca, cb);
  ua = divide_coeffs(ua, ca);
  ub = divide_coeffs(ub, cb);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  make_primitive(ua);
  make_primitive(ub);
  if (auto d = image_gcd_degree(ua, ub, n)) {
    if (*d == 0) return (c * mono).monic();
    if (*d == ub.size() - 1 && from_univariate(ua, var, n).divide_exact(from_univariate(ub, var, n)))
      return (from_univariate(ub, var, n) * c * mono).monic();
  }
  UPoly g;
  while (true) {
    UPoly r = pseudo_remainder(ua, ub);
    if (r.empty()) {
      g = ub;
      break;
    }
    if (r.size() == 1) {
      g = UPoly{Poly(n, Rational(1))};
      break;
    }
    ua = std::move(ub);
    ub = divide_coeffs(r, content_in(r));
    make_primitive(ub);
  }
  Poly gp = from_univariate(divide_coeffs(g, content_in(g)), var, n);
  return (gp * c * mono).monic();
}

}  // namespace

BasePolynomial gcd(const BasePolynomial& a, const BasePolynomial& b) { return gcd_rec(a, b); }

}  // namespace gmdet
