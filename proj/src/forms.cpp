#include "gmdet/forms.hpp"

#include "gmdet/errors.hpp"

namespace gmdet {

namespace {

std::string wrap(const std::string& s) {
  bool simple = s.find_first_of("+-/", 1) == std::string::npos;
  return simple ? s : "(" + s + ")";
}

}  // namespace

BaseOneForm BaseOneForm::zero(std::size_t arity) {
  return BaseOneForm(std::vector<BaseScalar>(arity, BaseScalar(Rational(0), arity)));
}

BaseOneForm BaseOneForm::basis(std::size_t arity, std::size_t j, const BaseScalar& g) {
  BaseOneForm w = zero(arity);
  w.c_.at(j) = g;
  return w;
}

bool BaseOneForm::is_zero() const {
  for (const auto& g : c_)
    if (!g.is_zero()) return false;
  return true;
}

BaseOneForm BaseOneForm::operator-() const {
  BaseOneForm r = *this;
  for (auto& g : r.c_) g = -g;
  return r;
}

BaseOneForm& BaseOneForm::operator+=(const BaseOneForm& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), BaseScalar(0));
  for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

BaseOneForm& BaseOneForm::operator-=(const BaseOneForm& o) { return *this += -o; }

BaseOneForm& BaseOneForm::operator*=(const BaseScalar& s) {
  for (auto& g : c_) g *= s;
  return *this;
}

bool operator==(const BaseOneForm& a, const BaseOneForm& b) {
  std::size_t n = std::max(a.c_.size(), b.c_.size());
  for (std::size_t j = 0; j < n; ++j)
    if (a[j] != b[j]) return false;
  return true;
}

BaseOneForm BaseOneForm::substitute(std::size_t var, const Rational& value) const {
  BaseOneForm r = *this;
  for (std::size_t j = 0; j < r.c_.size(); ++j)
    r.c_[j] = j == var ? BaseScalar(Rational(0), r.c_[j].arity()) : r.c_[j].substitute(var, value);
  return r;
}

std::string BaseOneForm::to_string(const Names& names) const {
  std::string out;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].is_zero()) continue;
    std::string g = c_[j].to_string(names);
    std::string name = "d" + (j < names.size() ? names[j] : "a" + std::to_string(j + 1));
    std::string term;
    if (g == "1") term = name;
    else if (g == "-1") term = "-" + name;
    else if (g[0] == '-' && wrap(g.substr(1)) == g.substr(1)) term = g + "*" + name;
    else term = wrap(g) + "*" + name;
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

BaseTwoForm::BaseTwoForm(std::size_t arity)
    : arity_(arity), w_(arity * (arity > 0 ? arity - 1 : 0) / 2, BaseScalar(Rational(0), arity)) {}

std::size_t BaseTwoForm::index(std::size_t i, std::size_t j) const {
  if (!(i < j && j < arity_)) throw InternalError("two-form index out of range");
  return i * arity_ - i * (i + 1) / 2 + (j - i - 1);
}

BaseScalar BaseTwoForm::get(std::size_t i, std::size_t j) const {
  if (i == j) return BaseScalar(0);
  if (i > j) return -w_[index(j, i)];
  return w_[index(i, j)];
}

void BaseTwoForm::set(std::size_t i, std::size_t j, BaseScalar w) {
  if (i > j) w_[index(j, i)] = -w;
  else w_[index(i, j)] = std::move(w);
}

bool BaseTwoForm::is_zero() const {
  for (const auto& w : w_)
    if (!w.is_zero()) return false;
  return true;
}

std::string BaseTwoForm::to_string(const Names& names) const {
  std::string out;
  for (std::size_t i = 0; i < arity_; ++i)
    for (std::size_t j = i + 1; j < arity_; ++j) {
      const auto& w = w_[index(i, j)];
      if (w.is_zero()) continue;
      std::string g = w.to_string(names);
      std::string term = (g == "1" ? "" : g == "-1" ? "-" : wrap(g) + "*") + "d" + names.at(i) + "^d" + names.at(j);
      if (!out.empty() && term[0] != '-') out += "+";
      out += term;
    }
  return out.empty() ? "0" : out;
}

BaseOneForm d_base(const BaseScalar& g) {
  std::size_t k = g.arity();
  std::vector<BaseScalar> c;
  c.reserve(k);
  for (std::size_t j = 0; j < k; ++j) c.push_back(g.derivative(j));
  return BaseOneForm(std::move(c));
}

BaseTwoForm exterior_d(const BaseOneForm& w) {
  std::size_t k = w.arity();
  BaseTwoForm r(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) r.set(i, j, w[j].derivative(i) - w[i].derivative(j));
  return r;
}

BaseOneForm dlog(const BaseScalar& u) {
  if (u.is_zero()) throw InputError("dlog of zero");
  BaseOneForm w = d_base(u);
  return w * u.inverse();
}

}  // namespace gmdet
