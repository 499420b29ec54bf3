#include "support/oracle.hpp"

namespace oracle {

std::vector<BaseScalar> exp_reduce(const CurvePolynomial& f, CurvePolynomial p) {
  CurvePolynomial fp = f.derivative();
  const int dim = f.degree() - 1;
  while (!p.is_zero() && p.degree() >= dim) {
    auto [q, r] = p.divmod(fp);
    p = r - q.derivative();
  }
  std::vector<BaseScalar> out;
  for (int i = 0; i < dim; ++i) out.push_back(p.coeff(i));
  return out;
}

FormMatrix exp_gauss_manin(const CurvePolynomial& f, std::size_t arity) {
  const int dim = f.degree() - 1;
  FormMatrix psi(dim, dim, BaseOneForm::zero(arity));
  for (int i = 0; i < dim; ++i) {
    CurvePolynomial ti = CurvePolynomial::t().pow(static_cast<unsigned>(i));
    for (std::size_t j = 0; j < arity; ++j) {
      auto x = exp_reduce(f, f.derivative_param(j) * ti);
      for (int g = 0; g < dim; ++g) psi(g, i) += BaseOneForm::basis(arity, j, x[g]);
    }
  }
  return psi;
}

BaseOneForm exp_det_gm(const CurvePolynomial& f, std::size_t arity) {
  if (f.degree() < 2) return BaseOneForm::zero(arity);
  return exp_gauss_manin(f, arity).trace();
}

BaseScalar residue_by_derivatives(const CurveFunction& f, const BaseScalar& e) {
  int k = f.den().order_at(e) - f.num().order_at(e);
  if (k <= 0) return BaseScalar(0);
  int kn = f.num().order_at(e);
  CurvePolynomial p = f.num().divmod(CurvePolynomial::linear_factor(e).pow(static_cast<unsigned>(kn))).first;
  CurvePolynomial h = f.den().divmod(CurvePolynomial::linear_factor(e).pow(static_cast<unsigned>(k + kn))).first;
  // (p/h)^(j) = p_j / h^(j+1)
  BaseScalar fact(1);
  for (int j = 0; j + 1 < k; ++j) {
    p = p.derivative() * h - p * h.derivative() * BaseScalar(static_cast<long>(j + 1));
    fact *= BaseScalar(static_cast<long>(j + 1));
  }
  return p.eval(e) / (h.eval(e).pow(k) * fact);
}

BaseScalar residue_at_infinity(const CurveFunction& f0) {
  CurveFunction f = f0.reduced();
  if (f.is_zero()) return BaseScalar(0);
  auto r = f.num().divmod(f.den()).second;
  if (r.is_zero() || r.degree() != f.den().degree() - 1) return BaseScalar(0);
  return -(r.leading() / f.den().leading());
}

std::vector<Rational> power_sums(const std::vector<Rational>& roots, int L) {
  std::vector<Rational> out;
  for (int k = 0; k <= L; ++k) {
    Rational s(0);
    for (const auto& r : roots) {
      Rational x(1);
      for (int i = 0; i < k; ++i) x *= r;
      s += x;
    }
    out.push_back(s);
  }
  return out;
}

BaseScalar root_sum(const std::vector<Rational>& roots, const CurveFunction& phi) {
  BaseScalar s(0);
  for (const auto& r : roots) s += phi.num().eval(BaseScalar(r)) / phi.den().eval(BaseScalar(r));
  return s;
}

int euler_formula(std::size_t rank, const std::vector<int>& orders) {
  int s = 2 - static_cast<int>(orders.size());
  for (int m : orders) s -= std::max(0, m - 1);
  return static_cast<int>(rank) * s;
}

BaseOneForm closed_form_rank1(const BaseOneForm& b0, const BaseOneForm& b1, const BaseOneForm& b2, const BaseScalar& c0,
                              const BaseScalar& c1) {
  BaseScalar x = c0 / c1;
  return b0 - b1 * x + b2 * (x * x);
}

BaseOneForm dlog_combination(const std::vector<std::pair<BaseScalar, Rational>>& terms, std::size_t arity) {
  BaseOneForm w = BaseOneForm::zero(arity);
  for (const auto& [u, q] : terms)
    for (std::size_t j = 0; j < arity; ++j) w += BaseOneForm::basis(arity, j, u.derivative(j) / u * BaseScalar(q));
  return w;
}

FunctionMatrix mixed_curvature(const Connection& c, std::size_t j) {
  const std::size_t r = c.rank;
  FunctionMatrix out(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      CurveFunction x = c.a_t(a, b).derivative_param(j) - c.a_par[j](a, b).derivative();
      for (std::size_t k = 0; k < r; ++k)
        x += c.a_par[j](a, k) * c.a_t(k, b) - c.a_t(a, k) * c.a_par[j](k, b);
      out(a, b) = x.reduced();
    }
  return out;
}

Connection direct_sum(const Connection& a, const Connection& b) {
  const std::size_t r = a.rank + b.rank;
  auto block = [&](const FunctionMatrix& x, const FunctionMatrix& y) {
    FunctionMatrix m(r, r);
    for (std::size_t i = 0; i < a.rank; ++i)
      for (std::size_t j = 0; j < a.rank; ++j) m(i, j) = x(i, j);
    for (std::size_t i = 0; i < b.rank; ++i)
      for (std::size_t j = 0; j < b.rank; ++j) m(a.rank + i, a.rank + j) = y(i, j);
    return m;
  };
  std::vector<BaseScalar> poles = a.finite_poles;
  for (const auto& e : b.finite_poles) {
    bool dup = false;
    for (const auto& x : poles) dup = dup || x == e;
    if (!dup) poles.push_back(e);
  }
  std::vector<FunctionMatrix> par;
  for (std::size_t j = 0; j < a.arity; ++j) par.push_back(block(a.a_par[j], b.a_par[j]));
  return make_connection(r, a.arity, poles, block(a.a_t, b.a_t), par, a.names);
}

Connection specialize(const Connection& c, std::size_t j, const Rational& v) {
  auto sub = [&](const FunctionMatrix& m) {
    return m.map([&](const CurveFunction& f) { return f.substitute(j, v).reduced(); });
  };
  std::vector<BaseScalar> poles;
  for (const auto& e : c.finite_poles) poles.push_back(e.substitute(j, v));
  std::vector<FunctionMatrix> par;
  for (std::size_t k = 0; k < c.arity; ++k) par.push_back(k == j ? FunctionMatrix(c.rank, c.rank) : sub(c.a_par[k]));
  return make_connection(c.rank, c.arity, poles, sub(c.a_t), par, c.names);
}

}  // namespace oracle
