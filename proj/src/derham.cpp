#include "gmdet/derham.hpp"

#include <tuple>

namespace gmdet {


DeRhamComplex::DeRhamComplex(const Connection& c, DeRhamOptions opts)
    : conn_(c),
      opts_(opts),
      profile_(pole_profile(c)),
      space_(c.rank, profile_.finite_positions()),
      at_(c.a_t, space_) {
  for (const auto& m : c.a_par) apar_.emplace_back(m, space_);
  for (const auto& pp : profile_.points) leading_inv_.push_back(pp.m >= 2 ? inverse(pp.leading) : std::nullopt);
  for (std::size_t i = 0; i < profile_.finite_count(); ++i)
    for (int k = 1; k <= profile_.points[i].m; ++k)
      for (std::size_t comp = 0; comp < c.rank; ++comp) slots_.push_back({i, k, comp});
  for (int j = 0; j <= profile_.infinity().m - 3; ++j)
    for (std::size_t comp = 0; comp < c.rank; ++comp) slots_.push_back({profile_.finite_count(), j, comp});
}

void DeRhamComplex::require_vertical() const {
  if (!curvature(conn_).vertical())
    throw PreconditionError("Gauss-Manin connection requires a vertical connection (mixed curvature is nonzero)");
}

PolarVector DeRhamComplex::nabla_t(const PolarVector& u) { return space_.derivative(u) + multiply(at_, u, space_); }

const ScalarMatrix& DeRhamComplex::shifted_inverse(std::size_t point, int shift) {
  auto key = std::make_pair(point, shift);
  auto it = shifted_inv_.find(key);
  if (it != shifted_inv_.end()) return it->second;
  ScalarMatrix m = profile_.points[point].leading + scale(scalar_identity(conn_.rank), BaseScalar(shift));
  auto inv = inverse(m);
  if (!inv)
    throw PreconditionError("pole reduction blocked at " + profile_.points[point].point.to_string(conn_.names) +
                            ": leading residue shifted by " + std::to_string(shift) +
                            " is singular (divisor is not minimal)");
  return shifted_inv_[key] = *inv;
}

std::size_t DeRhamComplex::step_limit(const PolarVector& f) const {
  if (opts_.max_steps) return *opts_.max_steps;
  std::size_t total = 0;
  for (std::size_t i = 0; i < profile_.finite_count(); ++i)
    total += std::max(0, f.max_order(i) - profile_.points[i].m);
  total += std::max(0, f.degree() - (profile_.infinity().m - 3));
  return total + slots_.size() + 4;
}

PolarVector DeRhamComplex::reduce(PolarVector f) {
  std::size_t limit = step_limit(f);
  std::size_t steps = 0;
  auto tick = [&]() {
    if (++steps > limit)
      throw InternalError("pole reduction exceeded its step limit of " + std::to_string(limit) +
                          " (divisor not minimal or limit too small)");
  };
  std::size_t nf = profile_.finite_count();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < nf; ++i) {
      int m = profile_.points[i].m;
      while (true) {
        int K = f.max_order(i);
        if (K <= m) break;
        tick();
        const Column& c = f.polar[i][K - 1];
        int k;
        Column w;
        if (m >= 2) {
          if (!leading_inv_[i]) throw PreconditionError("leading coefficient singular at a pole of order >= 2");
          k = K - m;
          w = *leading_inv_[i] * c;
        } else {
          k = K - 1;
          w = shifted_inverse(i, -k) * c;
        }
        f -= nabla_t(space_.pole_term(i, k, w));
        if (f.max_order(i) >= K) throw InternalError("pole reduction failed to lower the order");
        changed = true;
      }
    }
    int minf = profile_.infinity().m;
    while (true) {
      int deg = f.degree();
      if (deg < 0 || deg <= minf - 3) break;
      tick();
      const Column& c = f.poly[deg];
      PolarVector u;
      if (minf >= 2) {
        if (!leading_inv_[nf]) throw PreconditionError("leading coefficient singular at infinity");
        u = space_.poly_term(deg - (minf - 2), *leading_inv_[nf] * c);
      } else {
        u = space_.poly_term(deg + 1, shifted_inverse(nf, deg + 1) * c);
      }
      f -= nabla_t(u);
      if (f.degree() >= deg) throw InternalError("pole reduction failed to lower the degree at infinity");
      changed = true;
    }
    for (std::size_t i = 0; i < nf; ++i)
      if (f.max_order(i) > profile_.points[i].m) changed = true;
    if (!changed) break;
  }
  return f;
}

std::vector<BaseScalar> DeRhamComplex::slot_coordinates(const PolarVector& f) const {
  std::vector<BaseScalar> x;
  x.reserve(slots_.size());
  for (const auto& s : slots_) {
    if (s.point == profile_.finite_count()) {
      x.push_back(s.order <= f.degree() ? f.poly[s.order](s.comp, 0) : BaseScalar(0));
    } else {
      x.push_back(s.order <= f.max_order(s.point) ? f.polar[s.point][s.order - 1](s.comp, 0) : BaseScalar(0));
    }
  }
  return x;
}

PolarVector DeRhamComplex::slot_vector(std::size_t idx) const {
  const Slot& s = slots_[idx];
  if (s.point == profile_.finite_count()) return space_.poly_term(s.order, space_.unit(s.comp));
  return space_.pole_term(s.point, s.order, space_.unit(s.comp));
}

const H1Presentation& DeRhamComplex::h1() {
  if (h1_) return *h1_;
  MinimalityReport mr = minimality_check(conn_);
  for (const auto& p : mr.points)
    if (p.verdict != Verdict::Pass)
      throw PreconditionError("minimality " + to_string(p.verdict) + " at " + p.point.to_string(conn_.names) +
                              (p.reason.empty() ? "" : ": " + p.reason));
  std::size_t ns = slots_.size();
  ScalarMatrix rel(0, ns);
  if (profile_.infinity().m == 1) {
    rel = scalar_zero(conn_.rank, ns);
    for (std::size_t comp = 0; comp < conn_.rank; ++comp) {
      PolarVector r = reduce(multiply(at_, space_.poly_term(0, space_.unit(comp)), space_));
      auto x = slot_coordinates(r);
      for (std::size_t j = 0; j < ns; ++j) rel(comp, j) = x[j];
    }
  }
  relations_ = rel.rows() ? row_reduce(rel) : Echelon{rel, {}};
  std::vector<bool> pivot(ns, false);
  for (auto p : relations_.pivots) pivot[p] = true;
  H1Presentation pres;
  pres.profile = profile_;
  pres.reduced_dim = ns;
  pres.relation_rank = relations_.rank();
  free_slots_.clear();
  for (std::size_t j = 0; j < ns; ++j)
    if (!pivot[j]) {
      free_slots_.push_back(j);
      pres.basis.push_back(slot_vector(j));
    }
  h1_ = std::move(pres);
  const H0Result& z = h0();
  int chi = euler_characteristic(conn_.rank, profile_);
  if (static_cast<int>(h1_->dim()) - static_cast<int>(z.dim()) != -chi)
    throw InternalError("dim H1 - dim H0 = " + std::to_string(static_cast<int>(h1_->dim()) - static_cast<int>(z.dim())) +
                        " does not match -chi = " + std::to_string(-chi));
  return *h1_;
}

std::vector<BaseScalar> DeRhamComplex::coordinates(const PolarVector& f) {
  h1();
  auto x = slot_coordinates(reduce(f));
  for (std::size_t r = 0; r < relations_.pivots.size(); ++r) {
    std::size_t p = relations_.pivots[r];
    if (x[p].is_zero()) continue;
    BaseScalar c = x[p];
    for (std::size_t j = 0; j < x.size(); ++j)
      if (!relations_.rows(r, j).is_zero()) x[j] -= c * relations_.rows(r, j);
  }
  std::vector<BaseScalar> out;
  for (auto j : free_slots_) out.push_back(x[j]);
  return out;
}

const H0Result& DeRhamComplex::h0() {
  if (h0_) return *h0_;
  H0Result res;
  for (const auto& pp : profile_.points) {
    ScalarMatrix g0 = pp.point.infinity ? -pp.leading : pp.leading;
    if (pp.m >= 2 && !determinant(g0).is_zero()) {
      h0_ = res;
      return *h0_;
    }
  }
  int msum = 0;
  for (const auto& pp : profile_.points) msum += pp.m;
  int bound = static_cast<int>(conn_.rank) * (msum + 2);
  std::size_t nf = profile_.finite_count();
  std::vector<PolarVector> unknowns;
  std::vector<std::tuple<std::size_t, int>> tags;
  for (std::size_t comp = 0; comp < conn_.rank; ++comp) {
    for (std::size_t i = 0; i < nf; ++i)
      for (int k = 1; k <= bound; ++k) {
        unknowns.push_back(space_.pole_term(i, k, space_.unit(comp)));
        tags.emplace_back(i, k);
      }
    for (int j = 0; j <= bound; ++j) {
      unknowns.push_back(space_.poly_term(j, space_.unit(comp)));
      tags.emplace_back(nf, j);
    }
  }
  std::map<std::tuple<std::size_t, int, std::size_t>, std::size_t> rows;
  std::vector<PolarVector> images;
  for (const auto& u : unknowns) {
    images.push_back(nabla_t(u));
    const PolarVector& im = images.back();
    for (std::size_t i = 0; i < nf; ++i)
      for (int k = 1; k <= im.max_order(i); ++k)
        for (std::size_t c = 0; c < conn_.rank; ++c) rows.emplace(std::make_tuple(i, k, c), rows.size());
    for (int j = 0; j <= im.degree(); ++j)
      for (std::size_t c = 0; c < conn_.rank; ++c) rows.emplace(std::make_tuple(nf, j, c), rows.size());
  }
  ScalarMatrix sys = scalar_zero(std::max<std::size_t>(rows.size(), 1), unknowns.size());
  for (std::size_t col = 0; col < images.size(); ++col) {
    const PolarVector& im = images[col];
    for (std::size_t i = 0; i < nf; ++i)
      for (int k = 1; k <= im.max_order(i); ++k)
        for (std::size_t c = 0; c < conn_.rank; ++c) sys(rows.at({i, k, c}), col) = im.polar[i][k - 1](c, 0);
    for (int j = 0; j <= im.degree(); ++j)
      for (std::size_t c = 0; c < conn_.rank; ++c) sys(rows.at({nf, j, c}), col) = im.poly[j](c, 0);
  }
  for (const auto& v : nullspace(sys)) {
    PolarVector f = space_.zero();
    for (std::size_t col = 0; col < v.size(); ++col) {
      if (v[col].is_zero()) continue;
      f += unknowns[col] * v[col];
      if (std::get<1>(tags[col]) == bound) res.saturated = true;
    }
    res.basis.push_back(f);
  }
  h0_ = std::move(res);
  return *h0_;
}

FormMatrix DeRhamComplex::gauss_manin() {
  require_vertical();
  const H1Presentation& pres = h1();
  std::size_t n = pres.dim();
  FormMatrix psi = form_zero(n, n, conn_.arity);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t j = 0; j < conn_.arity; ++j) {
      PolarVector w = space_.derivative_param(pres.basis[b], j) + multiply(apar_[j], pres.basis[b], space_);
      auto x = coordinates(w);
      for (std::size_t g = 0; g < n; ++g)
        if (!x[g].is_zero()) psi(g, b) += BaseOneForm::basis(conn_.arity, j, x[g]);
    }
  return psi;
}

FormMatrix DeRhamComplex::gauss_manin_h0() {
  require_vertical();
  const H0Result& z = h0();
  std::size_t n = z.dim();
  FormMatrix psi = form_zero(n, n, conn_.arity);
  if (n == 0) return psi;
  std::size_t nf = profile_.finite_count();
  auto flatten_keys = [&](const PolarVector& f, std::map<std::tuple<std::size_t, int, std::size_t>, std::size_t>& keys) {
    for (std::size_t i = 0; i < nf; ++i)
      for (int k = 1; k <= f.max_order(i); ++k)
        for (std::size_t c = 0; c < conn_.rank; ++c) keys.emplace(std::make_tuple(i, k, c), keys.size());
    for (int j = 0; j <= f.degree(); ++j)
      for (std::size_t c = 0; c < conn_.rank; ++c) keys.emplace(std::make_tuple(nf, j, c), keys.size());
  };
  for (std::size_t j = 0; j < conn_.arity; ++j) {
    std::vector<PolarVector> images;
    std::map<std::tuple<std::size_t, int, std::size_t>, std::size_t> keys;
    for (const auto& v : z.basis) flatten_keys(v, keys);
    for (const auto& v : z.basis) {
      images.push_back(space_.derivative_param(v, j) + multiply(apar_[j], v, space_));
      flatten_keys(images.back(), keys);
    }
    ScalarMatrix sys = scalar_zero(keys.size(), n + n);
    auto fill = [&](const PolarVector& f, std::size_t col) {
      for (std::size_t i = 0; i < nf; ++i)
        for (int k = 1; k <= f.max_order(i); ++k)
          for (std::size_t c = 0; c < conn_.rank; ++c) sys(keys.at({i, k, c}), col) = f.polar[i][k - 1](c, 0);
      for (int d = 0; d <= f.degree(); ++d)
        for (std::size_t c = 0; c < conn_.rank; ++c) sys(keys.at({nf, d, c}), col) = f.poly[d](c, 0);
    };
    for (std::size_t b = 0; b < n; ++b) {
      fill(z.basis[b], b);
      fill(images[b], n + b);
    }
    Echelon e = row_reduce(sys);
    for (auto p : e.pivots)
      if (p >= n) throw InternalError("flat sections are not stable under the Gauss-Manin connection");
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t r = 0; r < e.pivots.size(); ++r)
        if (!e.rows(r, n + b).is_zero()) psi(e.pivots[r], b) += BaseOneForm::basis(conn_.arity, j, e.rows(r, n + b));
  }
  return psi;
}

BaseOneForm DeRhamComplex::det_gm() {
  FormMatrix psi = gauss_manin();
  BaseOneForm d = BaseOneForm::zero(conn_.arity);
  if (psi.rows()) d += psi.trace();
  FormMatrix psi0 = gauss_manin_h0();
  if (psi0.rows()) d -= psi0.trace();
  return d;
}

H0Result h0(const Connection& c) {
  DeRhamComplex dr(c);
  return dr.h0();
}

H1Presentation h1_presentation(const Connection& c, DeRhamOptions opts) {
  DeRhamComplex dr(c, opts);
  return dr.h1();
}

FormMatrix gauss_manin_matrix(const Connection& c, DeRhamOptions opts) {
  DeRhamComplex dr(c, opts);
  return dr.gauss_manin();
}

BaseOneForm det_gm(const Connection& c, DeRhamOptions opts) {
  DeRhamComplex dr(c, opts);
  return dr.det_gm();
}

}  // namespace gmdet
