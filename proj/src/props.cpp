#include "gmdet/props.hpp"

#include <functional>

#include "gmdet/random.hpp"
#include "gmdet/session.hpp"
#include "gmdet/verify.hpp"

namespace gmdet {

namespace {

using Check = std::function<std::string(gen::Rng&)>;

PropertyResult run_one(const std::string& name, std::uint64_t seed, std::size_t cases, const Check& check) {
  PropertyResult r;
  r.name = name;
  gen::Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    ++r.cases;
    std::string why;
    try {
      why = check(rng);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    if (!why.empty() && r.failures++ == 0) r.first_failure = "case " + std::to_string(i) + ": " + why;
  }
  return r;
}

std::string residue_sum_zero(gen::Rng& rng) {
  std::vector<BaseScalar> poles;
  int n = static_cast<int>(rng.integer(1, 3));
  for (int i = 0; i < n; ++i) {
    BaseScalar e(Rational(i * 3 - 2) + rng.rational(1, 2));
    bool dup = false;
    for (const auto& x : poles) dup = dup || x == e;
    if (!dup) poles.push_back(e);
  }
  CurveFunction f = gen::curve_function(rng, 2, poles, 3, 2);
  BaseScalar s = residue(f, Point::at_infinity());
  for (const auto& e : poles) s += residue(f, Point::finite(e));
  return s.is_zero() ? "" : "sum of residues " + s.to_string();
}

std::string d_squared(gen::Rng& rng) {
  BaseScalar u = gen::scalar(rng, 3);
  return exterior_d(d_base(u)).is_zero() ? "" : "d(d u) != 0 for u = " + u.to_string();
}

std::string newton_vs_roots(gen::Rng& rng) {
  int d = static_cast<int>(rng.integer(1, 5));
  std::vector<Rational> roots;
  CurvePolynomial p(BaseScalar(1));
  for (int i = 0; i < d; ++i) {
    roots.push_back(rng.rational(6, 3));
    p = p * CurvePolynomial::linear_factor(BaseScalar(roots.back()));
  }
  auto n = newton_sums(p, 6);
  for (int k = 0; k <= 6; ++k) {
    Rational s(0);
    for (const auto& r : roots) {
      Rational x(1);
      for (int j = 0; j < k; ++j) x *= r;
      s += x;
    }
    if (n[k] != BaseScalar(s)) return "N_" + std::to_string(k) + " mismatch";
  }
  return "";
}

std::string exponential_theorem(gen::Rng& rng) {
  std::size_t d = static_cast<std::size_t>(rng.integer(2, 3));
  Connection c = gen::exponential(gen::generic_potential(d), d);
  CheckReport rep = check_rank1_theorem(c);
  if (rep.refused) return "refused: " + rep.refusal;
  Status s = rep.comparison.status;
  if (s != Status::ExactlyEqual && s != Status::EqualModDlog && s != Status::EqualModHalfDlog)
    return "status " + to_string(s);
  return rep.torsion_consistent ? "" : "residual differs from tau by a non-integral dlog";
}

std::string pole_reduction(gen::Rng& rng) {
  LocalOneForm w = gen::closed_local_form(rng, 2, 6, 3);
  PoleReduction r = pole_reduce(w);
  if (r.remainder.dz.valuation() < -1) return "remainder pole order above 1";
  ScalarSeries back = r.remainder.dz;
  for (const auto& [k, c] : r.tail)
    back = back + ScalarSeries::monomial(w.dz.point(), k - 1, c * BaseScalar(static_cast<long>(k)), back.truncation(),
                                         BaseScalar(0));
  for (int n = w.dz.valuation(); n <= w.dz.truncation(); ++n)
    if (back.coeff(n) != w.dz.coeff(n)) return "reconstruction differs at z^" + std::to_string(n);
  return "";
}

std::string local_identity(gen::Rng& rng) {
  Connection c = gen::vertical_rank2(rng, 2, static_cast<int>(rng.integer(1, 2)), rng.coin(), false);
  for (const auto& pp : pole_profile(c).points) {
    if (pp.m < 2) continue;
    LocalIdentityCheck chk = local_identity_check(c, pp);
    if (!chk.holds()) return "identity fails at " + pp.point.to_string(c.names);
  }
  return "";
}

std::string session_round_trip(gen::Rng& rng) {
  std::size_t d = static_cast<std::size_t>(rng.integer(2, 3));
  std::string text = "params";
  for (std::size_t i = 1; i <= d; ++i) text += " a" + std::to_string(i);
  text += ";\nlet c = " + rng.rational(5, 3).get_str() + ";\nconnection E { rank 1; poles; dt [";
  for (std::size_t i = 1; i <= d; ++i)
    text += (i > 1 ? " + " : "") + std::to_string(i) + "*a" + std::to_string(i) + "*t^" + std::to_string(i - 1);
  text += " - c*(t - 1)^2 + c*(t - 1)^2]; ";
  for (std::size_t i = 1; i <= d; ++i) text += "d a" + std::to_string(i) + " [t^" + std::to_string(i) + "]; ";
  text += "}\ncheck theorem(E);\nprint euler(E, section = -a1 - -t);\n";
  session::Script a = session::parse_session(text);
  session::Script b = session::parse_session(session::render(a));
  return session::same_ast(a, b) ? "" : "render/parse changed the tree";
}

}  // namespace

std::vector<PropertyResult> run_properties(std::uint64_t seed, std::size_t cases) {
  std::vector<PropertyResult> out;
  out.push_back(run_one("residue-sum-zero", seed, cases, residue_sum_zero));
  out.push_back(run_one("d-squared-zero", seed + 1, cases, d_squared));
  out.push_back(run_one("newton-vs-roots", seed + 2, cases, newton_vs_roots));
  out.push_back(run_one("pole-reduction", seed + 3, cases, pole_reduction));
  out.push_back(run_one("local-residue-identity", seed + 4, std::max<std::size_t>(1, cases / 5), local_identity));
  out.push_back(run_one("exponential-theorem", seed + 5, std::max<std::size_t>(1, cases / 10), exponential_theorem));
  out.push_back(run_one("session-round-trip", seed + 6, cases, session_round_trip));
  return out;
}

}  // namespace gmdet
