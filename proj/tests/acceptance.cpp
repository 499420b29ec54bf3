// Acceptance run: one line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "gmdet/derham.hpp"
#include "gmdet/irregularity.hpp"
#include "gmdet/verify.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace gmdet;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

bool equal_variant(Status s) {
  return s == Status::ExactlyEqual || s == Status::EqualModDlog || s == Status::EqualModHalfDlog ||
         s == Status::EqualModRationalDlog;
}

std::string render(const BaseOneForm& w, std::size_t arity) { return w.to_string(default_names(arity)); }

std::string decomposition(const Comparison& c, std::size_t arity) {
  std::string s;
  for (const auto& t : c.decomposition)
    s += (s.empty() ? "" : "+") + t.coeff.get_str() + "*dlog(" + t.unit.to_string(default_names(arity)) + ")";
  return s.empty() ? "0" : s;
}

void exponential_family(Outcome& o) {
  for (std::size_t d = 2; d <= 4; ++d) {
    auto start = std::chrono::steady_clock::now();
    CheckOptions opts;
    opts.sum_bound = SumBound::MMinus1;
    CheckReport r = check_rank1_theorem(testgen::exponential_family(d), opts);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(!r.refused, "d=" + std::to_string(d) + " refused: " + r.refusal);
    o.require(equal_variant(r.comparison.status), "d=" + std::to_string(d) + " status " + to_string(r.comparison.status));
    o.require(r.torsion_consistent, "d=" + std::to_string(d) + " residual not consistent with tau");
    o.require(s < 60, "d=" + std::to_string(d) + " exceeded 60 s");
    if (d == 2) {
      BaseScalar a2 = BaseScalar::parameter(2, 1);
      bool half = r.comparison.decomposition.size() == 1 && r.comparison.decomposition[0].unit == a2 &&
                  abs(r.comparison.decomposition[0].coeff) == Rational(1, 2);
      o.require(half, "d=2 decomposition is not +-1/2 on a2");
    }
    o.detail << "d=" << d << " " << to_string(r.comparison.status) << " [" << decomposition(r.comparison, d) << "]; ";
  }
}

std::vector<Connection> m2_instances() {
  return {
      testgen::from_script("params a1 a2; connection E { rank 1; poles; dt [a1]; d a1 [t]; d a2 [0]; }"),
      testgen::from_script("params a1 a2; connection E { rank 1; poles; dt [a1*a2 + 3]; d a1 [a2*t]; d a2 [a1*t]; }"),
      testgen::from_script("params a1 a2; connection E { rank 2; poles; dt [a1, 1; 0, a1]; d a1 [t, 0; 0, t]; "
                           "d a2 [0, 0; 0, 0]; }"),
      gauge_transform(testgen::from_script("params a1 a2; connection E { rank 2; poles; dt [a1, 0; 0, a2]; "
                                           "d a1 [t, 0; 0, 0]; d a2 [0, 0; 0, t]; }"),
                      testgen::constant_matrix(testgen::conjugator()))};
}

std::vector<testgen::M3Data> m3_instances() {
  gen::Rng rng(20241016);
  std::vector<testgen::M3Data> out;
  for (int i = 0; i < 8; ++i) out.push_back(testgen::rank2_m3(rng, i % 2 == 1));
  return out;
}

void m2_vanishing(Outcome& o) {
  std::vector<Connection> cs = m2_instances();
  for (const auto& c : cs) {
    o.require(pole_profile(c).n() == 1 && pole_profile(c).infinity().m == 2, "instance is not a single order-2 pole");
    o.require(det_gm(c).is_zero(), "det_gm nonzero");
    o.require(pairing_value(c, default_section(c)).total.is_zero(), "pairing nonzero");
  }
  o.detail << cs.size() << " instances (rank 1 and 2) with det_gm = pairing = 0";
}

void m3_closed_form(Outcome& o) {
  int equal = 0, total = 0;
  std::map<std::string, int> verdicts;
  auto instances = m3_instances();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const testgen::M3Data& d = instances[i];
    BaseOneForm cf = closed_form_m3(d.b0, d.b1, d.b2, d.c0, d.c1);
    BaseOneForm pv = pairing_value(d.conn, default_section(d.conn)).total;
    ++total;
    if (cf == pv) ++equal;
    o.require(cf == pv, "closed form differs from the pairing on instance " + std::to_string(i));
    if (i % 2 == 1) {
      CheckReport r = check_conjecture(d.conn);
      o.require(!r.refused, "conjecture refused: " + r.refusal);
      if (!r.refused) {
        ++verdicts[to_string(r.comparison.status)];
        if (!equal_variant(r.comparison.status))
          o.detail << "instance " << i << " residual " << render(r.comparison.residual, 2) << "; ";
      }
    }
  }
  CheckReport c = check_conjecture(testgen::conjugated_diagonal_m3(testgen::conjugator()));
  o.require(!c.refused, "conjugated diagonal refused");
  o.detail << "closed form = pairing on " << equal << "/" << total << "; conjecture verdicts:";
  for (const auto& [k, v] : verdicts) o.detail << " " << k << " x" << v;
  o.detail << "; parameter-dependent conjugated diagonal: " << to_string(c.comparison.status) << " residual "
           << render(c.comparison.residual, 2) << " [" << decomposition(c.comparison, 2) << "]";
}

void section_independence(Outcome& o) {
  for (std::size_t d = 2; d <= 4; ++d) {
    Connection c = testgen::exponential_family(d);
    CurvePolynomial h1 = gen::generic_potential(d).derivative();
    CurvePolynomial h2 = (CurvePolynomial::t() - CurvePolynomial(BaseScalar(3))).pow(static_cast<unsigned>(d - 1));
    BaseOneForm v1 = pairing_value(c, GlobalSection{h1}).total;
    BaseOneForm v2 = pairing_value(c, GlobalSection{h2}).total;
    Comparison cmp = dlog_equivalent(v1, v2, auto_basis(c, {h1, h2}), DlogMode::Rational);
    o.require(equal_variant(cmp.status), "d=" + std::to_string(d) + " " + to_string(cmp.status));
    o.detail << "d=" << d << " " << to_string(cmp.status) << " [" << decomposition(cmp, d) << "]; ";
  }
}

void gauge_invariance(Outcome& o) {
  Connection block = testgen::from_script(R"(params a1 a2;
connection E { rank 2; poles;
  dt [a1 + 2*a2*t, 0; 0, a1 + 2 + 2*a2*t];
  d a1 [t, 0; 0, t];
  d a2 [t^2, 0; 0, t^2]; })");
  gen::Rng rng(5);
  testgen::M3Data m3 = testgen::rank2_m3(rng, true);
  FunctionMatrix u(2, 2);
  u(0, 0) = CurveFunction(1);
  u(1, 1) = CurveFunction(1);
  u(0, 1) = CurveFunction(CurvePolynomial::t());
  for (const Connection& c : {block, m3.conn, testgen::conjugated_diagonal_m3(testgen::conjugator())}) {
    BaseOneForm gm = det_gm(c);
    BaseOneForm pv = pairing_value(c, default_section(c)).total;
    std::vector<Connection> gauged = {gauge_transform(c, testgen::constant_matrix(gen::rational_matrix(rng, 2, true)))};
    if (&c == &block) gauged.push_back(gauge_transform(c, u));
    for (const auto& g : gauged) {
      o.require(det_gm(g) == gm, "det_gm changed under gauge");
      BaseOneForm pg = pairing_value(g, default_section(g)).total;
      Comparison cmp = dlog_equivalent(pg, pv, auto_basis(c), DlogMode::Rational);
      o.require(equal_variant(cmp.status), "pairing changed beyond dlog: " + to_string(cmp.status));
    }
  }
  o.detail << "constant and unipotent gauges: det_gm exact, pairing mod dlog";
}

void flatness(Outcome& o) {
  std::vector<Connection> cs;
  for (std::size_t d = 2; d <= 4; ++d) cs.push_back(testgen::exponential_family(d));
  for (auto& c : m2_instances()) cs.push_back(std::move(c));
  for (auto& d : m3_instances()) cs.push_back(std::move(d.conn));
  cs.push_back(testgen::conjugated_diagonal_m3(testgen::conjugator()));
  int checked = 0;
  for (const auto& c : cs) {
    if (!curvature(c).integrable()) continue;
    ++checked;
    o.require(exterior_d(det_gm(c)).is_zero(), "det_gm not closed");
    o.require(exterior_d(pairing_value(c, default_section(c)).total).is_zero(), "pairing not closed");
  }
  o.require(checked >= 10, "too few integrable instances");
  o.detail << checked << " of " << cs.size() << " instances from criteria 1-3 are integrable; all closed";
}

void euler_consistency(Outcome& o) {
  auto suite = testgen::euler_suite();
  o.require(suite.size() >= 10, "suite too small");
  int used = 0;
  for (const auto& x : suite) {
    o.require(minimality_check(x.conn).overall() == Verdict::Pass, x.name + " not minimal");
    int chi = oracle::euler_formula(x.conn.rank, x.orders);
    int lhs = static_cast<int>(h1_presentation(x.conn).dim()) - static_cast<int>(h0(x.conn).dim());
    o.require(lhs == -chi, x.name + ": dim H1 - dim H0 = " + std::to_string(lhs) + ", chi = " + std::to_string(chi));
    o.require(euler_characteristic(x.conn) == chi, x.name + ": profile disagrees with the frozen pole orders");
    ++used;
  }
  o.detail << used << " instances including exponent 1/2 with irregular infinity";
}

void kernel_sanity(Outcome& o) {
  gen::Rng rng(8);
  auto start = std::chrono::steady_clock::now();
  int residue_cases = 0;
  for (int i = 0; i < 100; ++i) {
    std::size_t arity = 2;
    BaseScalar a = BaseScalar::parameter(arity, 0);
    std::vector<BaseScalar> all = {BaseScalar(0), BaseScalar(1), a, a + BaseScalar(2)};
    std::vector<BaseScalar> poles(all.begin(), all.begin() + rng.integer(1, 3));
    CurveFunction f = gen::curve_function(rng, arity, poles, 5, 3);
    o.require(residue_sum(f, poles).is_zero(), "residue sum nonzero");
    ++residue_cases;
  }
  for (int i = 0; i < 100; ++i) o.require(exterior_d(d_base(gen::scalar(rng, 3))).is_zero(), "d d x nonzero");
  for (int i = 0; i < 20; ++i) {
    std::vector<Rational> roots;
    CurvePolynomial p(BaseScalar(rng.nonzero_rational(4, 3)));
    int deg = static_cast<int>(rng.integer(1, 6));
    for (int k = 0; k < deg; ++k) {
      roots.push_back(rng.rational(7, 4));
      p = p * CurvePolynomial::linear_factor(BaseScalar(roots.back()));
    }
    auto n = newton_sums(p, 8);
    auto e = oracle::power_sums(roots, 8);
    for (int k = 0; k <= 8; ++k) o.require(n[k] == BaseScalar(e[k]), "newton sum mismatch");
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(s < 60, "kernel sanity exceeded 60 s");
  o.detail << residue_cases << " residue sums, 100 d^2, 20 newton instances";
}

void local_identity(Outcome& o) {
  gen::Rng rng(52);
  int points = 0;
  for (int i = 0; i < 20; ++i) {
    Connection c = gen::vertical_rank2(rng, 2, static_cast<int>(rng.integer(1, 3)), rng.coin(), rng.coin());
    o.require(curvature(c).vertical(), "generator produced a non-vertical instance");
    for (const auto& pp : pole_profile(c).points) {
      if (pp.m < 2) continue;
      LocalIdentityCheck chk = local_identity_check(c, pp);
      o.require(chk.full == chk.via_eta, "residue traces differ");
      o.require(chk.commutator_regular, "[eta, g] z^(1-m) has a pole");
      ++points;
    }
  }
  o.detail << "20 instances, " << points << " irregular points";
}

void pole_reduction(Outcome& o) {
  gen::Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    LocalOneForm w = gen::closed_local_form(rng, 2, static_cast<int>(rng.integer(1, 6)), 4);
    PoleReduction r = pole_reduce(w);
    o.require(r.remainder.dz.valuation() >= -1, "remainder has a higher-order pole");
    if (r.remainder.da) o.require(r.remainder.da->valuation() >= 0, "remainder da part is singular");
    ScalarSeries rebuilt = r.remainder.dz;
    for (const auto& [n, c] : r.tail)
      rebuilt = rebuilt + ScalarSeries::monomial(w.dz.point(), n - 1, c * BaseScalar(static_cast<long>(n)),
                                                 rebuilt.truncation(), BaseScalar(0));
    for (int n = w.dz.valuation(); n <= std::min(w.dz.truncation(), rebuilt.truncation()); ++n)
      o.require(rebuilt.coeff(n) == w.dz.coeff(n), "reconstruction mismatch");
  }
  o.detail << "20 closed forms of pole order <= 6";
}

void sum_bound(Outcome& o) {
  for (std::size_t d = 2; d <= 3; ++d) {
    CurvePolynomial f = gen::generic_potential(d);
    BaseOneForm full = rhs_rank1_exponential(f, SumBound::MMinus1);
    BaseOneForm lit = rhs_rank1_exponential(f, SumBound::MMinus2);
    bool full_closed = exterior_d(full).is_zero(), lit_closed = exterior_d(lit).is_zero();
    o.require(full_closed, "m-1 variant not closed");
    o.require(!lit_closed, "m-2 variant unexpectedly closed");
    Connection c = testgen::exponential_family(d);
    Comparison cmp = dlog_equivalent(oracle::exp_det_gm(f, d), full, auto_basis(c), DlogMode::Half);
    o.require(cmp.status == Status::ExactlyEqual || cmp.status == Status::EqualModDlog ||
                  cmp.status == Status::EqualModHalfDlog,
              "m-1 variant does not match the cohomology oracle: " + to_string(cmp.status));
    o.detail << "d=" << d << " m-1 closed=" << (full_closed ? "yes" : "no") << " m-2 closed=" << (lit_closed ? "yes" : "no")
             << " m-1 vs oracle " << to_string(cmp.status) << "; ";
  }
  o.detail << "resolution: bound m-1";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"rank-1 exponential family", exponential_family},
      {"m = 2 vanishing", m2_vanishing},
      {"m = 3 closed form", m3_closed_form},
      {"section independence", section_independence},
      {"gauge invariance", gauge_invariance},
      {"flatness", flatness},
      {"dimension / euler consistency", euler_consistency},
      {"kernel sanity", kernel_sanity},
      {"local residue identity", local_identity},
      {"pole reduction", pole_reduction},
      {"summation bound", sum_bound},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << ms
              << " ms): " << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
