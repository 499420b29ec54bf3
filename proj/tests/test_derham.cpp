#include "doctest.h"

#include "gmdet/derham.hpp"
#include "gmdet/errors.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace gmdet;

namespace {

const std::size_t K = 2;
BaseScalar a1() { return BaseScalar::parameter(K, 0); }
BaseScalar a2() { return BaseScalar::parameter(K, 1); }
CurveFunction t() { return CurveFunction(CurvePolynomial::t()); }

BaseOneForm calibration_gm() {
  return BaseOneForm::basis(K, 0, -a1() / (BaseScalar(2) * a2())) +
         BaseOneForm::basis(K, 1, a1() * a1() / (BaseScalar(4) * a2() * a2()) - (BaseScalar(2) * a2()).inverse());
}

PolarVector vec(DeRhamComplex& dc, std::vector<CurveFunction> f) { return dc.space().from_functions(f); }

Connection two_block() {
  return testgen::from_script(R"(params a1 a2;
connection E { rank 2; poles;
  dt [a1 + 2*a2*t, 0; 0, a1 + 2 + 2*a2*t];
  d a1 [t, 0; 0, t];
  d a2 [t^2, 0; 0, t^2]; })");
}

}  // namespace

TEST_CASE("h0 examples") {
  CHECK(h0(testgen::calibration()).dim() == 0);
  CHECK(h0(testgen::exponential_family(3)).dim() == 0);

  Connection triv = testgen::from_script("params a1; connection E { rank 1; poles; dt [0]; d a1 [0]; }");
  H0Result z = h0(triv);
  REQUIRE(z.dim() == 1);
  DeRhamComplex dt(triv);
  std::vector<CurveFunction> f = dt.space().to_functions(z.basis[0]);
  CHECK(f[0].is_polynomial());
  CHECK(f[0].num().degree() == 0);

  Connection half = testgen::from_script("params a1; connection E { rank 1; poles a1; dt [1/(2*(t - a1))]; "
                                         "d a1 [-1/(2*(t - a1))]; }");
  CHECK(h0(half).dim() == 0);

  Connection one = testgen::from_script("params a1; connection E { rank 1; poles 0; dt [-1/t]; d a1 [0]; }");
  H0Result y = h0(one);
  REQUIRE(y.dim() == 1);
  DeRhamComplex dc(one);
  CHECK(dc.nabla_t(y.basis[0]).is_zero());
}

TEST_CASE("h1 of the calibration example") {
  DeRhamComplex dc(testgen::calibration());
  REQUIRE(dc.h1().dim() == 1);
  auto x1 = dc.coordinates(vec(dc, {t()}));
  auto x0 = dc.coordinates(vec(dc, {CurveFunction(1)}));
  auto x2 = dc.coordinates(vec(dc, {t() * t()}));
  REQUIRE(x0.size() == 1);
  CHECK(x1[0] / x0[0] == -a1() / (BaseScalar(2) * a2()));
  CHECK(x2[0] / x0[0] == a1() * a1() / (BaseScalar(4) * a2() * a2()) - (BaseScalar(2) * a2()).inverse());
}

TEST_CASE("h1 dimensions") {
  gen::Rng rng(31);
  testgen::M3Data m3 = testgen::rank2_m3(rng, true);
  CHECK(h1_presentation(m3.conn).dim() == 2);
  Connection lin = testgen::from_script("params a1; connection E { rank 1; poles; dt [a1]; d a1 [t]; }");
  CHECK(h1_presentation(lin).dim() == 0);
  CHECK(gauss_manin_matrix(lin).rows() == 0);
  CHECK(det_gm(lin).is_zero());
}

TEST_CASE("gauss-manin of the calibration example") {
  FormMatrix psi = gauss_manin_matrix(testgen::calibration());
  REQUIRE(psi.rows() == 1);
  CHECK(psi(0, 0) == calibration_gm());
  CHECK(det_gm(testgen::calibration()) == calibration_gm());
}

TEST_CASE("det_gm agrees with the division oracle") {
  for (std::size_t d = 2; d <= 5; ++d) {
    CAPTURE(d);
    CurvePolynomial f = gen::generic_potential(d);
    CHECK(det_gm(testgen::exponential_family(d)) == oracle::exp_det_gm(f, d));
  }
  gen::Rng rng(32);
  for (int i = 0; i < 6; ++i) {
    int d = static_cast<int>(rng.integer(2, 4));
    CurvePolynomial f = gen::curve_polynomial(rng, 2, d);
    CHECK(det_gm(gen::exponential(f, 2)) == oracle::exp_det_gm(f, 2));
  }
}

TEST_CASE("direct sums are block diagonal") {
  Connection a = testgen::calibration();
  Connection b = testgen::from_script("params a1 a2; connection E { rank 1; poles; dt [a1 + 2 + 2*a2*t]; d a1 [t]; "
                                      "d a2 [t^2]; }");
  Connection s = oracle::direct_sum(a, b);
  FormMatrix psi = gauss_manin_matrix(s);
  REQUIRE(psi.rows() == 2);
  CHECK(det_gm(s) == det_gm(a) + det_gm(b));
  CHECK(det_gm(s) == det_gm(two_block()));
}

TEST_CASE("reduction is idempotent and kills exact forms") {
  gen::Rng rng(33);
  std::vector<Connection> cs = {testgen::calibration(), testgen::exponential_family(3), testgen::regular_singular(),
                                testgen::rank2_m3(rng, true).conn};
  for (auto& c : cs) {
    DeRhamComplex dc(c);
    dc.h1();
    std::vector<BaseScalar> poles = c.finite_poles;
    for (int i = 0; i < 5; ++i) {
      std::vector<CurveFunction> v, w;
      for (std::size_t k = 0; k < c.rank; ++k) {
        v.push_back(CurveFunction(gen::curve_polynomial(rng, c.arity, static_cast<int>(rng.integer(0, 6)))));
        w.push_back(gen::curve_function(rng, c.arity, poles, 2, 4));
      }
      PolarVector pv = vec(dc, v);
      auto z = dc.coordinates(dc.nabla_t(pv));
      for (const auto& x : z) CHECK(x.is_zero());
      PolarVector pw = vec(dc, w);
      PolarVector once = dc.reduce(pw);
      CHECK(dc.coordinates(once) == dc.coordinates(pw));
      CHECK(dc.reduce(once).is_zero() == once.is_zero());
    }
    for (std::size_t b = 0; b < dc.h1().dim(); ++b) {
      auto x = dc.coordinates(dc.h1().basis[b]);
      for (std::size_t g = 0; g < x.size(); ++g) CHECK(x[g] == BaseScalar(g == b ? 1 : 0));
    }
  }
}

TEST_CASE("dimension matches the euler characteristic") {
  for (const auto& x : testgen::euler_suite()) {
    CAPTURE(x.name);
    if (minimality_check(x.conn).overall() != Verdict::Pass) continue;
    int chi = oracle::euler_formula(x.conn.rank, x.orders);
    CHECK(static_cast<int>(h1_presentation(x.conn).dim()) - static_cast<int>(h0(x.conn).dim()) == -chi);
  }
}

TEST_CASE("det_gm is closed on integrable instances") {
  gen::Rng rng(34);
  std::vector<Connection> cs = {testgen::calibration(), testgen::exponential_family(3), testgen::exponential_family(4),
                                testgen::regular_singular(), testgen::conjugated_diagonal_m3(testgen::conjugator())};
  for (int i = 0; i < 3; ++i) cs.push_back(testgen::rank2_m3(rng, true).conn);
  for (const auto& c : cs) {
    REQUIRE(curvature(c).integrable());
    CHECK(exterior_d(det_gm(c)).is_zero());
  }
}

TEST_CASE("gauge invariance of det_gm") {
  Connection d = two_block();
  BaseOneForm base = det_gm(d);
  CHECK(det_gm(gauge_transform(d, testgen::constant_matrix(testgen::conjugator()))) == base);
  FunctionMatrix u(2, 2);
  u(0, 0) = CurveFunction(1);
  u(1, 1) = CurveFunction(1);
  u(0, 1) = t();
  Connection du = gauge_transform(d, u);
  CHECK(pole_profile(du).infinity().m == 3);
  CHECK(det_gm(du) == base);
  u(0, 1) = t() * CurveFunction(a1()) + CurveFunction(a2());
  CHECK(det_gm(gauge_transform(d, u)) == base);

  gen::Rng rng(35);
  testgen::M3Data m3 = testgen::rank2_m3(rng, true);
  ScalarMatrix p = gen::rational_matrix(rng, 2, true);
  CHECK(det_gm(gauge_transform(m3.conn, testgen::constant_matrix(p))) == det_gm(m3.conn));
}

TEST_CASE("base change commutes with det_gm") {
  Connection e = testgen::exponential_family(3);
  BaseOneForm full = det_gm(e);
  for (std::size_t j = 0; j < e.arity; ++j) {
    if (j == e.arity - 1) continue;
    Rational v(3 + static_cast<long>(j), 2);
    CHECK(det_gm(oracle::specialize(e, j, v)) == full.substitute(j, v));
  }
  Connection r = testgen::regular_singular();
  CHECK(det_gm(oracle::specialize(r, 0, Rational(5))) == det_gm(r).substitute(0, Rational(5)));
}
