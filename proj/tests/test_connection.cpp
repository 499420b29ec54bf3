#include "doctest.h"

#include "gmdet/errors.hpp"
#include "gmdet/irregularity.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace gmdet;

namespace {

const std::size_t K = 2;
BaseScalar a1() { return BaseScalar::parameter(K, 0); }
BaseScalar a2() { return BaseScalar::parameter(K, 1); }
CurveFunction t() { return CurveFunction(CurvePolynomial::t()); }
CurveFunction c(const BaseScalar& x) { return CurveFunction(x); }

int order_at(const PoleProfile& p, const Point& q) {
  for (const auto& x : p.points)
    if (x.point == q) return x.m;
  return 0;
}

ScalarMatrix mat2(BaseScalar a, BaseScalar b, BaseScalar c, BaseScalar d) {
  ScalarMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

}  // namespace

TEST_CASE("pole orders") {
  PoleProfile p = pole_profile(testgen::calibration());
  CHECK(p.n() == 1);
  CHECK(p.infinity().m == 3);

  PoleProfile q = pole_profile(testgen::from_script("params a1; connection E { rank 1; poles; dt [a1]; d a1 [t]; }"));
  CHECK(q.infinity().m == 2);

  PoleProfile r = pole_profile(testgen::regular_singular());
  CHECK(r.n() == 2);
  CHECK(order_at(r, Point::finite(a2())) == 1);
  CHECK(r.infinity().m == 2);
}

TEST_CASE("pole order at infinity sees cancellation") {
  Connection e = testgen::from_script("params a1; connection E { rank 1; poles; dt [(t^2 + a1) - t^2]; d a1 [t]; }");
  CHECK(pole_profile(e).infinity().m == 2);
}

TEST_CASE("finite poles without a pole are pruned") {
  Connection e = testgen::from_script("params a1; connection E { rank 1; poles 0, 1; dt [1/t]; d a1 [0]; }");
  PoleProfile p = pole_profile(e);
  CHECK(p.n() == 2);
  CHECK(order_at(p, Point::finite(1)) == 0);
}

TEST_CASE("make_connection rejects bad input") {
  CHECK_THROWS_WITH_AS(testgen::from_script("params a1; connection E { rank 1; poles; dt [1/(t - a1)]; d a1 [0]; }"),
                       doctest::Contains("undeclared pole"), InputError);
  CHECK_THROWS_WITH_AS(testgen::from_script("params a1; connection E { rank 1; poles a1, a1; dt [1/(t - a1)]; "
                                            "d a1 [0]; }"),
                       doctest::Contains("duplicate pole"), InputError);
  FunctionMatrix at(1, 1, c(a1()));
  CHECK_THROWS_AS(make_connection(1, 2, {}, at, {at}), InputError);
  CHECK_THROWS_AS(make_connection(2, 1, {}, at, {at}), InputError);
}

TEST_CASE("curvature of d + df vanishes") {
  gen::Rng rng(21);
  for (int i = 0; i < 10; ++i) {
    std::size_t k = static_cast<std::size_t>(rng.integer(1, 3));
    CurvePolynomial f = gen::curve_polynomial(rng, k, static_cast<int>(rng.integer(1, 6)));
    Curvature cv = curvature(gen::exponential(f, k));
    CHECK(cv.integrable());
  }
}

TEST_CASE("non-vertical examples") {
  Connection e = testgen::from_script(R"(params a1;
connection E { rank 2; poles; dt [t, 0; 0, 2*t]; d a1 [0, 1; 0, 0]; })");
  Curvature cv = curvature(e);
  CHECK_FALSE(cv.vertical());
  FunctionMatrix expected = oracle::mixed_curvature(e, 0);
  CHECK(cv.mixed[0] == expected);
  CHECK(cv.mixed[0](0, 1) == t());

  Connection f = testgen::from_script("params a1 a2; connection E { rank 1; poles; dt [a2]; d a1 [t]; d a2 [0]; }");
  Curvature cf = curvature(f);
  CHECK_FALSE(cf.vertical());
  CHECK(cf.mixed[1](0, 0) == CurveFunction(1));
}

TEST_CASE("mixed curvature agrees with the entrywise oracle") {
  gen::Rng rng(22);
  for (int i = 0; i < 8; ++i) {
    Connection c = gen::vertical_rank2(rng, 2, 2, rng.coin(), rng.coin());
    Curvature cv = curvature(c);
    for (std::size_t j = 0; j < c.arity; ++j) CHECK(cv.mixed[j] == oracle::mixed_curvature(c, j));
    CHECK(cv.vertical());
  }
}

TEST_CASE("local leading data") {
  PoleProfile p = pole_profile(testgen::calibration());
  LocalConnectionData d = local_data(testgen::calibration(), p.infinity(), {}, 4);
  CHECK(d.g0(0, 0) == BaseScalar(-2) * a2());
  CHECK(d.g.coeff(1)(0, 0) == -a1());

  Connection r = testgen::regular_singular();
  PoleProfile pr = pole_profile(r);
  CHECK(local_data(r, pr.points[0], {}, 2).g0(0, 0) == BaseScalar(Rational(1, 2)));

  gen::Rng rng(23);
  testgen::M3Data m3 = testgen::rank2_m3(rng, false);
  PoleProfile pm = pole_profile(m3.conn);
  CHECK(pm.infinity().m == 3);
  CHECK(local_data(m3.conn, pm.infinity(), {}, 3).g0 == scale(m3.c1, BaseScalar(-1)));
}

TEST_CASE("local data reconstructs the connection") {
  gen::Rng rng(24);
  std::vector<Connection> cs = {testgen::calibration(), testgen::regular_singular(), testgen::exponential_family(3)};
  for (int i = 0; i < 4; ++i) cs.push_back(gen::vertical_rank2(rng, 2, 2, true, rng.coin()));
  for (const auto& c : cs) {
    for (const auto& pp : pole_profile(c).points) {
      const int order = 2 * pp.m + 2;
      LocalConnectionData d = local_data(c, pp, {}, order);
      MatrixSeries gs = scalar_times(d.sigma, d.g);
      for (int n = d.az.valuation(); n <= order - pp.m; ++n) CHECK(gs.coeff(n) == d.az.coeff(n));
      FormMatrixSeries back = d.eta.shifted(1 - pp.m);
      for (int n = std::min(back.valuation(), d.h.valuation()); n <= std::min(back.truncation(), d.h.truncation()); ++n)
        CHECK(back.coeff(n) == d.h.coeff(n));
    }
  }
}

TEST_CASE("euler characteristic") {
  PoleProfile p;
  p.points.push_back({Point::at_infinity(), 3, {}});
  CHECK(euler_characteristic(1, p) == -1);
  PoleProfile q;
  q.points.push_back({Point::finite(0), 1, {}});
  q.points.push_back({Point::at_infinity(), 2, {}});
  CHECK(euler_characteristic(1, q) == -1);
  PoleProfile r;
  r.points.push_back({Point::at_infinity(), 2, {}});
  CHECK(euler_characteristic(2, r) == 0);
}

TEST_CASE("euler characteristic is additive under direct sum") {
  Connection a = testgen::calibration();
  Connection b = testgen::from_script("params a1 a2; connection E { rank 1; poles; dt [a1 + 2*t]; d a1 [t]; d a2 [0]; }");
  Connection s = oracle::direct_sum(a, b);
  CHECK(euler_characteristic(s) == euler_characteristic(a) + euler_characteristic(b));
  for (const auto& x : testgen::euler_suite())
    CHECK(euler_characteristic(oracle::direct_sum(x.conn, x.conn)) == 2 * euler_characteristic(x.conn));
}

TEST_CASE("euler characteristic on the suite matches the formula") {
  for (const auto& x : testgen::euler_suite()) {
    CAPTURE(x.name);
    CHECK(euler_characteristic(x.conn) == oracle::euler_formula(x.conn.rank, x.orders));
  }
}

TEST_CASE("minimality") {
  CHECK(minimality_check(testgen::calibration()).overall() == Verdict::Pass);
  CHECK(minimality_check(testgen::regular_singular()).overall() == Verdict::Pass);
  Connection three = testgen::from_script("params a1; connection E { rank 1; poles 0; dt [3/t]; d a1 [0]; }");
  CHECK(minimality_check(three).overall() == Verdict::Fail);
  Connection half = testgen::from_script("params a1; connection E { rank 1; poles 0; dt [1/(2*t)]; d a1 [0]; }");
  CHECK(minimality_check(half).overall() == Verdict::Pass);
  Connection sym = testgen::from_script("params a1; connection E { rank 1; poles 0; dt [a1/t]; d a1 [0]; }");
  CHECK(minimality_check(sym).overall() == Verdict::Pass);
  Connection flat = testgen::from_script("params a1; connection E { rank 1; poles; dt [a1 + t - t]; d a1 [t]; }");
  CHECK(minimality_check(flat).overall() == Verdict::Pass);
}

TEST_CASE("torsion term examples") {
  TorsionTerm tc = torsion_term(testgen::calibration());
  REQUIRE(tc.units.size() == 1);
  CHECK(tc.units[0].unit == BaseScalar(-2) * a2());
  CHECK(tc.units[0].coeff == Rational(3, 2));
  CHECK(tc.value == dlog(a2()) * BaseScalar(Rational(3, 2)));

  Connection lin = testgen::from_script("params a1; connection E { rank 1; poles; dt [a1]; d a1 [t]; }");
  TorsionTerm tl = torsion_term(lin);
  REQUIRE(tl.units.size() == 1);
  CHECK(tl.units[0].unit == -BaseScalar::parameter(1, 0));
  CHECK(tl.units[0].coeff == Rational(1));
}

TEST_CASE("torsion term changes by an integer dlog under rescaling") {
  std::vector<Connection> cs = {testgen::calibration(), testgen::exponential_family(3), testgen::exponential_family(4)};
  for (const auto& c : cs) {
    BaseScalar u = BaseScalar::parameter(c.arity, 0) + BaseScalar(3);
    TorsionTerm base = torsion_term(c);
    TorsionTerm scaled = torsion_term(c, {u});
    int m = pole_profile(c).infinity().m;
    BaseOneForm diff = scaled.value - base.value;
    BaseOneForm expected = dlog(u) * BaseScalar(static_cast<long>(m) * static_cast<long>(m - 1) / 2);
    CHECK((diff == expected || diff == -expected));
  }
}

TEST_CASE("pole reduction examples") {
  {
    LocalOneForm w{laurent_expand(c(1) / (t() * t()), Point::finite(0), 4), std::nullopt};
    PoleReduction r = pole_reduce(w);
    REQUIRE(r.tail.size() == 1);
    CHECK(r.tail[0].first == -1);
    CHECK(r.tail[0].second == BaseScalar(-1));
    CHECK(r.remainder.dz.is_zero());
  }
  {
    LocalOneForm w{laurent_expand(c(a1()) / (t() * t()) + c(1) / t(), Point::finite(0), 4), std::nullopt};
    PoleReduction r = pole_reduce(w);
    REQUIRE(r.tail.size() == 1);
    CHECK(r.tail[0].first == -1);
    CHECK(r.tail[0].second == -a1());
    CHECK(r.remainder.dz.valuation() == -1);
    CHECK(r.remainder.dz.coeff(-1) == BaseScalar(1));
  }
  {
    MatrixSeries az = local_az(testgen::calibration(), Point::at_infinity(), 4);
    LocalOneForm w{az.map([](const ScalarMatrix& m) { return m(0, 0); }, BaseScalar(0)), std::nullopt};
    PoleReduction r = pole_reduce(w);
    REQUIRE(r.tail.size() == 2);
    for (const auto& [n, coef] : r.tail) CHECK(coef == (n == -1 ? a1() : a2()));
    CHECK(r.remainder.dz.is_zero());
  }
}

TEST_CASE("pole reduction rejects non-closed input") {
  ScalarSeries dz = laurent_expand(c(1) / (t() * t() * t()), Point::finite(0), 4);
  FormSeries da = laurent_expand(c(1) / t(), Point::finite(0), 4).map(
      [](const BaseScalar& x) { return BaseOneForm::basis(K, 0, x); }, BaseOneForm::zero(K));
  CHECK_THROWS_AS(pole_reduce(LocalOneForm{dz, da}), PreconditionError);
}

TEST_CASE("pole reduction reconstructs random closed forms") {
  gen::Rng rng(25);
  for (int i = 0; i < 20; ++i) {
    LocalOneForm w = gen::closed_local_form(rng, K, static_cast<int>(rng.integer(1, 6)), 4);
    PoleReduction r = pole_reduce(w);
    CHECK(r.remainder.dz.valuation() >= -1);
    ScalarSeries rebuilt = r.remainder.dz;
    for (const auto& [n, coef] : r.tail)
      rebuilt = rebuilt + ScalarSeries::monomial(w.dz.point(), n - 1, coef * BaseScalar(static_cast<long>(n)),
                                                 rebuilt.truncation(), BaseScalar(0));
    for (int n = w.dz.valuation(); n <= std::min(w.dz.truncation(), rebuilt.truncation()); ++n)
      CHECK(rebuilt.coeff(n) == w.dz.coeff(n));
  }
}

TEST_CASE("irregularity classes") {
  auto cls = irregularity_class(testgen::calibration());
  REQUIRE(cls.size() == 1);
  CHECK(cls[0].point.infinity);
  REQUIRE(cls[0].tail.size() == 2);
  for (const auto& [n, coef] : cls[0].tail) CHECK(coef == (n == -1 ? a1() : a2()));

  Connection rs = testgen::from_script("params a1; connection E { rank 1; poles a1; dt [1/(2*(t - a1))]; "
                                       "d a1 [-1/(2*(t - a1))]; }");
  for (const auto& x : irregularity_class(rs)) CHECK(x.tail.empty());
  Connection triv = testgen::from_script("params a1; connection E { rank 1; poles; dt [0]; d a1 [0]; }");
  for (const auto& x : irregularity_class(triv)) CHECK(x.tail.empty());
  CHECK_THROWS_AS(irregularity_class(testgen::calibration(), 0), InputError);
}
