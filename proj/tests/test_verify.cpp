#include "doctest.h"

#include "gmdet/verify.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace gmdet;

namespace {

const std::size_t K = 2;
BaseScalar a1() { return BaseScalar::parameter(K, 0); }
BaseScalar a2() { return BaseScalar::parameter(K, 1); }
BaseOneForm da(std::size_t j, const BaseScalar& g = BaseScalar(1)) { return BaseOneForm::basis(K, j, g); }

bool equal_variant(Status s) {
  return s == Status::ExactlyEqual || s == Status::EqualModDlog || s == Status::EqualModHalfDlog ||
         s == Status::EqualModRationalDlog;
}

BaseOneForm reconstruct(const Comparison& c, std::size_t arity) {
  std::vector<std::pair<BaseScalar, Rational>> terms;
  for (const auto& d : c.decomposition) terms.emplace_back(d.unit, d.coeff);
  return oracle::dlog_combination(terms, arity);
}

}  // namespace

TEST_CASE("dlog equivalence examples") {
  Comparison h = dlog_equivalent(dlog(a2()) * BaseScalar(Rational(1, 2)), BaseOneForm::zero(K), DlogBasis{{a2()}},
                                 DlogMode::Half);
  CHECK(h.status == Status::EqualModHalfDlog);
  REQUIRE(h.decomposition.size() == 1);
  CHECK(h.decomposition[0].coeff == Rational(1, 2));

  Comparison i = dlog_equivalent(da(0), BaseOneForm::zero(K), DlogBasis{{a1()}}, DlogMode::Rational);
  CHECK(i.status == Status::Inconclusive);

  Comparison d = dlog_equivalent(da(1, a1()), BaseOneForm::zero(K), DlogBasis{{a1(), a2()}}, DlogMode::Rational);
  CHECK(d.status == Status::Distinct);
  REQUIRE(d.witness);
  CHECK(d.witness->get(0, 1) == BaseScalar(1));
}

TEST_CASE("dlog equivalence modes") {
  BaseOneForm w = dlog(a1()) * BaseScalar(Rational(1, 3));
  CHECK(dlog_equivalent(w, {}, DlogBasis{{a1()}}, DlogMode::Rational).status == Status::EqualModRationalDlog);
  Comparison half = dlog_equivalent(w, {}, DlogBasis{{a1()}}, DlogMode::Half);
  CHECK(half.status == Status::Distinct);
  CHECK_FALSE(half.decomposition.empty());
  CHECK(dlog_equivalent(dlog(a1() * a2()) * BaseScalar(-2), {}, DlogBasis{{a1(), a2()}}, DlogMode::Integer).status ==
        Status::EqualModDlog);
  CHECK(dlog_equivalent(da(0), da(0), DlogBasis{}, DlogMode::Integer).status == Status::ExactlyEqual);
}

TEST_CASE("dlog decomposition works through dependent and composite units") {
  BaseScalar u = a1() * a1() - a2();
  BaseOneForm w = dlog(u) * BaseScalar(Rational(3, 2)) - dlog(a1() * a2());
  DlogBasis basis = independent_units({a1(), a2(), a1() * a2(), BaseScalar(7), u});
  CHECK(basis.units.size() == 3);
  Comparison c = dlog_equivalent(w, {}, basis, DlogMode::Half);
  CHECK(c.status == Status::EqualModHalfDlog);
  CHECK(reconstruct(c, K) == c.residual);
}

TEST_CASE("dlog equivalence is symmetric and transitive") {
  gen::Rng rng(51);
  std::vector<BaseScalar> units = {a1(), a2(), a1() + a2(), a1() - BaseScalar(1)};
  DlogBasis basis{units};
  for (int i = 0; i < 10; ++i) {
    BaseOneForm x = d_base(gen::polynomial_scalar(rng, K, 2, 3));
    BaseOneForm y = x, z = x;
    for (const auto& u : units) {
      y += dlog(u) * BaseScalar(Rational(rng.integer(-3, 3), 2));
      z += dlog(u) * BaseScalar(Rational(rng.integer(-3, 3), 2));
    }
    Comparison xy = dlog_equivalent(x, y, basis, DlogMode::Half);
    Comparison yx = dlog_equivalent(y, x, basis, DlogMode::Half);
    Comparison yz = dlog_equivalent(y, z, basis, DlogMode::Half);
    Comparison xz = dlog_equivalent(x, z, basis, DlogMode::Half);
    CHECK(equal_variant(xy.status));
    CHECK(equal_variant(yx.status));
    CHECK(equal_variant(yz.status));
    CHECK(equal_variant(xz.status));
    CHECK(reconstruct(xy, K) == xy.residual);
    CHECK(reconstruct(yx, K) == -xy.residual);
    CHECK(reconstruct(xz, K) == reconstruct(xy, K) + reconstruct(yz, K));
  }
}

TEST_CASE("flatness report") {
  CHECK(flatness_report(d_base(a1() * a2())).closed);
  FlatnessReport f = flatness_report(da(1, a1()));
  CHECK_FALSE(f.closed);
  REQUIRE(f.witness);
  CHECK(f.witness->get(0, 1) == BaseScalar(1));
  CHECK(flatness_report(det_gm(testgen::calibration())).closed);
}

TEST_CASE("rank-1 theorem on the calibration example") {
  CheckReport r = check_rank1_theorem(testgen::calibration());
  REQUIRE_FALSE(r.refused);
  CHECK(r.dim_h1 == 1);
  CHECK(r.chi == -1);
  CHECK(r.comparison.status == Status::EqualModHalfDlog);
  CHECK(r.comparison.residual == da(1, -(BaseScalar(2) * a2()).inverse()));
  REQUIRE(r.comparison.decomposition.size() == 1);
  CHECK(r.comparison.decomposition[0].unit == a2());
  CHECK(r.comparison.decomposition[0].coeff == Rational(-1, 2));
  CHECK(r.torsion_consistent);
}

TEST_CASE("rank-1 theorem on m = 2 and the regular-singular example") {
  Connection lin = testgen::from_script("params a1; connection E { rank 1; poles; dt [a1]; d a1 [t]; }");
  CheckReport r = check_rank1_theorem(lin);
  REQUIRE_FALSE(r.refused);
  CHECK(equal_variant(r.comparison.status));
  CHECK(r.det_gm.is_zero());

  CheckReport s = check_rank1_theorem(testgen::regular_singular());
  REQUIRE_FALSE(s.refused);
  CHECK(equal_variant(s.comparison.status));
}

TEST_CASE("rank-1 theorem on the exponential family up to degree 5") {
  for (std::size_t d = 2; d <= 5; ++d) {
    CAPTURE(d);
    CheckReport r = check_rank1_theorem(testgen::exponential_family(d));
    REQUIRE_FALSE(r.refused);
    CHECK(equal_variant(r.comparison.status));
    CHECK(r.torsion_consistent);
  }
}

TEST_CASE("refusals") {
  Connection nv = testgen::from_script("params a1 a2; connection E { rank 1; poles; dt [a2]; d a1 [t]; d a2 [0]; }");
  CHECK(check_rank1_theorem(nv).refused);
  CHECK(check_conjecture(nv).refused);
  Connection nonmin = testgen::from_script("params a1; connection E { rank 1; poles 0; dt [3/t + a1]; d a1 [t]; }");
  CheckReport r = check_rank1_theorem(nonmin);
  CHECK(r.refused);
  CHECK(r.refusal.find("minimal") != std::string::npos);
  Connection triv = testgen::from_script("params a1; connection E { rank 1; poles; dt [0]; d a1 [0]; }");
  CHECK(check_conjecture(triv).refused);
  CHECK(check_rank1_theorem(testgen::conjugated_diagonal_m3(testgen::conjugator())).refused);
}

TEST_CASE("conjecture checks") {
  Connection r2 = testgen::from_script(R"(params a1 a2;
connection E { rank 2; poles; dt [a1, 1; 0, a1]; d a1 [t, 0; 0, t]; d a2 [0, 0; 0, 0]; })");
  CheckReport z = check_conjecture(r2);
  REQUIRE_FALSE(z.refused);
  CHECK(z.comparison.status == Status::ExactlyEqual);
  CHECK(z.det_gm.is_zero());

  CheckReport c = check_conjecture(testgen::calibration());
  REQUIRE_FALSE(c.refused);
  CHECK(equal_variant(c.comparison.status));
  CHECK(equal_variant(check_rank1_theorem(testgen::calibration()).comparison.status));

  CheckReport d = check_conjecture(testgen::conjugated_diagonal_m3(testgen::conjugator()));
  REQUIRE_FALSE(d.refused);
  CHECK(d.comparison.status == Status::EqualModHalfDlog);
  BaseScalar g0 = BaseScalar(4) * a1() * a2() + BaseScalar(4) * a2();
  CHECK(d.comparison.residual == dlog(g0) * BaseScalar(Rational(-1, 2)));
}

TEST_CASE("auto basis contents") {
  DlogBasis b = auto_basis(testgen::calibration());
  bool has_a2 = false;
  for (const auto& u : b.units) has_a2 = has_a2 || u == a2();
  CHECK(has_a2);
  DlogBasis r = auto_basis(testgen::regular_singular());
  bool has_pole = false;
  for (const auto& u : r.units)
    if (!u.is_constant()) has_pole = true;
  CHECK(has_pole);
}
