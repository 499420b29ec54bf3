#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmdet/laurent.hpp"

namespace gmdet {

// nabla = d + A_t dt + sum_j A_par[j] da_j on the trivial rank-r bundle over
// the complement of the finite poles and infinity.
struct Connection {
  std::size_t rank = 0;
  std::size_t arity = 0;
  std::vector<BaseScalar> finite_poles;
  FunctionMatrix a_t;
  std::vector<FunctionMatrix> a_par;
  Names names;

};

Connection make_connection(std::size_t rank, std::size_t arity, std::vector<BaseScalar> finite_poles, FunctionMatrix a_t,
                           std::vector<FunctionMatrix> a_par, Names names = {});

// The connection in the frame e' = e P: A' = P^-1 A P + P^-1 dP.  Poles that P
// introduces must be listed in extra_poles.
Connection gauge_transform(const Connection& c, const FunctionMatrix& p, std::vector<BaseScalar> extra_poles = {});

struct PolePoint {
  Point point;
  int m = 1;
  // Coefficient of z^-m in A_t(e + z) at a finite point, of t^(m-2) in A_t at infinity.
  ScalarMatrix leading;
};

// Points of the divisor: the surviving finite poles in declaration order, then infinity.
struct PoleProfile {
  std::vector<PolePoint> points;
  std::size_t n() const { return points.size(); }
  const PolePoint& infinity() const { return points.back(); }
  std::size_t finite_count() const { return points.size() - 1; }
  std::vector<BaseScalar> finite_positions() const;
};

PoleProfile pole_profile(const Connection& c);

struct Curvature {
  // mixed[j]: coefficient of da_j^dt; base[(i,j)], i<j row-major: coefficient of da_i^da_j.
  std::vector<FunctionMatrix> mixed;
  std::vector<FunctionMatrix> base;
  bool vertical() const;
  bool integrable() const;
};

Curvature curvature(const Connection& c);

// Section of the relative log-canonical sheaf near a point: either the
// default dz'/z'^m in the rescaled coordinate z' = scale * z, or the local
// expression of a global relative form S(t) dt.
struct SectionChoice {
  std::optional<CurveFunction> global;
  BaseScalar scale = BaseScalar(1);
};

// Local data at a divisor point in the chart (z, a), z = t - e(a) or z = 1/t:
// A = Az dz + H, s = sigma dz, g = Az / sigma, eta = z^(m-1) H.
struct LocalConnectionData {
  Point point;
  int m = 1;
  MatrixSeries az;
  FormMatrixSeries h;
  ScalarSeries sigma;
  MatrixSeries g;
  FormMatrixSeries eta;
  ScalarMatrix g0;
};

// Series are valid through z^order for g and eta.
LocalConnectionData local_data(const Connection& c, const PolePoint& p, const SectionChoice& s, int order);
MatrixSeries local_az(const Connection& c, const Point& p, int order);
FormMatrixSeries local_h(const Connection& c, const Point& p, int order);

int euler_characteristic(const Connection& c);
int euler_characteristic(std::size_t rank, const PoleProfile& p);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct PointMinimality {
  Point point;
  int m = 1;
  Verdict verdict = Verdict::Pass;
  std::string reason;
};

struct MinimalityReport {
  std::vector<PointMinimality> points;
  Verdict overall() const;
};

MinimalityReport minimality_check(const Connection& c);

struct TorsionUnit {
  BaseScalar unit;
  Rational coeff;
};

// sum over points with m >= 2 of (m/2) dlog det g0, default sections.
struct TorsionTerm {
  BaseOneForm value;
  std::vector<TorsionUnit> units;
};

TorsionTerm torsion_term(const Connection& c, const std::vector<BaseScalar>& scales = {});

}  // namespace gmdet
