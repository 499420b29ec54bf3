#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmdet/derham.hpp"
#include "gmdet/pairing.hpp"

namespace gmdet {

enum class Status { ExactlyEqual, EqualModDlog, EqualModHalfDlog, EqualModRationalDlog, Distinct, Inconclusive };
std::string to_string(Status s);

// Which coefficients are admissible in a dlog decomposition.
enum class DlogMode { Integer, Half, Rational };
std::string to_string(DlogMode m);

struct DlogBasis {
  std::vector<BaseScalar> units;
};

// Parameters, non-constant finite poles, det g0 at irregular points, leading
// coefficients of A_t, and discriminants of the given section numerators;
// constants dropped and units with dependent dlogs removed.
DlogBasis auto_basis(const Connection& c, const std::vector<CurvePolynomial>& sections = {});
DlogBasis independent_units(const std::vector<BaseScalar>& units);

struct DlogTerm {
  BaseScalar unit;
  Rational coeff;
};

struct Comparison {
  Status status = Status::Inconclusive;
  BaseOneForm residual;
  std::vector<DlogTerm> decomposition;
  // d(residual) when it is nonzero.
  std::optional<BaseTwoForm> witness;
  std::string note;
};

// Rational q with w = sum_j q_j dlog u_j, if one exists.
std::optional<std::vector<Rational>> solve_dlog(const BaseOneForm& w, const std::vector<BaseScalar>& units);

Comparison dlog_equivalent(const BaseOneForm& lhs, const BaseOneForm& rhs, const DlogBasis& basis,
                           DlogMode mode = DlogMode::Half);

struct FlatnessReport {
  bool closed = true;
  std::optional<BaseTwoForm> witness;
};

FlatnessReport flatness_report(const BaseOneForm& w);

struct CheckOptions {
  // Half for the rank one theorem, Rational for the conjecture when unset.
  std::optional<DlogMode> mode;
  SumBound sum_bound = SumBound::MMinus1;
  std::optional<GlobalSection> section;
  std::optional<DlogBasis> units;
  DeRhamOptions derham;
};

struct CheckReport {
  bool refused = false;
  std::string refusal;
  std::size_t dim_h1 = 0;
  int chi = 0;
  BaseOneForm det_gm;
  BaseOneForm rhs;
  std::optional<PairingValue> pairing;
  std::optional<GlobalSection> section;
  // The connection is exp(f) with f polynomial in t and rhs is the Newton-sum formula.
  bool exponential = false;
  std::optional<BaseOneForm> newton_rhs;
  TorsionTerm torsion;
  Comparison comparison;
  // residual - tau is an integral dlog combination.
  bool torsion_consistent = false;
  DlogMode mode = DlogMode::Half;
  DlogBasis units;
};

CheckReport check_rank1_theorem(const Connection& c, const CheckOptions& opts = {});
CheckReport check_conjecture(const Connection& c, const CheckOptions& opts = {});

// Returns f when A_t = f' dt and A_par[j] = d_j f, with f polynomial in t and f(0) = 0.
std::optional<CurvePolynomial> exponential_potential(const Connection& c);

}  // namespace gmdet
