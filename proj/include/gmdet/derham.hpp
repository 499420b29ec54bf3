#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "gmdet/connection.hpp"
#include "gmdet/polar.hpp"

namespace gmdet {

struct DeRhamOptions {
  // Upper bound on elimination steps for a single reduction; computed from
  // the input orders when absent.
  std::optional<std::size_t> max_steps;
};

struct H0Result {
  std::vector<PolarVector> basis;
  // Some flat section reached the ansatz degree bound; the answer may be incomplete.
  bool saturated = false;
  std::size_t dim() const { return basis.size(); }
};

struct H1Presentation {
  PoleProfile profile;
  // Representatives b dt of a basis of H^1.
  std::vector<PolarVector> basis;
  std::size_t reduced_dim = 0;
  std::size_t relation_rank = 0;
  std::size_t dim() const { return basis.size(); }
};

// Relative algebraic de Rham cohomology of a connection by pole reduction.
class DeRhamComplex {
 public:
  explicit DeRhamComplex(const Connection& c, DeRhamOptions opts = {});

  const Connection& connection() const { return conn_; }
  const PoleProfile& profile() const { return profile_; }
  const PolarSpace& space() const { return space_; }

  PolarVector nabla_t(const PolarVector& u);
  // Reduces f dt modulo exact forms into the span of the reduced monomials.
  PolarVector reduce(PolarVector f);
  // Coordinates of the class of f dt in the basis of h1().
  std::vector<BaseScalar> coordinates(const PolarVector& f);

  const H1Presentation& h1();
  const H0Result& h0();
  // Psi with GM(b_beta) = sum_gamma Psi(gamma, beta) b_gamma.
  FormMatrix gauss_manin();
  FormMatrix gauss_manin_h0();
  BaseOneForm det_gm();

 private:
  struct Slot {
    std::size_t point;
    int order;
    std::size_t comp;
  };

  Connection conn_;
  DeRhamOptions opts_;
  PoleProfile profile_;
  PolarSpace space_;
  MatrixExpansion at_;
  std::vector<MatrixExpansion> apar_;
  std::vector<std::optional<ScalarMatrix>> leading_inv_;
  std::map<std::pair<std::size_t, int>, ScalarMatrix> shifted_inv_;
  std::vector<Slot> slots_;
  std::optional<H1Presentation> h1_;
  std::optional<H0Result> h0_;
  Echelon relations_;
  std::vector<std::size_t> free_slots_;

  const ScalarMatrix& shifted_inverse(std::size_t point, int shift);
  std::vector<BaseScalar> slot_coordinates(const PolarVector& f) const;
  PolarVector slot_vector(std::size_t s) const;
  std::size_t step_limit(const PolarVector& f) const;
  void require_vertical() const;
};

H0Result h0(const Connection& c);
H1Presentation h1_presentation(const Connection& c, DeRhamOptions opts = {});
FormMatrix gauss_manin_matrix(const Connection& c, DeRhamOptions opts = {});
BaseOneForm det_gm(const Connection& c, DeRhamOptions opts = {});

}  // namespace gmdet
