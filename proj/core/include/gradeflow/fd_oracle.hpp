#pragma once

// Finite-difference residual of the stream-function form of the momentum
// balance, computed from point samples of psi alone:
//
//   rho (psi_y w_x - psi_x w_y) - alpha1 (psi_y (Lap w)_x - psi_x (Lap w)_y)
//     - beta3 Lap(w M) + 2 beta3 (2 psi_xy M_xy - psi_xx M_yy - psi_yy M_xx)
//     - mu Lap w
//
// with w = -(psi_xx + psi_yy) and M = 8 psi_xy^2 + 2 (psi_yy - psi_xx)^2.
// Every derivative is a centered second-order difference applied to lattice
// arrays; Lap(Lap psi) is therefore the 13-point biharmonic. Nothing here
// touches the symbolic engine. Arithmetic runs in quad precision because the
// fifth-derivative terms amplify sample rounding by h^-5.

#include <functional>
#include <optional>
#include <vector>

#include "gradeflow/field.hpp"
#include "gradeflow/flow_model.hpp"
#include "gradeflow/numeric_expression.hpp"

namespace gradeflow {

/// A point sampler for psi plus where it may be singular.
struct PointwiseEvaluator {
  std::function<std::optional<Quad>(Quad, Quad)> value;
  bool singular_at_origin = false;
  /// psi jumps across the negative real axis.
  bool branch_cut = false;

  /// True if the closed box of half-width `radius` around (x, y) touches a
  /// singular point or the branch cut.
  bool near_singularity(double x, double y, double radius) const;

  static PointwiseEvaluator from_expression(const Expression& psi);
};

/// Lattice radius of the residual stencil footprint (fifth derivatives).
inline constexpr int kResidualStencilRadius = 3;

/// Residual at grid nodes, with the finite-difference spacing equal to the
/// grid spacing along each axis. Nodes whose stencil
/// comes within 2h of a singularity are masked.
ScalarField fd_residual_field(const PointwiseEvaluator& psi, const MaterialConstants& c, const Grid& grid);

/// Residual at one point with spacing h. Throws SingularPointError when the
/// stencil footprint plus a 2h clearance reaches a singularity.
double fd_residual_at(const PointwiseEvaluator& psi, const MaterialConstants& c, double x, double y, double h);

/// Same, kept in quad precision.
Quad fd_residual_at_quad(const PointwiseEvaluator& psi, const MaterialConstants& c, Quad x, Quad y, Quad h);

/// M = 8 psi_xy^2 + 2 (psi_yy - psi_xx)^2 by centered differences, Richardson
/// extrapolated from spacings h and h/2.
double fd_shear_invariant_at(const PointwiseEvaluator& psi, double x, double y, double h);

/// Three-level Richardson limit of a second-order quantity sampled at h, h/2, h/4.
double richardson_limit(double at_h, double at_h2, double at_h4);

/// Least-squares slope of log(error) against log(h).
double convergence_order(const std::vector<double>& spacings, const std::vector<double>& errors);

}  // namespace gradeflow
