#pragma once

// Generalized energy h and pressure p. The momentum balance prescribes grad h;
// h is recovered by line integration and p from the definition of h.

#include <utility>
#include <vector>

#include "gradeflow/field.hpp"
#include "gradeflow/flow_model.hpp"
#include "gradeflow/verifier.hpp"

namespace gradeflow {

/// Right-hand sides of the two momentum equations:
///   h_x = rho v w - mu w_y - alpha1 v Lap w - beta3 (w M)_y + 2 beta3 (u_x M_x + v_x M_y)
///   h_y = -rho u w + mu w_x + alpha1 u Lap w + beta3 (w M)_x + 2 beta3 (u_y M_x + v_y M_y)
/// alpha2 does not appear.
struct EnergyGradient {
  Expression hx;
  Expression hy;
};

EnergyGradient energy_gradient(const StreamFunction& psi, const MaterialConstants& c);

/// (h_x, h_y) at one point. Throws SingularPointError at a singular origin.
std::pair<double, double> energy_gradient_at(const StreamFunction& psi, const MaterialConstants& c, double x,
                                             double y);

/// d(h_x)/dy - d(h_y)/dx, exactly.
Expression compatibility(const EnergyGradient& g);

/// Centered-difference compatibility residual from gradient samples only,
/// measured as max |.| over `points` at spacings h0, h0/2, h0/4.
struct CompatibilityStudy {
  std::vector<FdLevel> levels;  // decreasing h
  double order = 0.0;           // NaN when every level sits at the rounding floor
  bool exact = false;
  double gradient_scale = 0.0;  // max |grad h| over the points
};

CompatibilityStudy fd_compatibility(const EnergyGradient& g, const std::vector<std::pair<double, double>>& points,
                                    double h0, double exact_floor = 1e-15);

struct EnergyRecovery {
  ScalarField h_field;           // row-first path
  ScalarField h_column_first;    // column-first path
  ScalarField pressure_field;
  double compatibility_norm = 0.0;  // max |symbolic compatibility| over the nodes
  double loop_integral = 0.0;       // around the grid boundary
  double path_difference = 0.0;     // max |row-first - column-first|
  double max_abs_h = 0.0;
  std::pair<double, double> gauge_point;
};

/// Integrates grad h from the gauge node (h = 0 there), along its row then up
/// each column, and separately along its column then across each row. Each
/// grid edge is split into `substeps` panels of five-point Gauss-Legendre.
/// Throws SingularPointError if a node is singular and std::runtime_error if
/// the paths disagree by more than `tolerance * max|h|` (a non-verifying flow); tolerance <= 0 skips that check.
EnergyRecovery recover_h(const StreamFunction& psi, const MaterialConstants& c, const Grid& grid, int gauge_i,
                         int gauge_j, int substeps = 2, double tolerance = 1e-6);

/// p = h - rho q^2 / 2 + alpha1 (u Lap u + v Lap v) + (3 alpha1 + 2 alpha2) M / 4.
ScalarField recover_pressure(const ScalarField& h_field, const StreamFunction& psi, const MaterialConstants& c);

}  // namespace gradeflow
