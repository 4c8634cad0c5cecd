#pragma once

// Substitution of stream functions into the governing equation, with a
// symbolic path (Wirtinger algebra) and an independent numeric path (finite
// differences on psi samples). See fd_oracle.hpp for the numeric side.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradeflow/catalog.hpp"
#include "gradeflow/expression.hpp"
#include "gradeflow/field.hpp"
#include "gradeflow/flow_model.hpp"

namespace gradeflow {

/// Complex form of the x,y momentum compatibility condition
///
///   rho (psi_y w_x - psi_x w_y) - alpha1 (psi_y (Lap w)_x - psi_x (Lap w)_y)
///     - beta3 Lap(w M) + 2 beta3 (2 psi_xy M_xy - psi_xx M_yy - psi_yy M_xx) - mu Lap w
///
/// transcribed with d/dx = d_z + d_zbar, d/dy = i (d_z - d_zbar):
///
///   4 rho Im{psi_zb w_z} - 16 alpha1 Im{psi_zb w_zzzb} - 4 mu w_zzb - 4 beta3 (w M)_zzb
///     + 8 beta3 (psi_zz M_zbzb + psi_zbzb M_zz - 2 psi_zzb M_zzb)
///
/// Equal to the x,y form term for term, so finite differences of psi converge to it.
Expression governing_residual(const StreamFunction& psi, const MaterialConstants& c);

/// The commonly quoted complex form
///   Im{psi_zb (rho w_z - alpha1 w_zzzb)} - mu w_zzb - 2 beta3 {psi_zbzb M_zbzb + psi_zz M_zz}
///     - beta3 {w_zzb M + w_z M_zb + w_zb M_z}.
/// It is not equivalent to the x,y form; kept to report what it predicts.
Expression published_governing_residual(const StreamFunction& psi, const MaterialConstants& c);

/// r = content * monomial * primitive, with primitive's coefficients having
/// gcd-normalised rational parts and the shared monomial divided out.
struct FactoredResidual {
  ExactComplex content;
  Monomial common;
  Expression primitive;
};

/// Throws std::invalid_argument on the zero expression.
FactoredResidual factor(const Expression& r);
std::string to_string(const FactoredResidual& f);

/// A parameter restriction tried against a nonzero residual.
struct ConstraintProbe {
  std::string name;      // e.g. "beta3=0", "Im(a1)=0"
  bool eliminates = false;
};

/// Tries the restrictions that the closed forms suggest (beta3 = 0 for every
/// family, plus Im(a1) = 0 and a1 = 0 for constant vorticity and m6 = 0 for
/// log vorticity) and records which make the residual vanish.
std::vector<ConstraintProbe> probe_constraints(const SolutionFamily& f, const MaterialConstants& c);

struct ConditionResult {
  Expression residual;
  std::optional<FactoredResidual> factored;
  /// beta3 (A'''' + conj(A)'''') as an expression.
  Expression published_condition;
  /// True when the residual vanishes exactly when the published condition does,
  /// tested on this A and on A with its quartic part made to satisfy it.
  bool matches_published_condition = false;
};

/// Residual of psi = -omega0 z zbar / 4 + A + conj(A) for holomorphic A.
/// Throws std::invalid_argument when A depends on zbar.
ConditionResult derive_condition_constant_vorticity(const Expression& A, const Rational& omega0,
                                                    const MaterialConstants& c);

enum class AnsatzCase { kLinearComplex, kLinearRealB, kLinearShifted };

std::string to_string(AnsatzCase a);

/// Coefficients of d conj(A)/d zbar = l1 zbar^2 + l2 zbar + l3.
struct AnsatzTriple {
  ExactComplex l1, l2, l3;
};

/// The published triples. For the shifted case the triple is the one implied
/// by its closed-form psi.
AnsatzTriple published_ansatz(AnsatzCase a, const SolutionFamily& params, const MaterialConstants& c);

struct AnsatzResult {
  Expression psi;
  Expression residual;
  bool residual_is_zero = false;
  /// psi built from the triple equals the catalog closed form.
  bool matches_closed_form = false;
};

/// Integrates the ansatz, adds the particular solution -1/4 iint omega and the
/// conjugate part, and substitutes into governing_residual.
AnsatzResult check_ansatz_coefficients(AnsatzCase a, const AnsatzTriple& t, const MaterialConstants& c,
                                       const SolutionFamily& params);

/// One refinement level: spacing and max |FD - symbolic| over the sample points.
struct FdLevel {
  double h = 0.0;
  double error_norm = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int sample_points = 20;
  double h0 = 0.005;
  /// Box the sample points are drawn from; shrunk away from singularities.
  double x_lo = 1.0, x_hi = 2.0, y_lo = 1.0, y_hi = 2.0;
  double relative_tolerance = 1e-6;
  double absolute_tolerance = 1e-9;
  /// Errors below this fraction of the residual scale count as rounding only.
  double exact_floor = 1e-12;
};

struct VerificationReport {
  std::string family_key;
  std::string family_label;
  std::string psi_text;
  Expression symbolic_residual;
  bool residual_is_zero = false;
  Expression published_residual;
  bool published_residual_is_zero = false;
  std::optional<FactoredResidual> discovered_constraint;
  std::vector<ConstraintProbe> probes;

  std::vector<FdLevel> fd_orders;  // decreasing h
  /// NaN when every level is at the rounding floor (stencils exact).
  double fd_convergence_order = 0.0;
  bool fd_exact = false;
  /// max over points of |Richardson limit - symbolic| / max(|symbolic|, 1e-9/1e-6).
  double fd_richardson_gap = 0.0;
  bool fd_agrees = false;
  bool fd_order_ok = false;

  bool psi_real = false;
  bool residual_real = false;
  bool vorticity_consistent = false;
  std::optional<AnsatzResult> ansatz_check;
  std::vector<std::string> flags;

  /// Both oracles agree and the kinematic consistency checks hold.
  bool oracles_agree() const { return fd_agrees && (fd_exact || fd_order_ok); }
  bool consistent() const { return psi_real && residual_real && vorticity_consistent; }
  /// Names of probes that eliminate the residual, comma separated ("" if none).
  std::string eliminating_constraints() const;
};

VerificationReport verify_family(const SolutionFamily& f, const MaterialConstants& c, const VerifyOptions& options = {},
                                 std::vector<std::string> flags = {});

/// Same protocol for an arbitrary stream function; omega consistency is
/// checked against `expected_omega` when given.
VerificationReport verify_stream_function(const StreamFunction& psi, const MaterialConstants& c,
                                          const std::optional<Expression>& expected_omega,
                                          const VerifyOptions& options = {}, std::vector<std::string> flags = {});

/// Sample points drawn by verify_*: deterministic in the seed, at least
/// (kResidualStencilRadius + 2) * h0 clear of singularities of psi.
std::vector<std::pair<double, double>> verification_points(const Expression& psi, const VerifyOptions& options);

/// Symbolic M = 32 psi_zbzb psi_zz against 8 psi_xy^2 + 2 (psi_yy - psi_xx)^2
/// from Richardson-extrapolated differences at every unmasked node of
/// sample(psi, grid). The difference step shrinks near singularities.
struct MEquivalence {
  std::size_t nodes_checked = 0;
  std::size_t nodes_failed = 0;
  double max_relative_deviation = 0.0;  // |diff| / max(|M|, floor)
  double max_abs_M = 0.0;
  bool passed() const { return nodes_failed == 0 && nodes_checked > 0; }
};

/// A node passes when |diff| <= rel_tol * max(|M|, 1e-9 * max|M|, 1e-12).
MEquivalence check_m_equivalence(const StreamFunction& psi, const Grid& grid, double rel_tol = 1e-6);

/// The constant-vorticity velocity display as usually printed, with
/// `a2_denominator` dividing the a2 z^2 terms (3 as printed; 2 follows from
/// differentiating a2 z^3 / 6):
///   u = i w0 (z - zb) / 4 - i {-i conj(a1) zb^3 / 6 + conj(a2) zb^2 / d + conj(a3) zb + conj(a4)
///                             - i a1 z^3 / 6 - a2 z^2 / d - a3 z - a4}
///   v = w0 (z + zb) / 4 - {i a1 z^3 / 6 + a2 z^2 / d + a3 z + a4
///                          - i conj(a1) zb^3 / 6 + conj(a2) zb^2 / d + conj(a3) zb + conj(a4)}
Velocity published_constant_vorticity_velocity(const ConstantVorticity& p, int a2_denominator = 3);

}  // namespace gradeflow
