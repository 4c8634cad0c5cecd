#pragma once

// Closed-form stream functions for steady plane flows of a third-grade fluid,
// one constructor per prescribed-vorticity family, plus the classical flows
// that fall out of the constant-vorticity family and the published figure
// parameter sets.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gradeflow/expression.hpp"
#include "gradeflow/flow_model.hpp"

namespace gradeflow {

/// omega = omega0, psi = -omega0 z zbar / 4 + A + conj(A) with quartic A.
struct ConstantVorticity {
  Rational omega0{0};
  ExactComplex a1, a2, a3, a4;
  Rational a{0};  // a5 + conj(a5)
  friend bool operator==(const ConstantVorticity&, const ConstantVorticity&) = default;
};

/// omega = m1 z + conj(m1) zbar.
struct LinearComplex {
  ExactComplex m1{1};
  Rational m{0};
  friend bool operator==(const LinearComplex&, const LinearComplex&) = default;
};

/// omega = B (z + zbar).
struct LinearRealB {
  Rational B{1};
  Rational n{0};
  friend bool operator==(const LinearRealB&, const LinearRealB&) = default;
};

/// omega = D (z + zbar + E).
struct LinearShifted {
  Rational D{1};
  Rational E{0};
  Rational q{0};
  friend bool operator==(const LinearShifted&, const LinearShifted&) = default;
};

/// omega = i B (z - zbar).
struct LinearImag {
  Rational B{1};
  Rational r{0};
  /// The lambda-dependent term of the published psi carries z^3 - zbar^3; the
  /// quadratic variant uses z^2 - zbar^2 like the neighbouring families.
  bool quadratic_variant = false;
  friend bool operator==(const LinearImag&, const LinearImag&) = default;
};

/// omega = B ln(z zbar) + D1.
struct LogVorticity {
  Rational B{0};
  Rational D1{0};
  Rational m6{0};
  Rational s{0};
  friend bool operator==(const LogVorticity&, const LogVorticity&) = default;
};

/// omega = B z zbar; the log term is scaled by mu / rho of the constants.
struct ProductVorticity {
  Rational B{1};
  Rational t{0};
  friend bool operator==(const ProductVorticity&, const ProductVorticity&) = default;
};

using SolutionFamily = std::variant<ConstantVorticity, LinearComplex, LinearRealB, LinearShifted,
                                    LinearImag, LogVorticity, ProductVorticity>;

/// Config/CLI key: constant | linear_complex | linear_real | linear_shifted |
/// linear_imag | log | product.
std::string family_key(const SolutionFamily& f);
/// Short case label, e.g. "II(iii)".
std::string family_case_label(const SolutionFamily& f);
/// Default-parameter family for a config key; throws std::invalid_argument.
SolutionFamily family_from_key(std::string_view key);
const std::vector<std::string>& family_keys();

/// Throws std::invalid_argument naming the violated nonzero precondition.
void check_family(const SolutionFamily& f);

StreamFunction build_psi(const SolutionFamily& f, const MaterialConstants& c);
/// The prescribed vorticity of the family.
Expression omega_of(const SolutionFamily& f);

/// A from psi = -1/4 iint omega + A + conj(A), with the additive constant
/// folded into A as a real/2. Holomorphic.
Expression holomorphic_part(const SolutionFamily& f, const MaterialConstants& c);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct FigurePreset {
  int figure_id = 1;
  SolutionFamily family;
  MaterialConstants constants = MaterialConstants::newtonian();
  Interval x_range;
  Interval y_range;
  std::string notes;
  /// Values the published caption does not state and that were pinned here.
  std::vector<std::string> assumptions;
};

/// Throws std::out_of_range unless 1 <= n <= 7.
FigurePreset figure_preset(int n);

enum class ClassicalFlowKind { kCouette, kSpiralVortex, kElliptic, kConcentricCircles, kRectangularHyperbolae };

std::string to_string(ClassicalFlowKind k);
ClassicalFlowKind classical_flow_from_string(std::string_view name);

struct ClassicalFlowParams {
  /// Couette shear rate k: u = k y, v = 0.
  Rational shear_rate{1};
  /// Core rotation for circles and ellipses.
  Rational omega0{-1};
  /// Coefficient c1 + i c2 of z^2 (hyperbolae, ellipses) or ln z (spiral vortex).
  ExactComplex c{1};
};

/// Constant-vorticity flows with A = (c1 + i c2) z^2 or (c1 + i c2) ln z.
/// The log kind requires beta3 = 0; ellipses require |c| < |omega0| / 8.
StreamFunction classical_flow(ClassicalFlowKind kind, const ClassicalFlowParams& p, const MaterialConstants& c);

}  // namespace gradeflow
