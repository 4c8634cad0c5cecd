#pragma once

#include <string>
#include <vector>

#include "gradeflow/expression.hpp"

namespace gradeflow {

/// One of the thermodynamic admissibility inequalities on the material constants.
enum class ConstantsRestriction {
  kViscosityNonnegative,      // mu >= 0
  kAlpha1Nonnegative,         // alpha1 >= 0
  kNormalStressBound,         // |alpha1 + alpha2| <= sqrt(24 mu beta3)
  kBeta3Nonnegative,          // beta3 >= 0
};

std::string to_string(ConstantsRestriction r);

struct ConstantsVerdict {
  std::vector<ConstantsRestriction> violations;

  bool ok() const { return violations.empty(); }
};

/// Material constants of a third-grade fluid in plane flow. beta1 = beta2 = 0
/// is built in. Constraint-violating values are representable so that the
/// verifier can probe them; `verdict()` reports what is violated.
class MaterialConstants {
 public:
  /// Throws std::invalid_argument unless rho > 0.
  MaterialConstants(Rational mu, Rational rho, Rational alpha1, Rational alpha2, Rational beta3);

  /// mu = 1, rho = 1, everything else zero.
  static MaterialConstants newtonian();
  /// rho = 1 and beta3 = lambda, with mu = 1 and alpha1 = alpha2 = 0.
  static MaterialConstants with_lambda(const Rational& lambda);

  const Rational& mu() const { return mu_; }
  const Rational& rho() const { return rho_; }
  const Rational& alpha1() const { return alpha1_; }
  const Rational& alpha2() const { return alpha2_; }
  const Rational& beta3() const { return beta3_; }
  Rational lambda() const { return beta3_ / rho_; }

  MaterialConstants with_mu(Rational v) const;
  MaterialConstants with_rho(Rational v) const;
  MaterialConstants with_alpha1(Rational v) const;
  MaterialConstants with_alpha2(Rational v) const;
  MaterialConstants with_beta3(Rational v) const;

  ConstantsVerdict verdict() const;

  friend bool operator==(const MaterialConstants&, const MaterialConstants&) = default;

 private:
  Rational mu_, rho_, alpha1_, alpha2_, beta3_;
};

ConstantsVerdict validate_constants(const MaterialConstants& c);

/// Real-valued stream function psi with u = psi_y, v = -psi_x.
class StreamFunction {
 public:
  /// Throws std::invalid_argument if psi is not real-valued.
  explicit StreamFunction(Expression psi, std::string description = {});

  const Expression& psi() const { return psi_; }
  const std::string& description() const { return description_; }

 private:
  Expression psi_;
  std::string description_;
};

struct Velocity {
  Expression u;
  Expression v;
};

struct KinematicFields {
  Expression omega;
  Expression bigM;
  Expression u;
  Expression v;
  Expression speed_sq;
};

/// omega = -4 psi_{z zbar}.
Expression vorticity(const StreamFunction& psi);
/// M = 32 psi_{zbar zbar} psi_{z z}; equals 4u_x^2 + 4v_y^2 + 2(v_x + u_y)^2.
Expression shear_invariant_M(const StreamFunction& psi);
/// u + iv = -2i psi_zbar.
Velocity velocity(const StreamFunction& psi);
Expression speed_squared(const Expression& u, const Expression& v);
/// mu + beta3 * M; throws std::invalid_argument for M < 0.
double effective_viscosity(const MaterialConstants& c, double m_value);

KinematicFields kinematics(const StreamFunction& psi);

/// u_x + v_y as an exact expression; zero for every stream function.
Expression divergence(const Velocity& vel);

}  // namespace gradeflow
