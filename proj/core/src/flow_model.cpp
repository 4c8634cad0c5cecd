#include "gradeflow/flow_model.hpp"

#include <stdexcept>

namespace gradeflow {

std::string to_string(ConstantsRestriction r) {
  switch (r) {
    case ConstantsRestriction::kViscosityNonnegative:
      return "mu >= 0";
    case ConstantsRestriction::kAlpha1Nonnegative:
      return "alpha1 >= 0";
    case ConstantsRestriction::kNormalStressBound:
      return "|alpha1+alpha2| <= sqrt(24*mu*beta3)";
    case ConstantsRestriction::kBeta3Nonnegative:
      return "beta3 >= 0";
  }
  return "unknown";
}

MaterialConstants::MaterialConstants(Rational mu, Rational rho, Rational alpha1, Rational alpha2,
                                     Rational beta3)
    : mu_(std::move(mu)), rho_(std::move(rho)), alpha1_(std::move(alpha1)), alpha2_(std::move(alpha2)),
      beta3_(std::move(beta3)) {
  if (sgn(rho_) <= 0) throw std::invalid_argument("density rho must be positive");
}

MaterialConstants MaterialConstants::newtonian() { return {1, 1, 0, 0, 0}; }

MaterialConstants MaterialConstants::with_lambda(const Rational& lambda) { return {1, 1, 0, 0, lambda}; }

MaterialConstants MaterialConstants::with_mu(Rational v) const { return {std::move(v), rho_, alpha1_, alpha2_, beta3_}; }
MaterialConstants MaterialConstants::with_rho(Rational v) const { return {mu_, std::move(v), alpha1_, alpha2_, beta3_}; }
MaterialConstants MaterialConstants::with_alpha1(Rational v) const { return {mu_, rho_, std::move(v), alpha2_, beta3_}; }
MaterialConstants MaterialConstants::with_alpha2(Rational v) const { return {mu_, rho_, alpha1_, std::move(v), beta3_}; }
MaterialConstants MaterialConstants::with_beta3(Rational v) const { return {mu_, rho_, alpha1_, alpha2_, std::move(v)}; }

ConstantsVerdict MaterialConstants::verdict() const {
  ConstantsVerdict v;
  if (sgn(mu_) < 0) v.violations.push_back(ConstantsRestriction::kViscosityNonnegative);
  if (sgn(alpha1_) < 0) v.violations.push_back(ConstantsRestriction::kAlpha1Nonnegative);
  // Compared squared so the check stays exact; a negative radicand fails outright.
  const Rational radicand = 24 * mu_ * beta3_;
  const Rational sum = alpha1_ + alpha2_;
  if (sgn(radicand) < 0 || sum * sum > radicand) {
    v.violations.push_back(ConstantsRestriction::kNormalStressBound);
  }
  if (sgn(beta3_) < 0) v.violations.push_back(ConstantsRestriction::kBeta3Nonnegative);
  return v;
}

ConstantsVerdict validate_constants(const MaterialConstants& c) { return c.verdict(); }

StreamFunction::StreamFunction(Expression psi, std::string description)
    : psi_(std::move(psi)), description_(std::move(description)) {
  if (!psi_.is_real()) throw std::invalid_argument("stream function must be real-valued");
}

Expression vorticity(const StreamFunction& psi) {
  return ExactComplex(-4) * d_dz(d_dzbar(psi.psi()));
}

Expression shear_invariant_M(const StreamFunction& psi) {
  return ExactComplex(32) * (d_dzbar(psi.psi(), 2) * d_dz(psi.psi(), 2));
}

Velocity velocity(const StreamFunction& psi) {
  const Expression w = ExactComplex(0, -2) * d_dzbar(psi.psi());
  return {re_part(w), im_part(w)};
}

Expression speed_squared(const Expression& u, const Expression& v) { return u * u + v * v; }

double effective_viscosity(const MaterialConstants& c, double m_value) {
  if (m_value < 0.0) throw std::invalid_argument("shear invariant M must be nonnegative");
  return c.mu().get_d() + c.beta3().get_d() * m_value;
}

KinematicFields kinematics(const StreamFunction& psi) {
  Velocity vel = velocity(psi);
  Expression q2 = speed_squared(vel.u, vel.v);
  return {vorticity(psi), shear_invariant_M(psi), std::move(vel.u), std::move(vel.v), std::move(q2)};
}

Expression divergence(const Velocity& vel) { return d_dx(vel.u) + d_dy(vel.v); }

}  // namespace gradeflow
