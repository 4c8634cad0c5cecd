#include "doctest.h"
#include "gradeflow/catalog.hpp"
#include "gradeflow/flow_model.hpp"
#include "gradeflow/random_params.hpp"

using namespace gradeflow;

namespace {

Expression Z() { return Expression::z(); }
Expression Zb() { return Expression::zbar(); }
Expression x_expr() { return (Z() + Zb()) / ExactComplex(2); }
Expression y_expr() { return (Z() - Zb()) / ExactComplex(0, 2); }

bool has_violation(const MaterialConstants& c, ConstantsRestriction r) {
  const auto v = c.verdict().violations;
  return std::find(v.begin(), v.end(), r) != v.end();
}

}  // namespace

TEST_SUITE("flow_model") {
  TEST_CASE("admissibility inequalities") {
    CHECK(MaterialConstants(1, 1, 1, 3, 1).verdict().ok());
    CHECK(has_violation(MaterialConstants(1, 1, 1, 4, 1), ConstantsRestriction::kNormalStressBound));
    CHECK(has_violation(MaterialConstants(1, 1, 1, 0, -1), ConstantsRestriction::kBeta3Nonnegative));
    CHECK(has_violation(MaterialConstants(-1, 1, 0, 0, 0), ConstantsRestriction::kViscosityNonnegative));
    CHECK(has_violation(MaterialConstants(1, 1, -1, 1, 0), ConstantsRestriction::kAlpha1Nonnegative));
    // |alpha1 + alpha2| = sqrt(24 mu beta3) sits on the boundary
    CHECK(MaterialConstants(6, 1, 1, 11, 1).verdict().ok());
    CHECK_THROWS_AS(MaterialConstants(1, 0, 0, 0, 0), std::invalid_argument);
    CHECK(MaterialConstants::with_lambda(Rational(3, 10)).lambda() == Rational(3, 10));
  }

  TEST_CASE("rigid rotation kinematics") {
    // psi = -omega0 z zbar / 4 with omega0 = 2: u = -y, v = x
    const StreamFunction psi(ExactComplex(Rational(-1, 2)) * Z() * Zb());
    const Velocity vel = velocity(psi);
    CHECK(vel.u == -y_expr());
    CHECK(vel.v == x_expr());
    CHECK(vorticity(psi) == Expression(2));
    CHECK(shear_invariant_M(psi).is_zero());
  }

  TEST_CASE("Couette-type psi = y") {
    const StreamFunction psi(y_expr());
    const Velocity vel = velocity(psi);
    CHECK(vel.u == Expression(1));
    CHECK(vel.v.is_zero());
  }

  TEST_CASE("speed and effective viscosity") {
    CHECK(speed_squared(Expression(3), Expression(4)) == Expression(25));
    const MaterialConstants c(1, 1, 0, 0, 2);
    CHECK(effective_viscosity(c, 3.0) == doctest::Approx(7.0));
    CHECK(effective_viscosity(c, 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(effective_viscosity(c, -1.0), std::invalid_argument);
  }

  TEST_CASE("non-real psi is rejected") { CHECK_THROWS_AS(StreamFunction{Z()}, std::invalid_argument); }

  TEST_CASE("continuity and realness hold for every family") {
    std::mt19937_64 rng(3);
    for (const std::string& key : family_keys()) {
      for (int k = 0; k < 5; ++k) {
        const SolutionFamily f = random_family(key, rng);
        const MaterialConstants c = random_constants(rng);
        const StreamFunction psi = build_psi(f, c);
        const KinematicFields kin = kinematics(psi);
        CHECK(divergence(velocity(psi)).is_zero());
        CHECK(kin.omega.is_real());
        CHECK(kin.bigM.is_real());
        CHECK(kin.u.is_real());
        CHECK(kin.v.is_real());
        CHECK(kin.omega == -laplacian(psi.psi()));
        // M = 4 u_x^2 + 4 v_y^2 + 2 (v_x + u_y)^2
        const Expression ux = d_dx(kin.u), vy = d_dy(kin.v), mixed = d_dx(kin.v) + d_dy(kin.u);
        CHECK(kin.bigM == ExactComplex(4) * ux * ux + ExactComplex(4) * vy * vy + ExactComplex(2) * mixed * mixed);
      }
    }
  }

  TEST_CASE("M is nonnegative at sample points") {
    for (int n = 1; n <= 7; ++n) {
      const FigurePreset p = figure_preset(n);
      const Expression M = shear_invariant_M(build_psi(p.family, p.constants));
      for (double x : {0.3, 1.1, 2.7}) {
        for (double y : {0.4, 1.3, -0.8}) CHECK(M.eval(x, y).real() >= -1e-9);
      }
    }
  }
}
