#include <cmath>
#include <sstream>

#include "../oracle_values.hpp"
#include "doctest.h"
#include "gradeflow/catalog.hpp"
#include "gradeflow/energy.hpp"
#include "gradeflow/fd_oracle.hpp"
#include "gradeflow/report.hpp"
#include "gradeflow/verifier.hpp"

using namespace gradeflow;

namespace {

Expression Z() { return Expression::z(); }
Expression Zb() { return Expression::zbar(); }

}  // namespace

TEST_SUITE("verifier") {
  TEST_CASE("symbolic residual matches the independent x,y oracle") {
    for (const auto& s : oracle::kPresetResiduals) {
      const FigurePreset p = figure_preset(s.figure);
      const Expression r = governing_residual(build_psi(p.family, p.constants), p.constants);
      const double v = r.eval(s.x, s.y).real();
      const double want = static_cast<double>(s.value);
      CAPTURE(s.figure);
      CHECK(std::fabs(v - want) <= 1e-9 * std::max(1.0, std::fabs(want)));
    }
  }

  TEST_CASE("pinned preset residuals") {
    auto residual_of = [](int n) {
      const FigurePreset p = figure_preset(n);
      return governing_residual(build_psi(p.family, p.constants), p.constants);
    };
    CHECK(residual_of(2) == ExactComplex(48) * (ExactComplex(1, 2) * Z() + ExactComplex(1, -2) * Zb()));
    CHECK(residual_of(3) == ExactComplex(-256) * (ExactComplex(-3) * (Z() + Zb()) + Expression(5)));
    CHECK(residual_of(4) == ExactComplex(64) * (Z() + Zb() + Expression(1)));
    CHECK(residual_of(7) == ExactComplex(-12) * pow(Z() * Zb(), 2));
    const Expression zzb = Z() * Zb();
    CHECK(residual_of(6) == ExactComplex(-3072) * Expression::monomial(1, {-4, -4, 0, 0}) * (zzb + Expression(8)));
  }

  TEST_CASE("every preset is certified once beta3 = 0") {
    for (int n = 1; n <= 7; ++n) {
      const FigurePreset p = figure_preset(n);
      const MaterialConstants c = p.constants.with_beta3(0);
      CAPTURE(n);
      CHECK(governing_residual(build_psi(p.family, c), c).is_zero());
    }
  }

  TEST_CASE("rigid rotation verifies for any constants") {
    const StreamFunction psi(ExactComplex(Rational(1, 2)) * Z() * Zb());
    CHECK(governing_residual(psi, MaterialConstants(2, 3, 1, 0, 5)).is_zero());
  }

  TEST_CASE("printed complex form disagrees with the x,y form") {
    const FigurePreset p = figure_preset(1);
    const StreamFunction psi = build_psi(p.family, p.constants);
    const Expression corrected = governing_residual(psi, p.constants);
    const Expression printed = published_governing_residual(psi, p.constants);
    CHECK_FALSE(printed == corrected);
    CHECK_FALSE(printed.is_zero());
  }

  TEST_CASE("factoring") {
    const Expression r = ExactComplex(6) * Z() * Zb() + ExactComplex(4) * pow(Z(), 2) * Zb();
    const FactoredResidual f = factor(r);
    CHECK(f.common == Monomial{1, 1, 0, 0});
    CHECK(Expression::monomial(f.content, f.common) * f.primitive == r);
    CHECK_THROWS_AS(factor(Expression()), std::invalid_argument);
  }

  TEST_CASE("constraint probes") {
    const FigurePreset p1 = figure_preset(1);
    const VerificationReport r1 = verify_family(p1.family, p1.constants);
    CHECK(r1.eliminating_constraints() == "beta3=0,a1=0");
    const FigurePreset p6 = figure_preset(6);
    CHECK(verify_family(p6.family, p6.constants).eliminating_constraints() == "beta3=0,m6=0");
    const FigurePreset p5 = figure_preset(5);
    const VerificationReport r5 = verify_family(p5.family, p5.constants);
    CHECK(r5.eliminating_constraints() == "beta3=0");
    bool quadratic_persists = false;
    for (const auto& pr : r5.probes) quadratic_persists |= pr.name == "quadratic variant" && !pr.eliminates;
    CHECK(quadratic_persists);
  }

  TEST_CASE("Case I condition derivation") {
    const FigurePreset p = figure_preset(1);
    const auto& cv = std::get<ConstantVorticity>(p.family);
    const ConditionResult r = derive_condition_constant_vorticity(holomorphic_part(p.family, p.constants), cv.omega0,
                                                                  p.constants);
    CHECK_FALSE(r.residual.is_zero());
    REQUIRE(r.factored);
    CHECK(r.factored->content == ExactComplex(64));
    CHECK_FALSE(r.matches_published_condition);
    CHECK_THROWS_AS(derive_condition_constant_vorticity(Z() * Zb(), 1, p.constants), std::invalid_argument);
  }

  TEST_CASE("ansatz coefficients") {
    const FigurePreset p2 = figure_preset(2);
    const AnsatzTriple t2 = published_ansatz(AnsatzCase::kLinearComplex, p2.family, p2.constants);
    CHECK(t2.l1 == ExactComplex(Rational(11, 40), Rational(-1, 20)));  // -(1-2i)^2 / (8 (1+2i))
    CHECK(t2.l3.is_zero());
    const AnsatzResult a2 = check_ansatz_coefficients(AnsatzCase::kLinearComplex, t2, p2.constants, p2.family);
    CHECK(a2.matches_closed_form);
    CHECK_FALSE(a2.residual_is_zero);
    const MaterialConstants newtonian = p2.constants.with_beta3(0);
    const AnsatzTriple t2n = published_ansatz(AnsatzCase::kLinearComplex, p2.family, newtonian);
    CHECK(check_ansatz_coefficients(AnsatzCase::kLinearComplex, t2n, newtonian, p2.family).residual_is_zero);

    const FigurePreset p3 = figure_preset(3);
    const AnsatzTriple t3 = published_ansatz(AnsatzCase::kLinearRealB, p3.family, p3.constants);
    CHECK(t3.l1 == ExactComplex(Rational(1, 4)));
    const AnsatzResult a3 = check_ansatz_coefficients(AnsatzCase::kLinearRealB, t3, p3.constants, p3.family);
    CHECK_FALSE(a3.residual_is_zero);
    CHECK_FALSE(a3.matches_closed_form);
  }

  TEST_CASE("finite-difference oracle converges at second order") {
    const FigurePreset p = figure_preset(2);
    const VerificationReport r = verify_family(p.family, p.constants);
    CHECK(r.fd_orders.size() >= 3);
    CHECK_FALSE(r.fd_exact);
    CHECK(r.fd_convergence_order >= 1.8);
    CHECK(r.fd_convergence_order <= 2.2);
    CHECK(r.fd_agrees);
    CHECK(r.oracles_agree());
    CHECK(r.consistent());
  }

  TEST_CASE("finite-difference primitives") {
    CHECK(richardson_limit(1.0 + 1.0, 1.0 + 0.25, 1.0 + 0.0625) == doctest::Approx(1.0));
    CHECK(convergence_order({0.1, 0.05, 0.025}, {1e-2, 2.5e-3, 6.25e-4}) == doctest::Approx(2.0));
    CHECK(std::isnan(convergence_order({0.1, 0.05}, {0.0, 0.0})));
    const StreamFunction psi(ExactComplex(Rational(1, 2)) * Z() * Zb());
    const PointwiseEvaluator e = PointwiseEvaluator::from_expression(psi.psi());
    CHECK(std::fabs(fd_residual_at(e, MaterialConstants(1, 1, 1, 0, 1), 0.3, 0.2, 0.01)) < 1e-10);
    const PointwiseEvaluator lg = PointwiseEvaluator::from_expression(Expression::ln_z() + Expression::ln_zbar());
    CHECK_THROWS_AS(fd_residual_at(lg, MaterialConstants::newtonian(), 0.01, 0.0, 0.01), SingularPointError);
    const double m = fd_shear_invariant_at(PointwiseEvaluator::from_expression(pow(Z(), 2) + pow(Zb(), 2)), 0.4, 0.3,
                                           1e-3);
    // psi = 2 (x^2 - y^2): M = 2 (psi_yy - psi_xx)^2 = 128
    CHECK(m == doctest::Approx(128.0).epsilon(1e-9));
  }

  TEST_CASE("mutation is detected") {
    const FigurePreset p = figure_preset(1);
    const MaterialConstants c = p.constants.with_beta3(0);
    const Expression psi = build_psi(p.family, c).psi() + ExactComplex(Rational(1, 1000)) * Z() * Zb() * (Z() + Zb());
    const VerificationReport r = verify_stream_function(StreamFunction(psi), c, std::nullopt);
    CHECK_FALSE(r.residual_is_zero);
    CHECK(r.oracles_agree());
  }

  TEST_CASE("M equivalence on a preset grid") {
    const FigurePreset p = figure_preset(3);
    const Grid g{p.x_range.lo, p.x_range.hi, p.y_range.lo, p.y_range.hi, 41, 41};
    const MEquivalence m = check_m_equivalence(build_psi(p.family, p.constants), g);
    CHECK(m.passed());
    CHECK(m.nodes_checked == 41u * 41u);
  }

  TEST_CASE("velocity display adjudication") {
    const FigurePreset p = figure_preset(1);
    const auto& cv = std::get<ConstantVorticity>(p.family);
    const Velocity derived = velocity(build_psi(p.family, p.constants));
    CHECK_FALSE(published_constant_vorticity_velocity(cv, 3).u == derived.u);
    CHECK(published_constant_vorticity_velocity(cv, 2).u == derived.u);
    CHECK(published_constant_vorticity_velocity(cv, 2).v == derived.v);
  }

  TEST_CASE("report serialization") {
    const FigurePreset p = figure_preset(6);
    const VerificationReport r = verify_family(p.family, p.constants, {}, p.assumptions);
    const std::string text = serialize(r);
    CHECK(text.find("flag=B, D1 assumed") != std::string::npos);
    std::istringstream in(text);
    const auto kv = parse_key_values(in);
    CHECK(kv.at("family") == "log");
    CHECK(kv.at("residual_is_zero") == "false");
    CHECK(parse_expression(kv.at("symbolic_residual")) == r.symbolic_residual);
    CHECK(serialize(verify_family(p.family, p.constants, {}, p.assumptions)) == text);
  }
}

TEST_SUITE("energy") {
  TEST_CASE("compatibility of the energy gradient is the governing residual") {
    for (int n = 1; n <= 7; ++n) {
      const FigurePreset p = figure_preset(n);
      const StreamFunction psi = build_psi(p.family, p.constants);
      CAPTURE(n);
      CHECK(compatibility(energy_gradient(psi, p.constants)) == governing_residual(psi, p.constants));
    }
  }

  TEST_CASE("alpha2 does not enter the gradient") {
    const FigurePreset p = figure_preset(2);
    const StreamFunction psi = build_psi(p.family, p.constants);
    const EnergyGradient a = energy_gradient(psi, p.constants);
    const EnergyGradient b = energy_gradient(psi, p.constants.with_alpha2(5));
    CHECK(a.hx == b.hx);
    CHECK(a.hy == b.hy);
  }

  TEST_CASE("recovery of h for a certified flow") {
    const FigurePreset p = figure_preset(4);
    const MaterialConstants c = p.constants.with_beta3(0);
    const StreamFunction psi = build_psi(p.family, c);
    const Grid g{1, 2, 1, 2, 21, 21};
    const EnergyRecovery e = recover_h(psi, c, g, 0, 0);
    CHECK(e.h_field.at(0, 0) == 0.0);
    CHECK(e.compatibility_norm == 0.0);
    CHECK(e.loop_integral <= 1e-6 * e.max_abs_h);
    CHECK(e.path_difference <= 1e-6 * e.max_abs_h);
    // gradient of the recovered h against the prescribed one
    const auto [hx, hy] = energy_gradient_at(psi, c, 1.5, 1.5);
    const double dh = (e.h_field.at(11, 10) - e.h_field.at(9, 10)) / (2 * g.dx());
    CHECK(dh == doctest::Approx(hx).epsilon(1e-3));
    (void)hy;
  }

  TEST_CASE("recovery refuses a path-dependent gradient") {
    const FigurePreset p = figure_preset(4);
    const StreamFunction psi = build_psi(p.family, p.constants);
    CHECK_THROWS_AS(recover_h(psi, p.constants, Grid{1, 2, 1, 2, 21, 21}, 0, 0), std::runtime_error);
  }

  TEST_CASE("recovery refuses singular domains") {
    const FigurePreset p = figure_preset(6);
    const MaterialConstants c = p.constants.with_beta3(0);
    CHECK_THROWS_AS(recover_h(build_psi(p.family, c), c, Grid{-1, 1, -1, 1, 11, 11}, 0, 0), SingularPointError);
  }

  TEST_CASE("pressure from h for Newtonian rigid rotation") {
    // u = -y, v = x: h is constant for mu-only flow, p = h - rho q^2 / 2 ... plus rotation
    const StreamFunction psi(ExactComplex(Rational(-1, 2)) * Z() * Zb());
    const MaterialConstants c = MaterialConstants::newtonian();
    const Grid g{-1, 1, -1, 1, 11, 11};
    const EnergyRecovery e = recover_h(psi, c, g, 5, 5);
    // h_x = rho v w = 2 x, h_y = 2 y: h = x^2 + y^2, p = h - (x^2 + y^2) / 2
    CHECK(e.h_field.at(10, 10) == doctest::Approx(2.0));
    CHECK(e.pressure_field.at(10, 10) == doctest::Approx(1.0));
  }
}
