#include <random>

#include "doctest.h"
#include "gradeflow/catalog.hpp"
#include "gradeflow/random_params.hpp"

using namespace gradeflow;

TEST_SUITE("catalog") {
  TEST_CASE("vorticity of every family matches its declaration") {
    std::mt19937_64 rng(5);
    for (const std::string& key : family_keys()) {
      for (int k = 0; k < 10; ++k) {
        const SolutionFamily f = random_family(key, rng);
        const MaterialConstants c = random_constants(rng);
        const StreamFunction psi = build_psi(f, c);
        CHECK(psi.psi().is_real());
        CHECK(vorticity(psi) == omega_of(f));
      }
    }
  }

  TEST_CASE("rigid rotation from constant vorticity") {
    ConstantVorticity cv;
    cv.omega0 = -2;
    const StreamFunction psi = build_psi(cv, MaterialConstants::newtonian());
    CHECK(psi.psi() == ExactComplex(Rational(1, 2)) * Expression::z() * Expression::zbar());
  }

  TEST_CASE("log family value at (1, 0)") {
    // -(B/4) z zbar (ln(z zbar) - 2) with B = -4 and ln(z zbar) = 0 gives 1 * 1 * (-2)
    const LogVorticity f{-4, 0, 0, 0};
    const auto v = build_psi(f, MaterialConstants::newtonian()).psi().eval(1.0, 0.0);
    CHECK(v.real() == doctest::Approx(-2.0));
    // ln z + ln zbar stays real and continuous across the negative axis
    CHECK(build_psi(f, MaterialConstants::newtonian()).psi().eval(-1.0, 0.0).real() == doctest::Approx(-2.0));
  }

  TEST_CASE("omega declarations") {
    ConstantVorticity cv;
    cv.omega0 = -1;
    CHECK(omega_of(cv) == Expression(-1));
    const Expression om = omega_of(LinearImag{3, 0, false});
    // i B (z - zbar) = -2 B y
    CHECK(om.eval(0.7, 0.5).real() == doctest::Approx(-3.0));
    CHECK(omega_of(ProductVorticity{2, 0}).eval(1.0, 2.0).real() == doctest::Approx(10.0));
  }

  TEST_CASE("nonzero preconditions") {
    CHECK_THROWS_WITH_AS(build_psi(LinearComplex{ExactComplex(0), 0}, MaterialConstants::newtonian()),
                         "linear_complex requires m1 != 0", std::invalid_argument);
    CHECK_THROWS_AS(build_psi(LinearRealB{0, 0}, MaterialConstants::newtonian()), std::invalid_argument);
    CHECK_THROWS_AS(build_psi(LinearShifted{0, 1, 0}, MaterialConstants::newtonian()), std::invalid_argument);
    CHECK_THROWS_AS(build_psi(LinearImag{0, 0, false}, MaterialConstants::newtonian()), std::invalid_argument);
  }

  TEST_CASE("figure presets carry the quoted values") {
    const FigurePreset p1 = figure_preset(1);
    const auto& cv = std::get<ConstantVorticity>(p1.family);
    CHECK(cv.omega0 == -1);
    CHECK(cv.a1 == ExactComplex(1, 2));
    CHECK(cv.a4 == ExactComplex(2, Rational(1, 2)));
    CHECK(cv.a == 2);
    const FigurePreset p2 = figure_preset(2);
    CHECK(std::get<LinearComplex>(p2.family).m1 == ExactComplex(1, 2));
    CHECK(p2.constants.lambda() == Rational(3, 10));
    const FigurePreset p3 = figure_preset(3);
    CHECK(std::get<LinearRealB>(p3.family) == LinearRealB{-2, 1});
    CHECK(p3.constants.lambda() == 2);
    CHECK(p3.x_range.lo == -10);
    CHECK(p3.y_range.lo == 0);
    CHECK(std::get<LinearShifted>(figure_preset(4).family) == LinearShifted{1, 1, -1});
    CHECK(std::get<LinearImag>(figure_preset(5).family) == LinearImag{-5, 10, false});
    const FigurePreset p6 = figure_preset(6);
    CHECK(std::get<LogVorticity>(p6.family) == LogVorticity{1, 1, 2, 4});
    CHECK(p6.assumptions.front().find("B, D1 assumed") != std::string::npos);
    const FigurePreset p7 = figure_preset(7);
    CHECK(std::get<ProductVorticity>(p7.family) == ProductVorticity{1, 2});
    CHECK(p7.constants.mu() == 12);
    CHECK(p7.constants.rho() == 1);
    for (int n = 1; n <= 7; ++n) {
      const FigurePreset p = figure_preset(n);
      CHECK(p.x_range.lo < p.x_range.hi);
      CHECK(p.y_range.lo < p.y_range.hi);
      CHECK(p.constants.verdict().ok());
    }
    CHECK_THROWS_AS(figure_preset(0), std::out_of_range);
    CHECK_THROWS_AS(figure_preset(8), std::out_of_range);
  }

  TEST_CASE("classical flows") {
    const MaterialConstants c = MaterialConstants::newtonian();
    const StreamFunction couette = classical_flow(ClassicalFlowKind::kCouette, {}, c);
    const Velocity v = velocity(couette);
    CHECK(v.v.is_zero());
    CHECK(v.u.eval(0.3, 0.7).real() == doctest::Approx(0.7));
    const StreamFunction circles = classical_flow(ClassicalFlowKind::kConcentricCircles, {}, c);
    CHECK(circles.psi() == ExactComplex(Rational(1, 4)) * Expression::z() * Expression::zbar());
    ClassicalFlowParams spiral;
    spiral.c = ExactComplex(1, 2);
    const StreamFunction sv = classical_flow(ClassicalFlowKind::kSpiralVortex, spiral, c);
    CHECK(vorticity(sv).is_zero());
    CHECK_THROWS_AS(classical_flow(ClassicalFlowKind::kSpiralVortex, spiral, c.with_beta3(1)),
                    std::invalid_argument);
    ClassicalFlowParams ellipse;
    ellipse.c = ExactComplex(1);
    CHECK_THROWS_AS(classical_flow(ClassicalFlowKind::kElliptic, ellipse, c), std::invalid_argument);
    CHECK(classical_flow_from_string("rectangular_hyperbolae") == ClassicalFlowKind::kRectangularHyperbolae);
    CHECK_THROWS_AS(classical_flow_from_string("vortex_street"), std::invalid_argument);
  }

  TEST_CASE("holomorphic part reassembles psi") {
    std::mt19937_64 rng(9);
    for (const std::string& key : family_keys()) {
      const SolutionFamily f = random_family(key, rng);
      const MaterialConstants c = random_constants(rng);
      const Expression A = holomorphic_part(f, c);
      CHECK(A.is_holomorphic());
      const StreamFunction psi = build_psi(f, c);
      const Expression particular = psi.psi() - A - conjugate(A);
      CHECK(ExactComplex(-4) * d_dz(d_dzbar(particular)) == omega_of(f));
    }
  }
}
