#include <random>

#include "doctest.h"
#include "gradeflow/expression.hpp"
#include "gradeflow/numeric_expression.hpp"
#include "gradeflow/random_params.hpp"

using namespace gradeflow;

namespace {

Expression Z() { return Expression::z(); }
Expression Zb() { return Expression::zbar(); }

}  // namespace

TEST_SUITE("wirtinger_algebra") {
  TEST_CASE("rational parsing is exact") {
    CHECK(parse_rational("3/10") == Rational(3, 10));
    CHECK(parse_rational("0.3") == Rational(3, 10));
    CHECK(parse_rational("-2.5e-3") == Rational(-1, 400));
    CHECK(parse_rational("4/2") == Rational(2));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  }

  TEST_CASE("complex literals") {
    CHECK(parse_complex("1+2i") == ExactComplex(1, 2));
    CHECK(parse_complex("2+0.5i") == ExactComplex(2, Rational(1, 2)));
    CHECK(parse_complex("-i") == ExactComplex(0, -1));
    CHECK(parse_complex("3/2-1/4i") == ExactComplex(Rational(3, 2), Rational(-1, 4)));
    CHECK(parse_complex(to_string(ExactComplex(Rational(3, 2), Rational(-1, 4)))) ==
          ExactComplex(Rational(3, 2), Rational(-1, 4)));
    CHECK_THROWS_AS(parse_complex("1+2j"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1+2ii"), std::invalid_argument);
  }

  TEST_CASE("complex arithmetic") {
    const ExactComplex a(1, 2), b(3, -1);
    CHECK(a * b == ExactComplex(5, 5));
    CHECK((a / b) * b == a);
    CHECK(pow(ExactComplex::i(), 4) == ExactComplex(1));
    CHECK(pow(a, -1) * a == ExactComplex(1));
    CHECK(a.conj() == ExactComplex(1, -2));
    CHECK(a.norm() == Rational(5));
  }

  TEST_CASE("canonical form merges and drops zero terms") {
    const Expression e = Z() + Z() - Z() * ExactComplex(2);
    CHECK(e.is_zero());
    CHECK(to_string(Expression()) == "0");
    const Expression f = Expression::from_terms({{ExactComplex(1), {1, 0, 0, 0}}, {ExactComplex(2), {0, 1, 0, 0}},
                                                 {ExactComplex(3), {1, 0, 0, 0}}});
    CHECK(f.size() == 2);
    CHECK(f.coefficient({1, 0, 0, 0}) == ExactComplex(4));
  }

  TEST_CASE("Wirtinger derivatives of monomials and logs") {
    CHECK(d_dz(pow(Z(), 3) * Zb()) == ExactComplex(3) * pow(Z(), 2) * Zb());
    CHECK(d_dzbar(pow(Z(), 3)).is_zero());
    CHECK(d_dz(Expression::ln_z()) == Expression::monomial(1, {-1, 0, 0, 0}));
    CHECK(d_dzbar(Expression::ln_z()).is_zero());
    CHECK(laplacian(Z() * Zb()) == Expression(4));
    // x = (z + zbar)/2 so d/dx x = 1 and d/dy x = 0
    const Expression x = (Z() + Zb()) / ExactComplex(2);
    CHECK(d_dx(x) == Expression(1));
    CHECK(d_dy(x).is_zero());
  }

  TEST_CASE("realness and holomorphy") {
    CHECK((Z() + Zb()).is_real());
    CHECK_FALSE(Z().is_real());
    CHECK(pow(Z(), 3).is_holomorphic());
    CHECK_FALSE((Z() * Zb()).is_holomorphic());
    CHECK((Expression::ln_z() + Expression::ln_zbar()).is_real());
    CHECK_FALSE((Expression::ln_z() + Expression::ln_zbar()).has_branch_cut());
    CHECK((Expression::ln_z() - Expression::ln_zbar()).has_branch_cut());
    CHECK(Expression::ln_z().singular_at_origin());
    CHECK_FALSE(pow(Z(), 2).singular_at_origin());
  }

  TEST_CASE("serialization round-trips") {
    const Expression e = ExactComplex(Rational(3, 7), -2) * pow(Z(), 2) * Expression::ln_zbar() +
                         ExactComplex(Rational(-1, 3)) * Expression::monomial(1, {-2, 1, 0, 0}) + Expression(5);
    const std::string s = to_string(e);
    CHECK(parse_expression(s) == e);
    CHECK(to_string(parse_expression(s)) == s);
    CHECK_THROWS(parse_expression("(1+0 i) q^2"));
  }

  TEST_CASE("numeric evaluation uses the principal branch") {
    const Expression e = Expression::ln_z();
    const auto v = e.eval(-1.0, 0.0);
    CHECK(v.real() == doctest::Approx(0.0));
    CHECK(v.imag() == doctest::Approx(3.141592653589793));
    CHECK_THROWS_AS(e.eval(0.0, 0.0), SingularPointError);
    const NumericExpression<double> n(pow(Z(), 2) * Zb());
    const auto w = n.eval(1.0, 2.0);
    REQUIRE(w);
    // z^2 zbar = |z|^2 z = 5 (1 + 2i)
    CHECK(w->re == doctest::Approx(5.0));
    CHECK(w->im == doctest::Approx(10.0));
  }

  TEST_CASE("conjugation covariance on random expressions") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
      Expression e;
      for (int t = 0; t < 4; ++t) {
        e += Expression::monomial(random_complex(rng), {static_cast<int>(rng() % 5) - 1, static_cast<int>(rng() % 4),
                                                        static_cast<int>(rng() % 2), 0});
      }
      CHECK(conjugate(d_dz(e)) == d_dzbar(conjugate(e)));
      CHECK(conjugate(conjugate(e)) == e);
      CHECK((e + conjugate(e)).is_real());
    }
  }
}
