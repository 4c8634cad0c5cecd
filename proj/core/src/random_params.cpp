#include "gradeflow/random_params.hpp"

#include <stdexcept>

namespace gradeflow {
namespace {

long uniform_int(std::mt19937_64& rng, long lo, long hi) {
  const auto span = static_cast<unsigned long long>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

}  // namespace

Rational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
  Rational r(uniform_int(rng, -max_num, max_num), uniform_int(rng, 1, max_den));
  r.canonicalize();
  return r;
}

Rational random_nonzero_rational(std::mt19937_64& rng, int max_num, int max_den) {
  for (;;) {
    Rational r = random_rational(rng, max_num, max_den);
    if (sgn(r) != 0) return r;
  }
}

ExactComplex random_complex(std::mt19937_64& rng, int max_num, int max_den) {
  Rational re = random_rational(rng, max_num, max_den);
  Rational im = random_rational(rng, max_num, max_den);
  return {re, im};
}

SolutionFamily random_family(std::string_view key, std::mt19937_64& rng) {
  if (key == "constant") {
    ConstantVorticity p;
    p.omega0 = random_rational(rng);
    p.a1 = random_complex(rng);
    p.a2 = random_complex(rng);
    p.a3 = random_complex(rng);
    p.a4 = random_complex(rng);
    p.a = random_rational(rng);
    return p;
  }
  if (key == "linear_complex") {
    ExactComplex m1 = random_complex(rng);
    while (m1.is_zero()) m1 = random_complex(rng);
    return LinearComplex{m1, random_rational(rng)};
  }
  if (key == "linear_real") return LinearRealB{random_nonzero_rational(rng), random_rational(rng)};
  if (key == "linear_shifted") {
    Rational D = random_nonzero_rational(rng);
    Rational E = random_rational(rng);
    return LinearShifted{D, E, random_rational(rng)};
  }
  if (key == "linear_imag") {
    Rational B = random_nonzero_rational(rng);
    return LinearImag{B, random_rational(rng), false};
  }
  if (key == "log") {
    Rational B = random_rational(rng), D1 = random_rational(rng), m6 = random_rational(rng);
    return LogVorticity{B, D1, m6, random_rational(rng)};
  }
  if (key == "product") {
    Rational B = random_rational(rng);
    return ProductVorticity{B, random_rational(rng)};
  }
  throw std::invalid_argument("unknown family '" + std::string(key) + "'");
}

MaterialConstants random_constants(std::mt19937_64& rng) {
  Rational mu(uniform_int(rng, 1, 9), uniform_int(rng, 1, 4));
  Rational rho(uniform_int(rng, 1, 9), uniform_int(rng, 1, 4));
  Rational beta3(uniform_int(rng, 0, 9), uniform_int(rng, 1, 4));
  Rational alpha1(uniform_int(rng, 0, 9), uniform_int(rng, 1, 4));
  mu.canonicalize();
  rho.canonicalize();
  beta3.canonicalize();
  alpha1.canonicalize();
  // Pick alpha2 so that (alpha1 + alpha2)^2 <= 24 mu beta3.
  const Rational bound_sq = 24 * mu * beta3;
  Rational alpha2 = -alpha1;
  for (int tries = 0; tries < 8; ++tries) {
    Rational candidate = random_rational(rng);
    const Rational s = alpha1 + candidate;
    if (s * s <= bound_sq) {
      alpha2 = candidate;
      break;
    }
  }
  return {mu, rho, alpha1, alpha2, beta3};
}

}  // namespace gradeflow
