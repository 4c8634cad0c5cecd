#pragma once

// Deterministic random draws of exact parameters for property tests and the
// report's randomized runs. Integer mapping is done here rather than through
// <random> distributions so that draws are identical across standard libraries.

#include <random>
#include <string_view>

#include "gradeflow/catalog.hpp"

namespace gradeflow {

/// p/q with |p| <= max_num and 1 <= q <= max_den.
Rational random_rational(std::mt19937_64& rng, int max_num = 9, int max_den = 5);
Rational random_nonzero_rational(std::mt19937_64& rng, int max_num = 9, int max_den = 5);
ExactComplex random_complex(std::mt19937_64& rng, int max_num = 9, int max_den = 5);

/// Parameters satisfying the family's nonzero preconditions.
SolutionFamily random_family(std::string_view key, std::mt19937_64& rng);

/// Constants satisfying every admissibility inequality, rho > 0.
MaterialConstants random_constants(std::mt19937_64& rng);

}  // namespace gradeflow
