#include "gradeflow/numeric_expression.hpp"

namespace gradeflow {
namespace {

Quad mpz_to_quad(const mpz_class& v) {
  const mpz_srcptr raw = v.get_mpz_t();
  const std::size_t limbs = mpz_size(raw);
  const Quad base = ldexpq(1, GMP_NUMB_BITS);
  Quad acc = 0;
  for (std::size_t k = limbs; k-- > 0;) {
    acc = acc * base + static_cast<Quad>(mpz_getlimbn(raw, static_cast<mp_size_t>(k)));
  }
  return sgn(v) < 0 ? -acc : acc;
}

}  // namespace

Quad to_quad(const Rational& r) { return mpz_to_quad(r.get_num()) / mpz_to_quad(r.get_den()); }

}  // namespace gradeflow
