#pragma once

// Exact bivariate algebra in z and zbar.
//
// An Expression is a finite sum of log-Laurent terms
//     c * z^a * zbar^b * (ln z)^p * (ln zbar)^q
// with exact complex-rational c, integer a, b and nonnegative p, q. The set is
// closed under +, *, conjugation and both Wirtinger derivatives, which is all
// the governing equation needs.

#include <compare>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gradeflow/exact_complex.hpp"

namespace gradeflow {

/// Exponent key of a term; ordering is the canonical term order.
struct Monomial {
  int zpow = 0;
  int zbarpow = 0;
  int lnzpow = 0;
  int lnzbarpow = 0;

  auto operator<=>(const Monomial&) const = default;

  Monomial conj() const { return {zbarpow, zpow, lnzbarpow, lnzpow}; }
  Monomial operator*(const Monomial& o) const {
    return {zpow + o.zpow, zbarpow + o.zbarpow, lnzpow + o.lnzpow, lnzbarpow + o.lnzbarpow};
  }
  bool is_constant() const { return zpow == 0 && zbarpow == 0 && lnzpow == 0 && lnzbarpow == 0; }
};

struct Term {
  ExactComplex coeff;
  Monomial mono;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Thrown when evaluating at z = 0 an expression with Laurent or log terms.
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class Expression {
 public:
  Expression() = default;
  Expression(ExactComplex constant);  // NOLINT(google-explicit-constructor)
  Expression(int constant) : Expression(ExactComplex(constant)) {}  // NOLINT

  /// Builds the canonical form of an arbitrary (unsorted, possibly duplicated) term list.
  static Expression from_terms(std::vector<Term> terms);
  static Expression monomial(ExactComplex coeff, Monomial mono);

  static Expression z() { return monomial(1, {1, 0, 0, 0}); }
  static Expression zbar() { return monomial(1, {0, 1, 0, 0}); }
  static Expression ln_z() { return monomial(1, {0, 0, 1, 0}); }
  static Expression ln_zbar() { return monomial(1, {0, 0, 0, 1}); }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  /// No zbar and no ln zbar dependence.
  bool is_holomorphic() const;
  /// True when a negative power or a log factor makes z = 0 singular.
  bool singular_at_origin() const;
  bool has_logs() const;
  /// True when the value jumps across the negative real axis, i.e. the logs
  /// do not enter only through ln(z zbar).
  bool has_branch_cut() const;
  /// Coefficient of the given monomial (zero if absent).
  ExactComplex coefficient(const Monomial& mono) const;

  Expression& operator+=(const Expression& o);
  Expression& operator-=(const Expression& o);
  Expression& operator*=(const Expression& o);
  Expression& operator*=(const ExactComplex& c);
  Expression& operator/=(const ExactComplex& c);

  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator*(Expression a, const ExactComplex& c) { return a *= c; }
  friend Expression operator*(const ExactComplex& c, Expression a) { return a *= c; }
  friend Expression operator/(Expression a, const ExactComplex& c) { return a /= c; }
  Expression operator-() const;

  friend bool operator==(const Expression&, const Expression&) = default;

  /// Numeric value at z = x + iy. ln z is principal, imaginary part in (-pi, pi];
  /// ln zbar is conj(ln z), so real expressions stay real on the negative axis.
  std::complex<double> eval(double x, double y) const;

 private:
  std::vector<Term> terms_;  // sorted by mono, nonzero coefficients, unique keys
};

Expression pow(const Expression& base, unsigned exponent);

Expression conjugate(const Expression& e);
Expression d_dz(const Expression& e);
Expression d_dzbar(const Expression& e);
/// d/dz applied n times.
Expression d_dz(const Expression& e, unsigned n);
Expression d_dzbar(const Expression& e, unsigned n);
/// Real-variable derivatives: d/dx = d/dz + d/dzbar, d/dy = i (d/dz - d/dzbar).
Expression d_dx(const Expression& e);
Expression d_dy(const Expression& e);
Expression re_part(const Expression& e);
Expression im_part(const Expression& e);
/// 4 d^2/(dz dzbar).
Expression laplacian(const Expression& e);

/// Formal derivatives with respect to the log symbols ln z and ln zbar.
Expression d_dlnz(const Expression& e);
Expression d_dlnzbar(const Expression& e);

/// Ordered textual form, terms as "(re+im i) z^a zb^b lnz^p lnzb^q" joined by
/// " + "; the zero expression prints as "0". Round-trips through
/// parse_expression bit-exactly.
std::string to_string(const Expression& e);
Expression parse_expression(std::string_view text);

/// Human-readable form for reports, e.g. "2 z zb - 3/2i z^2". Not parseable.
std::string to_pretty_string(const Expression& e);

}  // namespace gradeflow
