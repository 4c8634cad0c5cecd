#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gradeflow {

using Rational = mpq_class;

/// Parses "p", "p/q", or a finite decimal such as "-0.25" or "2.5e-3" into an
/// exact rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form; integers print without a denominator.
std::string to_string(const Rational& r);

/// Complex number with exact rational parts.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  ExactComplex(long re) : re_(re), im_(0) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(int re) : re_(re), im_(0) {}   // NOLINT(google-explicit-constructor)

  static ExactComplex i() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  ExactComplex conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const ExactComplex& o);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  ExactComplex operator-() const { return {-re_, -im_}; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Integer power (negative exponents allowed for nonzero base).
ExactComplex pow(const ExactComplex& base, int exponent);

/// Textual form "re+im i" / "re-im i" with exact rationals, e.g. "3/2-1/4 i".
std::string to_string(const ExactComplex& c);

/// Parses complex literals "a", "bi", "a+bi", "a-bi", "i", "-i" where a and b
/// are decimals or p/q rationals. The imaginary unit must be written 'i'.
/// Also accepts the serialization form produced by to_string ("a+b i").
ExactComplex parse_complex(std::string_view text);

}  // namespace gradeflow
