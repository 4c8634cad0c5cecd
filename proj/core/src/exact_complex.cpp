#include "gradeflow/exact_complex.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace gradeflow {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("malformed number '" + std::string(text) + "'");
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) bad_number(text);
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  auto dot = s.find('.');
  std::string_view int_part = s.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) bad_number(text);
  if (!int_part.empty() && !all_digits(int_part)) bad_number(text);
  if (!frac_part.empty() && !all_digits(frac_part)) bad_number(text);
  if (dot != std::string_view::npos && s.find('.', dot + 1) != std::string_view::npos) bad_number(text);
  digits.append(int_part);
  digits.append(frac_part);
  exponent -= static_cast<long>(frac_part.size());

  mpz_class mantissa(digits);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational value = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) bad_number(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+')) {
      num_digits.remove_prefix(1);
    }
    if (!all_digits(num_digits) || !all_digits(den)) bad_number(text);
    mpz_class d(std::string{den});
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    mpz_class n(std::string{num_digits});
    if (num.front() == '-') n = -n;
    Rational r(n, d);
    r.canonicalize();
    return r;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& r) { return r.get_str(); }

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
  if (o.is_zero()) throw std::domain_error("division by zero complex");
  Rational n = o.norm();
  Rational re = (re_ * o.re_ + im_ * o.im_) / n;
  Rational im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactComplex pow(const ExactComplex& base, int exponent) {
  if (exponent < 0) return ExactComplex(1) / pow(base, -exponent);
  ExactComplex result(1);
  ExactComplex b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result *= b;
    b *= b;
    e >>= 1U;
  }
  return result;
}

std::string to_string(const ExactComplex& c) {
  std::string out = to_string(c.re());
  if (sgn(c.im()) < 0) {
    out += "-" + to_string(Rational(-c.im()));
  } else {
    out += "+" + to_string(c.im());
  }
  out += " i";
  return out;
}

ExactComplex parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  auto fail = [&]() -> ExactComplex {
    throw std::invalid_argument("malformed complex literal '" + std::string(text) + "'");
  };
  for (char ch : s) {
    if (std::isalpha(static_cast<unsigned char>(ch)) && ch != 'i' && ch != 'e' && ch != 'E') return fail();
  }

  // Split point: last sign that is not leading and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }

  auto imag_value = [&](std::string_view part) -> Rational {
    // part includes its trailing 'i'
    std::string_view body = part.substr(0, part.size() - 1);
    if (body.empty() || body == "+") return 1;
    if (body == "-") return -1;
    if (body.find('i') != std::string_view::npos) fail();
    return parse_rational(body);
  };

  try {
    if (s.back() == 'i') {
      if (std::count(s.begin(), s.end(), 'i') != 1) return fail();
      if (split == std::string::npos) return {0, imag_value(s)};
      Rational re = parse_rational(std::string_view(s).substr(0, split));
      Rational im = imag_value(std::string_view(s).substr(split));
      return {re, im};
    }
    if (s.find('i') != std::string::npos) return fail();
    return {parse_rational(s), 0};
  } catch (const std::invalid_argument&) {
    return fail();
  }
}

}  // namespace gradeflow
