#include "gradeflow/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace gradeflow {
namespace {

std::complex<double> ipow(std::complex<double> base, int exponent) {
  if (exponent < 0) return 1.0 / ipow(base, -exponent);
  std::complex<double> result(1.0, 0.0);
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

Expression map_terms(const Expression& e, auto&& fn) {
  std::vector<Term> out;
  out.reserve(e.size() * 2);
  for (const Term& t : e.terms()) fn(t, out);
  return Expression::from_terms(std::move(out));
}

}  // namespace

Expression::Expression(ExactComplex constant) {
  if (!constant.is_zero()) terms_.push_back({std::move(constant), {}});
}

Expression Expression::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  Expression result;
  for (Term& t : terms) {
    if (!result.terms_.empty() && result.terms_.back().mono == t.mono) {
      result.terms_.back().coeff += t.coeff;
    } else {
      if (!result.terms_.empty() && result.terms_.back().coeff.is_zero()) result.terms_.pop_back();
      result.terms_.push_back(std::move(t));
    }
  }
  if (!result.terms_.empty() && result.terms_.back().coeff.is_zero()) result.terms_.pop_back();
  return result;
}

Expression Expression::monomial(ExactComplex coeff, Monomial mono) {
  if (mono.lnzpow < 0 || mono.lnzbarpow < 0) {
    throw std::invalid_argument("log exponents must be nonnegative");
  }
  Expression e;
  if (!coeff.is_zero()) e.terms_.push_back({std::move(coeff), mono});
  return e;
}

bool Expression::is_real() const { return *this == conjugate(*this); }

bool Expression::is_holomorphic() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return t.mono.zbarpow == 0 && t.mono.lnzbarpow == 0;
  });
}

bool Expression::singular_at_origin() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return t.mono.zpow < 0 || t.mono.zbarpow < 0 || t.mono.lnzpow > 0 || t.mono.lnzbarpow > 0;
  });
}

bool Expression::has_logs() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return t.mono.lnzpow > 0 || t.mono.lnzbarpow > 0;
  });
}

bool Expression::has_branch_cut() const {
  return !(d_dlnz(*this) - d_dlnzbar(*this)).is_zero();
}

ExactComplex Expression::coefficient(const Monomial& mono) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mono,
                             [](const Term& t, const Monomial& m) { return t.mono < m; });
  if (it != terms_.end() && it->mono == mono) return it->coeff;
  return {};
}

Expression& Expression::operator+=(const Expression& o) {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->mono < b->mono)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->mono < a->mono) {
      merged.push_back(*b++);
    } else {
      ExactComplex c = a->coeff + b->coeff;
      if (!c.is_zero()) merged.push_back({std::move(c), a->mono});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Expression& Expression::operator-=(const Expression& o) { return *this += -o; }

Expression operator*(const Expression& a, const Expression& b) {
  std::map<Monomial, ExactComplex> acc;
  for (const Term& s : a.terms()) {
    for (const Term& t : b.terms()) {
      acc[s.mono * t.mono] += s.coeff * t.coeff;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [mono, coeff] : acc) {
    if (!coeff.is_zero()) out.push_back({std::move(coeff), mono});
  }
  Expression result;
  result.terms_ = std::move(out);
  return result;
}

Expression& Expression::operator*=(const Expression& o) { return *this = *this * o; }

Expression& Expression::operator*=(const ExactComplex& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= c;
  return *this;
}

Expression& Expression::operator/=(const ExactComplex& c) {
  for (Term& t : terms_) t.coeff /= c;
  return *this;
}

Expression Expression::operator-() const {
  Expression r = *this;
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

std::complex<double> Expression::eval(double x, double y) const {
  if (x == 0.0 && y == 0.0 && singular_at_origin()) {
    throw SingularPointError("expression is singular at z = 0");
  }
  const std::complex<double> z(x, y);
  const std::complex<double> zb(x, y == 0.0 ? 0.0 : -y);
  const double log_r = 0.5 * std::log(x * x + y * y);
  const double arg = std::atan2(y == 0.0 ? 0.0 : y, x);
  const std::complex<double> lnz(log_r, arg);
  const std::complex<double> lnzb(log_r, -arg);
  std::complex<double> sum(0.0, 0.0);
  for (const Term& t : terms_) {
    std::complex<double> v = t.coeff.to_complex();
    if (t.mono.zpow != 0) v *= ipow(z, t.mono.zpow);
    if (t.mono.zbarpow != 0) v *= ipow(zb, t.mono.zbarpow);
    if (t.mono.lnzpow != 0) v *= ipow(lnz, t.mono.lnzpow);
    if (t.mono.lnzbarpow != 0) v *= ipow(lnzb, t.mono.lnzbarpow);
    sum += v;
  }
  return sum;
}

Expression pow(const Expression& base, unsigned exponent) {
  Expression result(1);
  Expression b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

Expression conjugate(const Expression& e) {
  return map_terms(e, [](const Term& t, std::vector<Term>& out) {
    out.push_back({t.coeff.conj(), t.mono.conj()});
  });
}

Expression d_dz(const Expression& e) {
  return map_terms(e, [](const Term& t, std::vector<Term>& out) {
    const Monomial& m = t.mono;
    if (m.zpow != 0) {
      out.push_back({t.coeff * ExactComplex(m.zpow), {m.zpow - 1, m.zbarpow, m.lnzpow, m.lnzbarpow}});
    }
    if (m.lnzpow != 0) {
      out.push_back({t.coeff * ExactComplex(m.lnzpow), {m.zpow - 1, m.zbarpow, m.lnzpow - 1, m.lnzbarpow}});
    }
  });
}

Expression d_dzbar(const Expression& e) {
  return map_terms(e, [](const Term& t, std::vector<Term>& out) {
    const Monomial& m = t.mono;
    if (m.zbarpow != 0) {
      out.push_back({t.coeff * ExactComplex(m.zbarpow), {m.zpow, m.zbarpow - 1, m.lnzpow, m.lnzbarpow}});
    }
    if (m.lnzbarpow != 0) {
      out.push_back({t.coeff * ExactComplex(m.lnzbarpow), {m.zpow, m.zbarpow - 1, m.lnzpow, m.lnzbarpow - 1}});
    }
  });
}

Expression d_dz(const Expression& e, unsigned n) {
  Expression r = e;
  for (unsigned k = 0; k < n; ++k) r = d_dz(r);
  return r;
}

Expression d_dzbar(const Expression& e, unsigned n) {
  Expression r = e;
  for (unsigned k = 0; k < n; ++k) r = d_dzbar(r);
  return r;
}

Expression d_dx(const Expression& e) { return d_dz(e) + d_dzbar(e); }

Expression d_dy(const Expression& e) { return ExactComplex::i() * (d_dz(e) - d_dzbar(e)); }

Expression re_part(const Expression& e) { return (e + conjugate(e)) / ExactComplex(2); }

Expression im_part(const Expression& e) { return (e - conjugate(e)) / ExactComplex(0, 2); }

Expression laplacian(const Expression& e) { return ExactComplex(4) * d_dz(d_dzbar(e)); }

Expression d_dlnz(const Expression& e) {
  return map_terms(e, [](const Term& t, std::vector<Term>& out) {
    const Monomial& m = t.mono;
    if (m.lnzpow != 0) {
      out.push_back({t.coeff * ExactComplex(m.lnzpow), {m.zpow, m.zbarpow, m.lnzpow - 1, m.lnzbarpow}});
    }
  });
}

Expression d_dlnzbar(const Expression& e) {
  return map_terms(e, [](const Term& t, std::vector<Term>& out) {
    const Monomial& m = t.mono;
    if (m.lnzbarpow != 0) {
      out.push_back({t.coeff * ExactComplex(m.lnzbarpow), {m.zpow, m.zbarpow, m.lnzpow, m.lnzbarpow - 1}});
    }
  });
}

std::string to_string(const Expression& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const Term& t : e.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(t.coeff) + ")";
    out += " z^" + std::to_string(t.mono.zpow);
    out += " zb^" + std::to_string(t.mono.zbarpow);
    out += " lnz^" + std::to_string(t.mono.lnzpow);
    out += " lnzb^" + std::to_string(t.mono.lnzbarpow);
  }
  return out;
}

namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Expression parse() {
    skip_space();
    if (text_.substr(pos_) == "0") return {};
    std::vector<Term> terms;
    while (true) {
      terms.push_back(parse_term());
      skip_space();
      if (pos_ == text_.size()) break;
      expect('+');
    }
    Expression e = Expression::from_terms(terms);
    if (e.size() != terms.size()) fail("duplicate or zero terms");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  void expect(char ch) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  int parse_factor(std::string_view name) {
    skip_space();
    if (text_.substr(pos_, name.size()) != name) fail("expected factor " + std::string(name));
    pos_ += name.size();
    expect('^');
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ == start + 1 && text_[start] == '-')) fail("expected integer exponent");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  Term parse_term() {
    expect('(');
    auto close = text_.find(')', pos_);
    if (close == std::string_view::npos) fail("unterminated coefficient");
    ExactComplex coeff = parse_complex(text_.substr(pos_, close - pos_));
    pos_ = close + 1;
    Monomial m;
    m.zpow = parse_factor("z");
    m.zbarpow = parse_factor("zb");
    m.lnzpow = parse_factor("lnz");
    m.lnzbarpow = parse_factor("lnzb");
    if (m.lnzpow < 0 || m.lnzbarpow < 0) fail("negative log exponent");
    return {coeff, m};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string pretty_coeff(const ExactComplex& c) {
  if (c.is_real()) return to_string(c.re());
  if (sgn(c.re()) == 0) {
    if (c.im() == 1) return "i";
    if (c.im() == -1) return "-i";
    return to_string(c.im()) + "i";
  }
  return "(" + to_string(c.re()) + (sgn(c.im()) < 0 ? "-" : "+") + to_string(abs(c.im())) + "i)";
}

}  // namespace

Expression parse_expression(std::string_view text) { return ExpressionParser(text).parse(); }

std::string to_pretty_string(const Expression& e) {
  if (e.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
    const Term& t = *it;
    std::string c = pretty_coeff(t.coeff);
    bool negative = !c.empty() && c.front() == '-';
    if (!first) out << (negative ? " - " : " + ");
    else if (negative) out << "-";
    if (negative) c.erase(0, 1);
    first = false;

    std::vector<std::string> factors;
    auto add = [&](const char* name, int p) {
      if (p == 0) return;
      factors.push_back(p == 1 ? std::string(name) : std::string(name) + "^" + std::to_string(p));
    };
    add("z", t.mono.zpow);
    add("zb", t.mono.zbarpow);
    add("ln(z)", t.mono.lnzpow);
    add("ln(zb)", t.mono.lnzbarpow);
    if (factors.empty() || (c != "1")) {
      out << c;
      if (!factors.empty()) out << " ";
    }
    for (std::size_t k = 0; k < factors.size(); ++k) out << (k ? " " : "") << factors[k];
  }
  return out.str();
}

}  // namespace gradeflow
