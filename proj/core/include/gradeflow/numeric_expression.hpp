#pragma once

// Floating evaluation of an Expression in a chosen real type. The quad
// precision instantiation feeds the finite-difference oracle, where stencils
// up to fifth order would otherwise drown in double rounding.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include <quadmath.h>

#include "gradeflow/expression.hpp"

namespace gradeflow {

using Quad = __float128;

namespace real_math {

inline double log(double v) { return std::log(v); }
inline double atan2(double y, double x) { return std::atan2(y, x); }
inline double sqrt(double v) { return std::sqrt(v); }
inline double fabs(double v) { return std::fabs(v); }
inline Quad log(Quad v) { return logq(v); }
inline Quad atan2(Quad y, Quad x) { return atan2q(y, x); }
inline Quad sqrt(Quad v) { return sqrtq(v); }
inline Quad fabs(Quad v) { return fabsq(v); }

}  // namespace real_math

/// Exact rational to quad precision (correctly scaled, rounded once per limb).
Quad to_quad(const Rational& r);

template <typename Real>
Real to_real(const Rational& r) {
  if constexpr (std::is_same_v<Real, Quad>) {
    return to_quad(r);
  } else {
    return static_cast<Real>(r.get_d());
  }
}

template <typename Real>
struct ComplexOf {
  Real re{0};
  Real im{0};

  ComplexOf operator*(const ComplexOf& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  ComplexOf operator+(const ComplexOf& o) const { return {re + o.re, im + o.im}; }
  ComplexOf reciprocal() const {
    Real n = re * re + im * im;
    return {re / n, -im / n};
  }
};

template <typename Real>
ComplexOf<Real> ipow(ComplexOf<Real> base, int exponent) {
  if (exponent < 0) return ipow(base.reciprocal(), -exponent);
  ComplexOf<Real> result{Real(1), Real(0)};
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

/// Pre-converted coefficient table for repeated floating evaluation. Powers
/// of z, zbar and the logs are tabulated once per point and shared by all terms.
template <typename Real>
class NumericExpression {
 public:
  explicit NumericExpression(const Expression& e)
      : singular_origin_(e.singular_at_origin()), branch_cut_(e.has_branch_cut()), logs_(e.has_logs()) {
    terms_.reserve(e.size());
    for (const Term& t : e.terms()) {
      terms_.push_back({{to_real<Real>(t.coeff.re()), to_real<Real>(t.coeff.im())}, t.mono});
      z_.include(t.mono.zpow);
      zb_.include(t.mono.zbarpow);
      lnz_.include(t.mono.lnzpow);
      lnzb_.include(t.mono.lnzbarpow);
    }
  }

  bool singular_at_origin() const { return singular_origin_; }
  bool has_branch_cut() const { return branch_cut_; }

  /// Complex value; std::nullopt at z = 0 when the expression is singular there.
  std::optional<ComplexOf<Real>> eval(Real x, Real y) const {
    const bool origin = x == Real(0) && y == Real(0);
    if (origin && singular_origin_) return std::nullopt;
    const ComplexOf<Real> z{x, y};
    const ComplexOf<Real> zb{x, y == Real(0) ? Real(0) : -y};
    ComplexOf<Real> lnz{}, lnzb{};
    if (!origin && logs_) {
      const Real log_r = real_math::log(x * x + y * y) / Real(2);
      const Real arg = real_math::atan2(y == Real(0) ? Real(0) : y, x);
      lnz = {log_r, arg};
      lnzb = {log_r, -arg};
    }
    thread_local std::vector<ComplexOf<Real>> zt, zbt, lnzt, lnzbt;
    z_.fill(z, zt);
    zb_.fill(zb, zbt);
    lnz_.fill(lnz, lnzt);
    lnzb_.fill(lnzb, lnzbt);
    ComplexOf<Real> sum{};
    for (const auto& t : terms_) {
      ComplexOf<Real> v = t.coeff;
      if (t.mono.zpow != 0) v = v * zt[z_.slot(t.mono.zpow)];
      if (t.mono.zbarpow != 0) v = v * zbt[zb_.slot(t.mono.zbarpow)];
      if (t.mono.lnzpow != 0) v = v * lnzt[lnz_.slot(t.mono.lnzpow)];
      if (t.mono.lnzbarpow != 0) v = v * lnzbt[lnzb_.slot(t.mono.lnzbarpow)];
      sum = sum + v;
    }
    return sum;
  }

  /// Real part only; std::nullopt at a singular origin.
  std::optional<Real> real_value(Real x, Real y) const {
    auto v = eval(x, y);
    if (!v) return std::nullopt;
    return v->re;
  }

 private:
  struct NumericTerm {
    ComplexOf<Real> coeff;
    Monomial mono;
  };
  /// Exponent range [lo, hi] (always containing 0) of one base.
  struct PowerRange {
    int lo = 0;
    int hi = 0;
    void include(int e) {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    std::size_t slot(int e) const { return static_cast<std::size_t>(e - lo); }
    void fill(const ComplexOf<Real>& base, std::vector<ComplexOf<Real>>& table) const {
      table.assign(static_cast<std::size_t>(hi - lo + 1), ComplexOf<Real>{});
      table[slot(0)] = {Real(1), Real(0)};
      for (int e = 1; e <= hi; ++e) table[slot(e)] = table[slot(e - 1)] * base;
      if (lo < 0) {
        const ComplexOf<Real> inv = base.reciprocal();
        for (int e = -1; e >= lo; --e) table[slot(e)] = table[slot(e + 1)] * inv;
      }
    }
  };
  std::vector<NumericTerm> terms_;
  PowerRange z_, zb_, lnz_, lnzb_;
  bool singular_origin_;
  bool branch_cut_;
  bool logs_;
};

}  // namespace gradeflow
