#include "gradeflow/catalog.hpp"

#include <stdexcept>

namespace gradeflow {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const ExactComplex kI = ExactComplex::i();

Expression Z() { return Expression::z(); }
Expression Zb() { return Expression::zbar(); }
Expression ZZb() { return Expression::z() * Expression::zbar(); }
Expression C(const ExactComplex& c) { return Expression(c); }
Expression R(const Rational& r) { return Expression(ExactComplex(r)); }

}  // namespace

const std::vector<std::string>& family_keys() {
  static const std::vector<std::string> keys{"constant",    "linear_complex", "linear_real", "linear_shifted",
                                             "linear_imag", "log",            "product"};
  return keys;
}

std::string family_key(const SolutionFamily& f) { return family_keys()[f.index()]; }

std::string family_case_label(const SolutionFamily& f) {
  static const std::vector<std::string> labels{"I", "II(i)", "II(ii)", "II(iii)", "II(iv)", "II(v)", "II(vi)"};
  return labels[f.index()];
}

SolutionFamily family_from_key(std::string_view key) {
  if (key == "constant") return ConstantVorticity{};
  if (key == "linear_complex") return LinearComplex{};
  if (key == "linear_real") return LinearRealB{};
  if (key == "linear_shifted") return LinearShifted{};
  if (key == "linear_imag") return LinearImag{};
  if (key == "log") return LogVorticity{};
  if (key == "product") return ProductVorticity{};
  throw std::invalid_argument("unknown family '" + std::string(key) + "'");
}

void check_family(const SolutionFamily& f) {
  std::visit(Overloaded{
                 [](const ConstantVorticity&) {},
                 [](const LinearComplex& p) {
                   if (p.m1.is_zero()) throw std::invalid_argument("linear_complex requires m1 != 0");
                 },
                 [](const LinearRealB& p) {
                   if (sgn(p.B) == 0) throw std::invalid_argument("linear_real requires B != 0");
                 },
                 [](const LinearShifted& p) {
                   if (sgn(p.D) == 0) throw std::invalid_argument("linear_shifted requires D != 0");
                 },
                 [](const LinearImag& p) {
                   if (sgn(p.B) == 0) throw std::invalid_argument("linear_imag requires B != 0");
                 },
                 [](const LogVorticity&) {},
                 [](const ProductVorticity&) {},
             },
             f);
}

StreamFunction build_psi(const SolutionFamily& f, const MaterialConstants& c) {
  check_family(f);
  const ExactComplex lambda(c.lambda());
  Expression psi = std::visit(
      Overloaded{
          [&](const ConstantVorticity& p) {
            const Expression z4 = pow(Z(), 4), zb4 = pow(Zb(), 4);
            return R(-p.omega0 / 4) * ZZb() + kI * (C(p.a1) * z4 - C(p.a1.conj()) * zb4) / ExactComplex(24) +
                   (C(p.a2) * pow(Z(), 3) + C(p.a2.conj()) * pow(Zb(), 3)) / ExactComplex(6) +
                   (C(p.a3) * pow(Z(), 2) + C(p.a3.conj()) * pow(Zb(), 2)) / ExactComplex(2) +
                   (C(p.a4) * Z() + C(p.a4.conj()) * Zb()) + R(p.a);
          },
          [&](const LinearComplex& p) {
            const ExactComplex m1 = p.m1, m1b = p.m1.conj();
            return R(Rational(-1, 8)) * ZZb() * (C(m1) * Z() + C(m1b) * Zb()) -
                   (C(pow(m1, 3)) * pow(Z(), 3) + C(pow(m1b, 3)) * pow(Zb(), 3)) / (ExactComplex(24) * m1 * m1b) +
                   ExactComplex(0, 20) * lambda * (C(m1b * m1b) * pow(Zb(), 2) - C(m1 * m1) * pow(Z(), 2)) + R(p.m);
          },
          [&](const LinearRealB& p) {
            const ExactComplex B(p.B);
            return C(-B / ExactComplex(8)) * ZZb() * (Z() + Zb()) -
                   C(B / ExactComplex(24)) * (pow(Z(), 3) + pow(Zb(), 3)) +
                   ExactComplex(0, 20) * B * B * lambda * (Zb() - Z()) + R(p.n);
          },
          [&](const LinearShifted& p) {
            const ExactComplex D(p.D), E(p.E);
            return C(-D / ExactComplex(8)) * ZZb() * (Z() + Zb() + C(ExactComplex(2) * E)) -
                   C(D / ExactComplex(24)) * (pow(Z(), 3) + pow(Zb(), 3)) -
                   C(D * E / ExactComplex(8)) * (pow(Z(), 2) + pow(Zb(), 2)) +
                   ExactComplex(0, 20) * lambda * D * D * (pow(Zb(), 2) - pow(Z(), 2)) +
                   ExactComplex(0, 20) * lambda * D * D * E * (Zb() - Z()) + R(p.q);
          },
          [&](const LinearImag& p) {
            const ExactComplex B(p.B);
            const unsigned k = p.quadratic_variant ? 2 : 3;
            return C(-B * kI / ExactComplex(8)) * ZZb() * (Z() - Zb()) +
                   C(B * kI / ExactComplex(24)) * (pow(Z(), 3) - pow(Zb(), 3)) +
                   ExactComplex(0, 20) * lambda * B * B * (pow(Z(), k) - pow(Zb(), k)) + R(p.r);
          },
          [&](const LogVorticity& p) {
            const Expression ln_sum = Expression::ln_z() + Expression::ln_zbar();
            return R(-p.B / 4) * ZZb() * (ln_sum - Expression(2)) - R(p.D1 / 4) * ZZb() + R(p.m6) * ln_sum + R(p.s);
          },
          [&](const ProductVorticity& p) {
            const ExactComplex mu_over_rho(c.mu() / c.rho());
            return R(-p.B / 16) * pow(ZZb(), 2) -
                   kI * mu_over_rho * (Expression::ln_z() - Expression::ln_zbar()) + R(p.t);
          },
      },
      f);
  return StreamFunction(std::move(psi), family_key(f) + " " + family_case_label(f));
}

Expression omega_of(const SolutionFamily& f) {
  return std::visit(Overloaded{
                        [](const ConstantVorticity& p) { return R(p.omega0); },
                        [](const LinearComplex& p) { return C(p.m1) * Z() + C(p.m1.conj()) * Zb(); },
                        [](const LinearRealB& p) { return R(p.B) * (Z() + Zb()); },
                        [](const LinearShifted& p) { return R(p.D) * (Z() + Zb() + R(p.E)); },
                        [](const LinearImag& p) { return C(ExactComplex(0, p.B)) * (Z() - Zb()); },
                        [](const LogVorticity& p) {
                          return R(p.B) * (Expression::ln_z() + Expression::ln_zbar()) + R(p.D1);
                        },
                        [](const ProductVorticity& p) { return R(p.B) * ZZb(); },
                    },
                    f);
}

Expression holomorphic_part(const SolutionFamily& f, const MaterialConstants& c) {
  check_family(f);
  const ExactComplex lambda(c.lambda());
  const ExactComplex twenty_i(0, 20);
  return std::visit(
      Overloaded{
          [&](const ConstantVorticity& p) {
            return C(kI * p.a1 / ExactComplex(24)) * pow(Z(), 4) + C(p.a2 / ExactComplex(6)) * pow(Z(), 3) +
                   C(p.a3 / ExactComplex(2)) * pow(Z(), 2) + C(p.a4) * Z() + R(p.a / 2);
          },
          [&](const LinearComplex& p) {
            return C(-(p.m1 * p.m1) / (ExactComplex(24) * p.m1.conj())) * pow(Z(), 3) -
                   C(twenty_i * lambda * p.m1 * p.m1) * pow(Z(), 2) + R(p.m / 2);
          },
          [&](const LinearRealB& p) {
            const ExactComplex B(p.B);
            return C(-B / ExactComplex(24)) * pow(Z(), 3) - C(twenty_i * lambda * B * B) * Z() + R(p.n / 2);
          },
          [&](const LinearShifted& p) {
            const ExactComplex D(p.D), E(p.E);
            return C(-D / ExactComplex(24)) * pow(Z(), 3) - C(D * E / ExactComplex(8)) * pow(Z(), 2) -
                   C(twenty_i * lambda * D * D) * pow(Z(), 2) - C(twenty_i * lambda * D * D * E) * Z() +
                   R(p.q / 2);
          },
          [&](const LinearImag& p) {
            const ExactComplex B(p.B);
            const unsigned k = p.quadratic_variant ? 2 : 3;
            return C(B * kI / ExactComplex(24)) * pow(Z(), 3) + C(twenty_i * lambda * B * B) * pow(Z(), k) +
                   R(p.r / 2);
          },
          [&](const LogVorticity& p) { return R(p.m6) * Expression::ln_z() + R(p.s / 2); },
          [&](const ProductVorticity& p) {
            return C(-kI * ExactComplex(c.mu() / c.rho())) * Expression::ln_z() + R(p.t / 2);
          },
      },
      f);
}

FigurePreset figure_preset(int n) {
  // Constants the captions leave open: mu = 1, alpha1 = 1, alpha2 = 0, rho = 1.
  // They satisfy the admissibility inequalities for every beta3 used below.
  auto constants = [](Rational beta3, Rational mu = 1) { return MaterialConstants(std::move(mu), 1, 1, 0, std::move(beta3)); };
  const std::string open_constants = "mu=1, rho=1, alpha1=1, alpha2=0 (not stated in caption)";
  switch (n) {
    case 1:
      return {1,
              ConstantVorticity{-1, ExactComplex(1, 2), ExactComplex(1, 1), ExactComplex(1, 5),
                                ExactComplex(2, Rational(1, 2)), 2},
              constants(1),
              {-1, 1},
              {-1, 1},
              "omega0=-1, a1=1+2i, a2=1+i, a3=1+5i, a4=2+0.5i, a=2",
              {"beta3=1 (not stated in caption)", open_constants}};
    case 2:
      return {2, LinearComplex{ExactComplex(1, 2), 1}, constants(Rational(3, 10)), {-1, 1}, {-1, 1},
              "m1=1+2i, m=1, lambda=0.3", {open_constants}};
    case 3:
      return {3, LinearRealB{-2, 1}, constants(2), {-10, 10}, {0, 10}, "B=-2, lambda=2, n=1", {open_constants}};
    case 4:
      return {4, LinearShifted{1, 1, -1}, constants(2), {-10, 10}, {-10, 10}, "D=E=1, lambda=2, q=-1",
              {open_constants}};
    case 5:
      return {5, LinearImag{-5, 10, false}, constants(3), {-2, 10}, {0, 8}, "B=-5, lambda=3, r=10",
              {open_constants}};
    case 6:
      return {6, LogVorticity{1, 1, 2, 4}, constants(1), {-10, 2}, {-1, 2}, "m6=2, s=4",
              {"B, D1 assumed (B=1, D1=1)", "beta3=1 (not stated in caption)", open_constants}};
    case 7:
      return {7, ProductVorticity{1, 2}, constants(1, 12), {-1, 10}, {-1, 10}, "B=1, mu=12, rho=1, t=2",
              {"beta3=1, alpha1=1, alpha2=0 (not stated in caption)"}};
    default:
      throw std::out_of_range("figure id must be in 1..7, got " + std::to_string(n));
  }
}

std::string to_string(ClassicalFlowKind k) {
  switch (k) {
    case ClassicalFlowKind::kCouette:
      return "couette";
    case ClassicalFlowKind::kSpiralVortex:
      return "spiral_vortex";
    case ClassicalFlowKind::kElliptic:
      return "elliptic";
    case ClassicalFlowKind::kConcentricCircles:
      return "concentric_circles";
    case ClassicalFlowKind::kRectangularHyperbolae:
      return "rectangular_hyperbolae";
  }
  return "unknown";
}

ClassicalFlowKind classical_flow_from_string(std::string_view name) {
  for (auto k : {ClassicalFlowKind::kCouette, ClassicalFlowKind::kSpiralVortex, ClassicalFlowKind::kElliptic,
                 ClassicalFlowKind::kConcentricCircles, ClassicalFlowKind::kRectangularHyperbolae}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unsupported classical flow '" + std::string(name) + "'");
}

StreamFunction classical_flow(ClassicalFlowKind kind, const ClassicalFlowParams& p, const MaterialConstants& c) {
  auto assemble = [](const Rational& omega0, const Expression& A, std::string label) {
    return StreamFunction(R(-omega0 / 4) * ZZb() + A + conjugate(A), std::move(label));
  };
  switch (kind) {
    case ClassicalFlowKind::kCouette:
      // psi = k y^2 / 2 = k zz/4 - k (z^2 + zb^2)/8
      return assemble(-p.shear_rate, R(-p.shear_rate / 8) * pow(Z(), 2), "couette");
    case ClassicalFlowKind::kConcentricCircles:
      if (sgn(p.omega0) == 0) throw std::invalid_argument("concentric circles require omega0 != 0");
      return assemble(p.omega0, Expression(), "concentric_circles");
    case ClassicalFlowKind::kElliptic: {
      if (sgn(p.omega0) == 0) throw std::invalid_argument("ellipses require omega0 != 0");
      if (!(64 * p.c.norm() < p.omega0 * p.omega0)) {
        throw std::invalid_argument("ellipses require |c| < |omega0|/8");
      }
      return assemble(p.omega0, C(p.c) * pow(Z(), 2), "elliptic");
    }
    case ClassicalFlowKind::kRectangularHyperbolae:
      if (p.c.is_zero()) throw std::invalid_argument("hyperbolae require c != 0");
      return assemble(0, C(p.c) * pow(Z(), 2), "rectangular_hyperbolae");
    case ClassicalFlowKind::kSpiralVortex:
      if (sgn(c.beta3()) != 0) throw std::invalid_argument("spiral vortex requires beta3 = 0");
      if (p.c.is_zero()) throw std::invalid_argument("spiral vortex requires c != 0");
      return assemble(0, C(p.c) * Expression::ln_z(), "spiral_vortex");
  }
  throw std::invalid_argument("unsupported classical flow kind");
}

}  // namespace gradeflow
