#include "gradeflow/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gradeflow/fd_oracle.hpp"
#include "gradeflow/numeric_expression.hpp"

namespace gradeflow {
namespace {

ExactComplex real(const Rational& r) { return ExactComplex(r); }

class GradientSampler {
 public:
  explicit GradientSampler(const EnergyGradient& g) : hx_(g.hx), hy_(g.hy) {}

  std::pair<Quad, Quad> at(Quad x, Quad y) const {
    auto a = hx_.real_value(x, y);
    auto b = hy_.real_value(x, y);
    if (!a || !b) throw SingularPointError("energy gradient is singular at the origin");
    return {*a, *b};
  }

 private:
  NumericExpression<Quad> hx_, hy_;
};

}  // namespace

EnergyGradient energy_gradient(const StreamFunction& psi, const MaterialConstants& c) {
  const Velocity vel = velocity(psi);
  const Expression w = vorticity(psi);
  const Expression lap_w = laplacian(w);
  EnergyGradient g;
  g.hx = real(c.rho()) * vel.v * w - real(c.mu()) * d_dy(w) - real(c.alpha1()) * vel.v * lap_w;
  g.hy = real(-c.rho()) * vel.u * w + real(c.mu()) * d_dx(w) + real(c.alpha1()) * vel.u * lap_w;
  if (sgn(c.beta3()) != 0) {
    const Expression M = shear_invariant_M(psi);
    const Expression wM = w * M;
    const Expression Mx = d_dx(M), My = d_dy(M);
    g.hx += real(-c.beta3()) * d_dy(wM) + real(2 * c.beta3()) * (d_dx(vel.u) * Mx + d_dx(vel.v) * My);
    g.hy += real(c.beta3()) * d_dx(wM) + real(2 * c.beta3()) * (d_dy(vel.u) * Mx + d_dy(vel.v) * My);
  }
  return g;
}

std::pair<double, double> energy_gradient_at(const StreamFunction& psi, const MaterialConstants& c, double x,
                                             double y) {
  const EnergyGradient g = energy_gradient(psi, c);
  return {g.hx.eval(x, y).real(), g.hy.eval(x, y).real()};
}

Expression compatibility(const EnergyGradient& g) { return d_dy(g.hx) - d_dx(g.hy); }

CompatibilityStudy fd_compatibility(const EnergyGradient& g, const std::vector<std::pair<double, double>>& points,
                                    double h0, double exact_floor) {
  if (points.empty()) throw std::invalid_argument("no sample points");
  const GradientSampler grad(g);
  CompatibilityStudy out;
  for (const auto& [x, y] : points) {
    const auto [a, b] = grad.at(x, y);
    out.gradient_scale = std::max(out.gradient_scale, static_cast<double>(std::max(fabsq(a), fabsq(b))));
  }
  std::vector<double> spacings, errors;
  for (int k = 0; k < 3; ++k) {
    const Quad h = Quad(h0) / (1 << k);
    double norm = 0.0;
    for (const auto& [xd, yd] : points) {
      const Quad x = xd, y = yd;
      const Quad dhx_dy = (grad.at(x, y + h).first - grad.at(x, y - h).first) / (2 * h);
      const Quad dhy_dx = (grad.at(x + h, y).second - grad.at(x - h, y).second) / (2 * h);
      norm = std::max(norm, static_cast<double>(fabsq(dhx_dy - dhy_dx)));
    }
    out.levels.push_back({static_cast<double>(h), norm});
    spacings.push_back(static_cast<double>(h));
    errors.push_back(norm);
  }
  const double floor = exact_floor * std::max(1.0, out.gradient_scale);
  out.exact = std::all_of(errors.begin(), errors.end(), [&](double e) { return e <= floor; });
  out.order = out.exact ? std::numeric_limits<double>::quiet_NaN() : convergence_order(spacings, errors);
  return out;
}

EnergyRecovery recover_h(const StreamFunction& psi, const MaterialConstants& c, const Grid& grid, int gauge_i,
                         int gauge_j, int substeps, double tolerance) {
  grid.validate();
  if (gauge_i < 0 || gauge_i >= grid.nx || gauge_j < 0 || gauge_j >= grid.ny) {
    throw std::out_of_range("gauge node outside the grid");
  }
  if (substeps < 1) throw std::invalid_argument("substeps must be >= 1");
  const PointwiseEvaluator where = PointwiseEvaluator::from_expression(psi.psi());
  const bool spans_real_axis = grid.y_min <= 0 && grid.y_max >= 0;
  const bool touches_origin = spans_real_axis && grid.x_min <= 0 && grid.x_max >= 0;
  const bool touches_cut = spans_real_axis && grid.x_min <= 0;
  if ((where.singular_at_origin && touches_origin) || (where.branch_cut && touches_cut)) {
    throw SingularPointError("integration domain contains a singular point or branch cut");
  }

  const EnergyGradient g = energy_gradient(psi, c);
  const GradientSampler grad(g);
  const int nx = grid.nx, ny = grid.ny;
  // Composite five-point Gauss-Legendre integral of h_x from node (i, j) to
  // (i+1, j), and of h_y from (i, j) to (i, j+1).
  const Quad r = sqrtq(Quad(10) / 7);
  const Quad nodes[5] = {-sqrtq(5 + 2 * r) / 3, -sqrtq(5 - 2 * r) / 3, 0, sqrtq(5 - 2 * r) / 3, sqrtq(5 + 2 * r) / 3};
  const Quad s70 = 13 * sqrtq(Quad(70));
  const Quad weights[5] = {(322 - s70) / 900, (322 + s70) / 900, Quad(128) / 225, (322 + s70) / 900,
                           (322 - s70) / 900};
  auto panel_sum = [&](auto&& f, Quad a, Quad b) {
    const Quad step = (b - a) / substeps;
    Quad sum = 0;
    for (int s = 0; s < substeps; ++s) {
      const Quad mid = a + (s + Quad(0.5)) * step;
      for (int k = 0; k < 5; ++k) sum += weights[k] * f(mid + nodes[k] * step / 2);
    }
    return sum * step / 2;
  };
  std::vector<Quad> seg_x(grid.size(), 0), seg_y(grid.size(), 0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Quad x0 = grid.x(i), y0 = grid.y(j);
      if (i + 1 < nx) {
        seg_x[grid.index(i, j)] = panel_sum([&](Quad x) { return grad.at(x, y0).first; }, x0, Quad(grid.x(i + 1)));
      }
      if (j + 1 < ny) {
        seg_y[grid.index(i, j)] = panel_sum([&](Quad y) { return grad.at(x0, y).second; }, y0, Quad(grid.y(j + 1)));
      }
    }
  }

  std::vector<Quad> row_first(grid.size(), 0), col_first(grid.size(), 0);
  auto sweep_x_from = [&](std::vector<Quad>& h, int j, int i0) {
    for (int i = i0 + 1; i < nx; ++i) h[grid.index(i, j)] = h[grid.index(i - 1, j)] + seg_x[grid.index(i - 1, j)];
    for (int i = i0 - 1; i >= 0; --i) h[grid.index(i, j)] = h[grid.index(i + 1, j)] - seg_x[grid.index(i, j)];
  };
  auto sweep_y_from = [&](std::vector<Quad>& h, int i, int j0) {
    for (int j = j0 + 1; j < ny; ++j) h[grid.index(i, j)] = h[grid.index(i, j - 1)] + seg_y[grid.index(i, j - 1)];
    for (int j = j0 - 1; j >= 0; --j) h[grid.index(i, j)] = h[grid.index(i, j + 1)] - seg_y[grid.index(i, j)];
  };
  sweep_x_from(row_first, gauge_j, gauge_i);
  for (int i = 0; i < nx; ++i) sweep_y_from(row_first, i, gauge_j);
  sweep_y_from(col_first, gauge_i, gauge_j);
  for (int j = 0; j < ny; ++j) sweep_x_from(col_first, j, gauge_i);

  Quad loop = 0;
  for (int i = 0; i + 1 < nx; ++i) loop += seg_x[grid.index(i, 0)] - seg_x[grid.index(i, ny - 1)];
  for (int j = 0; j + 1 < ny; ++j) loop += seg_y[grid.index(nx - 1, j)] - seg_y[grid.index(0, j)];

  const NumericExpression<Quad> compat(compatibility(g));
  EnergyRecovery out{ScalarField(grid), ScalarField(grid), ScalarField(grid), 0, 0, 0, 0, {}};
  out.gauge_point = {grid.x(gauge_i), grid.y(gauge_j)};
  out.loop_integral = std::fabs(static_cast<double>(loop));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double a = static_cast<double>(row_first[grid.index(i, j)]);
      const double b = static_cast<double>(col_first[grid.index(i, j)]);
      out.h_field.set(i, j, a);
      out.h_column_first.set(i, j, b);
      out.path_difference = std::max(out.path_difference, std::fabs(a - b));
      out.max_abs_h = std::max(out.max_abs_h, std::fabs(a));
      const double cmp = static_cast<double>(compat.real_value(grid.x(i), grid.y(j)).value_or(0));
      out.compatibility_norm = std::max(out.compatibility_norm, std::fabs(cmp));
    }
  }
  if (tolerance > 0 && out.path_difference > tolerance * out.max_abs_h) {
    throw std::runtime_error("energy gradient is path dependent: row-first and column-first differ by " +
                             format_real(out.path_difference));
  }
  out.pressure_field = recover_pressure(out.h_field, psi, c);
  return out;
}

ScalarField recover_pressure(const ScalarField& h_field, const StreamFunction& psi, const MaterialConstants& c) {
  const Velocity vel = velocity(psi);
  const Expression q2 = speed_squared(vel.u, vel.v);
  const Expression normal = vel.u * laplacian(vel.u) + vel.v * laplacian(vel.v);
  const Expression M = shear_invariant_M(psi);
  const Expression correction = real(-c.rho() / 2) * q2 + real(c.alpha1()) * normal +
                                real((3 * c.alpha1() + 2 * c.alpha2()) / 4) * M;
  const NumericExpression<double> corr(correction);
  const Grid& grid = h_field.grid;
  ScalarField p(grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (!h_field.is_valid(i, j)) continue;
      auto v = corr.real_value(grid.x(i), grid.y(j));
      if (!v) continue;
      p.set(i, j, h_field.at(i, j) + *v);
    }
  }
  return p;
}

}  // namespace gradeflow
