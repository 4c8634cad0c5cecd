#include "gradeflow/fd_oracle.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace gradeflow {
namespace {

class Array2 {
 public:
  Array2(int nx, int ny) : nx_(nx), data_(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), Quad(0)) {}
  Quad& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * nx_ + i]; }
  Quad operator()(int i, int j) const { return data_[static_cast<std::size_t>(j) * nx_ + i]; }

 private:
  int nx_;
  std::vector<Quad> data_;
};

/// psi samples on a uniform lattice plus validity flags.
struct Lattice {
  int nx = 0;
  int ny = 0;
  Quad x0 = 0, y0 = 0, hx = 1, hy = 1;
  Array2 psi{1, 1};
  std::vector<std::uint8_t> ok;

  Quad x(int i) const { return x0 + static_cast<Quad>(i) * hx; }
  Quad y(int j) const { return y0 + static_cast<Quad>(j) * hy; }
};

Lattice sample_lattice(const PointwiseEvaluator& eval, int nx, int ny, Quad x0, Quad y0, Quad hx, Quad hy) {
  Lattice lat;
  lat.nx = nx;
  lat.ny = ny;
  lat.x0 = x0;
  lat.y0 = y0;
  lat.hx = hx;
  lat.hy = hy;
  lat.psi = Array2(nx, ny);
  lat.ok.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      auto v = eval.value(lat.x(i), lat.y(j));
      if (v && std::isfinite(static_cast<double>(*v))) {
        lat.psi(i, j) = *v;
        lat.ok[static_cast<std::size_t>(j) * nx + i] = 1;
      }
    }
  }
  return lat;
}

struct Coefficients {
  Quad rho, mu, alpha1, beta3;
  explicit Coefficients(const MaterialConstants& c)
      : rho(to_quad(c.rho())), mu(to_quad(c.mu())), alpha1(to_quad(c.alpha1())), beta3(to_quad(c.beta3())) {}
};

/// Residual at every node at least kResidualStencilRadius from the lattice edge.
Array2 lattice_residual(const Lattice& lat, const Coefficients& k) {
  const int nx = lat.nx, ny = lat.ny;
  const Quad hx = lat.hx, hy = lat.hy;
  const Quad two_hx = 2 * hx, two_hy = 2 * hy, hx2 = hx * hx, hy2 = hy * hy, four_hxhy = 4 * hx * hy;

  auto dx = [&](const Array2& f, int i, int j) { return (f(i + 1, j) - f(i - 1, j)) / two_hx; };
  auto dy = [&](const Array2& f, int i, int j) { return (f(i, j + 1) - f(i, j - 1)) / two_hy; };
  auto dxx = [&](const Array2& f, int i, int j) { return (f(i + 1, j) - 2 * f(i, j) + f(i - 1, j)) / hx2; };
  auto dyy = [&](const Array2& f, int i, int j) { return (f(i, j + 1) - 2 * f(i, j) + f(i, j - 1)) / hy2; };
  auto dxy = [&](const Array2& f, int i, int j) {
    return (f(i + 1, j + 1) - f(i + 1, j - 1) - f(i - 1, j + 1) + f(i - 1, j - 1)) / four_hxhy;
  };

  Array2 px(nx, ny), py(nx, ny), pxx(nx, ny), pyy(nx, ny), pxy(nx, ny), w(nx, ny), M(nx, ny), wM(nx, ny);
  for (int j = 1; j < ny - 1; ++j) {
    for (int i = 1; i < nx - 1; ++i) {
      px(i, j) = dx(lat.psi, i, j);
      py(i, j) = dy(lat.psi, i, j);
      pxx(i, j) = dxx(lat.psi, i, j);
      pyy(i, j) = dyy(lat.psi, i, j);
      pxy(i, j) = dxy(lat.psi, i, j);
      w(i, j) = -(pxx(i, j) + pyy(i, j));
      const Quad diff = pyy(i, j) - pxx(i, j);
      M(i, j) = 8 * pxy(i, j) * pxy(i, j) + 2 * diff * diff;
      wM(i, j) = w(i, j) * M(i, j);
    }
  }
  Array2 lap_w(nx, ny);
  for (int j = 2; j < ny - 2; ++j) {
    for (int i = 2; i < nx - 2; ++i) lap_w(i, j) = dxx(w, i, j) + dyy(w, i, j);
  }
  Array2 out(nx, ny);
  const int r = kResidualStencilRadius;
  for (int j = r; j < ny - r; ++j) {
    for (int i = r; i < nx - r; ++i) {
      const Quad wx = dx(w, i, j), wy = dy(w, i, j);
      const Quad lwx = dx(lap_w, i, j), lwy = dy(lap_w, i, j);
      const Quad lap_wM = dxx(wM, i, j) + dyy(wM, i, j);
      const Quad Mxx = dxx(M, i, j), Myy = dyy(M, i, j), Mxy = dxy(M, i, j);
      out(i, j) = k.rho * (py(i, j) * wx - px(i, j) * wy) - k.alpha1 * (py(i, j) * lwx - px(i, j) * lwy) -
                  k.beta3 * lap_wM + 2 * k.beta3 * (2 * pxy(i, j) * Mxy - pxx(i, j) * Myy - pyy(i, j) * Mxx) -
                  k.mu * lap_w(i, j);
    }
  }
  return out;
}

/// Number of invalid samples in the (2r+1)^2 box around (i, j); lattice indices.
int invalid_in_box(const Lattice& lat, int i, int j, int r) {
  int bad = 0;
  for (int b = j - r; b <= j + r; ++b) {
    for (int a = i - r; a <= i + r; ++a) {
      if (!lat.ok[static_cast<std::size_t>(b) * lat.nx + a]) ++bad;
    }
  }
  return bad;
}

}  // namespace

bool PointwiseEvaluator::near_singularity(double x, double y, double radius) const {
  const bool box_holds_origin = std::fabs(x) <= radius && std::fabs(y) <= radius;
  if (singular_at_origin && box_holds_origin) return true;
  if (branch_cut && std::fabs(y) <= radius && x - radius <= 0.0) return true;
  return false;
}

PointwiseEvaluator PointwiseEvaluator::from_expression(const Expression& psi) {
  auto numeric = std::make_shared<const NumericExpression<Quad>>(psi);
  PointwiseEvaluator e;
  e.value = [numeric](Quad x, Quad y) { return numeric->real_value(x, y); };
  e.singular_at_origin = numeric->singular_at_origin();
  e.branch_cut = numeric->has_branch_cut();
  return e;
}

ScalarField fd_residual_field(const PointwiseEvaluator& psi, const MaterialConstants& c, const Grid& grid) {
  grid.validate();
  const int r = kResidualStencilRadius;
  const Quad hx = (to_quad(Rational(grid.x_max)) - to_quad(Rational(grid.x_min))) / (grid.nx - 1);
  const Quad hy = (to_quad(Rational(grid.y_max)) - to_quad(Rational(grid.y_min))) / (grid.ny - 1);
  const Lattice lat = sample_lattice(psi, grid.nx + 2 * r, grid.ny + 2 * r, to_quad(Rational(grid.x_min)) - r * hx,
                                     to_quad(Rational(grid.y_min)) - r * hy, hx, hy);
  const Array2 res = lattice_residual(lat, Coefficients(c));
  const double clearance = (r + 2) * std::max(grid.dx(), grid.dy());
  ScalarField field(grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (psi.near_singularity(grid.x(i), grid.y(j), clearance) || invalid_in_box(lat, i + r, j + r, r) > 0) {
        field.mask(i, j);
      } else {
        field.set(i, j, static_cast<double>(res(i + r, j + r)));
      }
    }
  }
  return field;
}

Quad fd_residual_at_quad(const PointwiseEvaluator& psi, const MaterialConstants& c, Quad x, Quad y, Quad h) {
  const int r = kResidualStencilRadius;
  const double hd = static_cast<double>(h);
  if (psi.near_singularity(static_cast<double>(x), static_cast<double>(y), (r + 2) * hd)) {
    throw SingularPointError("finite-difference stencil reaches a singularity");
  }
  const Lattice lat = sample_lattice(psi, 2 * r + 1, 2 * r + 1, x - r * h, y - r * h, h, h);
  if (invalid_in_box(lat, r, r, r) > 0) throw SingularPointError("psi is undefined inside the stencil");
  return lattice_residual(lat, Coefficients(c))(r, r);
}

double fd_residual_at(const PointwiseEvaluator& psi, const MaterialConstants& c, double x, double y, double h) {
  return static_cast<double>(fd_residual_at_quad(psi, c, x, y, h));
}

double fd_shear_invariant_at(const PointwiseEvaluator& psi, double x, double y, double h) {
  if (psi.near_singularity(x, y, 3 * h)) throw SingularPointError("stencil reaches a singularity");
  auto m_at = [&](Quad step) {
    const Lattice lat = sample_lattice(psi, 3, 3, Quad(x) - step, Quad(y) - step, step, step);
    if (invalid_in_box(lat, 1, 1, 1) > 0) throw SingularPointError("psi is undefined inside the stencil");
    const Array2& f = lat.psi;
    const Quad step2 = step * step;
    const Quad pxx = (f(2, 1) - 2 * f(1, 1) + f(0, 1)) / step2;
    const Quad pyy = (f(1, 2) - 2 * f(1, 1) + f(1, 0)) / step2;
    const Quad pxy = (f(2, 2) - f(2, 0) - f(0, 2) + f(0, 0)) / (4 * step2);
    const Quad diff = pyy - pxx;
    return 8 * pxy * pxy + 2 * diff * diff;
  };
  const Quad coarse = m_at(Quad(h));
  const Quad fine = m_at(Quad(h) / 2);
  return static_cast<double>((4 * fine - coarse) / 3);
}

double richardson_limit(double at_h, double at_h2, double at_h4) {
  const double r1 = (4 * at_h2 - at_h) / 3;
  const double r2 = (4 * at_h4 - at_h2) / 3;
  return (16 * r2 - r1) / 15;
}

double convergence_order(const std::vector<double>& spacings, const std::vector<double>& errors) {
  if (spacings.size() != errors.size() || spacings.size() < 2) {
    throw std::invalid_argument("convergence_order needs matching series of length >= 2");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(spacings.size());
  for (std::size_t k = 0; k < spacings.size(); ++k) {
    if (!(errors[k] > 0.0)) return std::nan("");
    const double lx = std::log(spacings[k]), ly = std::log(errors[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace gradeflow
