#include "gradeflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gradeflow/numeric_expression.hpp"

namespace gradeflow {

void Grid::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max)) throw std::invalid_argument("grid ranges must be nonempty");
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2 nodes per axis");
}

ScalarField::ScalarField(Grid g)
    : grid(g), values(g.size(), std::numeric_limits<double>::quiet_NaN()), valid(g.size(), 0) {
  grid.validate();
}

void ScalarField::set(int i, int j, double v) {
  values[grid.index(i, j)] = v;
  valid[grid.index(i, j)] = 1;
}

void ScalarField::mask(int i, int j) {
  values[grid.index(i, j)] = std::numeric_limits<double>::quiet_NaN();
  valid[grid.index(i, j)] = 0;
}

std::size_t ScalarField::valid_count() const {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), std::uint8_t{1}));
}

std::pair<double, double> ScalarField::range() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!valid[k]) continue;
    lo = std::min(lo, values[k]);
    hi = std::max(hi, values[k]);
  }
  if (lo > hi) throw std::invalid_argument("field has no valid nodes");
  return {lo, hi};
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (valid[k]) m = std::max(m, std::fabs(values[k]));
  }
  return m;
}

ScalarField sample(const Expression& e, const Grid& grid) {
  if (!e.is_real()) throw std::invalid_argument("sample requires a real-valued expression");
  ScalarField field(grid);
  const NumericExpression<Quad> numeric(e);
  const double cut_halfwidth = 0.5 * grid.dy();
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i), y = grid.y(j);
      if (numeric.singular_at_origin() && std::hypot(x, y) <= 1e-9) {
        field.mask(i, j);
        continue;
      }
      if (numeric.has_branch_cut() && x < 0.0 && std::fabs(y) < cut_halfwidth) {
        field.mask(i, j);
        continue;
      }
      auto v = numeric.eval(x, y);
      if (!v) {
        field.mask(i, j);
        continue;
      }
      const double im = static_cast<double>(v->im);
      if (std::fabs(im) >= 1e-10) {
        throw std::invalid_argument("sampled value has imaginary part " + format_real(im));
      }
      const double re = static_cast<double>(v->re);
      if (std::isfinite(re)) {
        field.set(i, j, re);
      } else {
        field.mask(i, j);
      }
    }
  }
  return field;
}

std::vector<double> pick_levels(const ScalarField& field, int count) {
  if (count < 1) throw std::invalid_argument("level count must be >= 1");
  auto [lo, hi] = field.range();
  std::vector<double> levels;
  if (!(hi > lo)) return levels;
  levels.reserve(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) {
    levels.push_back(lo + (hi - lo) * k / (count + 1));
  }
  return levels;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void export_csv(const ScalarField& field, std::ostream& out) {
  out << "x,y,value\n";
  for (int j = 0; j < field.grid.ny; ++j) {
    for (int i = 0; i < field.grid.nx; ++i) {
      if (!field.is_valid(i, j)) continue;
      out << format_real(field.grid.x(i)) << ',' << format_real(field.grid.y(j)) << ','
          << format_real(field.at(i, j)) << '\n';
    }
  }
}

std::vector<CsvRow> parse_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "x,y,value") throw std::invalid_argument("missing CSV header");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c)) {
      throw std::invalid_argument("malformed CSV row '" + line + "'");
    }
    rows.push_back({std::stod(a), std::stod(b), std::stod(c)});
  }
  return rows;
}

}  // namespace gradeflow
