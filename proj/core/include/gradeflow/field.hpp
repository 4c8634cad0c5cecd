#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gradeflow/expression.hpp"

namespace gradeflow {

/// Node-centred rectangular lattice; nx and ny count nodes.
struct Grid {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  int nx = 2;
  int ny = 2;

  /// Throws std::invalid_argument on empty ranges or fewer than 2 nodes per axis.
  void validate() const;
  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dy() const { return (y_max - y_min) / (ny - 1); }
  double x(int i) const { return i == nx - 1 ? x_max : x_min + i * dx(); }
  double y(int j) const { return j == ny - 1 ? y_max : y_min + j * dy(); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Values at grid nodes; masked (invalid) nodes carry NaN.
struct ScalarField {
  Grid grid;
  std::vector<double> values;
  std::vector<std::uint8_t> valid;

  explicit ScalarField(Grid g);

  double at(int i, int j) const { return values[grid.index(i, j)]; }
  bool is_valid(int i, int j) const { return valid[grid.index(i, j)] != 0; }
  void set(int i, int j, double v);
  void mask(int i, int j);

  std::size_t valid_count() const;
  /// Min and max over valid nodes; throws std::invalid_argument if none.
  std::pair<double, double> range() const;
  double max_abs() const;
};

/// Real part of e at every node. Nodes within 1e-9 of the origin are masked
/// when e is singular there; when e jumps across the negative real axis the
/// nodes on that ray are masked. Throws std::invalid_argument if e is not
/// real-valued or an imaginary part of 1e-10 or more shows up.
ScalarField sample(const Expression& e, const Grid& grid);

/// `count` levels evenly spaced strictly inside (min, max) of the valid
/// values; empty for a flat field. Throws on an all-masked field or count < 1.
std::vector<double> pick_levels(const ScalarField& field, int count);

/// Round-trip exact decimal form (%.17g).
std::string format_real(double v);

/// CSV "x,y,value", rows ordered by j then i, masked nodes omitted.
void export_csv(const ScalarField& field, std::ostream& out);

struct CsvRow {
  double x;
  double y;
  double value;
};
/// Parses what export_csv writes.
std::vector<CsvRow> parse_field_csv(std::istream& in);

}  // namespace gradeflow
