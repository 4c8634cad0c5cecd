#pragma once

#include <iosfwd>
#include <vector>

#include "gradeflow/field.hpp"

namespace gradeflow {

struct Point2 {
  double x;
  double y;
};

struct Polyline {
  double level = 0.0;
  std::vector<Point2> vertices;
  bool closed = false;
};

struct ContourSet {
  std::vector<double> levels;
  std::vector<Polyline> polylines;  // grouped by level, in level order

  std::size_t count_for_level(double level) const;
};

/// Marching squares with linear edge interpolation. Cells with any masked
/// corner are skipped; saddles are resolved by the cell-centre average.
/// Segments are stitched through shared edge crossings, so a polyline is
/// closed exactly when its chain returns to its starting edge.
ContourSet marching_squares(const ScalarField& field, const std::vector<double>& levels);

/// Bilinear interpolation of the field at (x, y) inside the grid box.
double bilinear(const ScalarField& field, double x, double y);

/// CSV "level,poly_id,x,y" with poly_id counting from 0 over the whole set.
void export_csv(const ContourSet& contours, std::ostream& out);

}  // namespace gradeflow
