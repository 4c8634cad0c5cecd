#pragma once

#include <string>
#include <vector>

#include "gradeflow/contour.hpp"
#include "gradeflow/field.hpp"

namespace gradeflow::cli {

struct SvgPolyline {
  double level = 0.0;
  std::string stroke;             // "#rrggbb"
  std::vector<Point2> points;     // pixel coordinates
};

/// Streamline plot: the grid box maps affinely onto the plot area with y
/// flipped; a caption block sits below the frame.
struct SvgDocument {
  int width = 0;
  int height = 0;
  double plot_left = 0, plot_top = 0, plot_width = 0, plot_height = 0;
  std::vector<SvgPolyline> polylines;
  std::vector<std::string> caption;

  /// Well-formed XML with coordinates printed as %.3f.
  std::string to_xml() const;
};

/// Colour for level index k of n on a blue-to-red ramp.
std::string ramp_color(std::size_t k, std::size_t n);

/// Escapes &, <, >, " and ' for XML text and attributes.
std::string xml_escape(const std::string& s);

SvgDocument make_svg(const ContourSet& contours, const Grid& grid, std::vector<std::string> caption);

}  // namespace gradeflow::cli
