#include "gradeflow_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace gradeflow::cli {
namespace {

constexpr int kWidth = 640;
constexpr int kMargin = 40;
constexpr int kCaptionLine = 16;

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

}  // namespace

std::string ramp_color(std::size_t k, std::size_t n) {
  const double t = n > 1 ? static_cast<double>(k) / static_cast<double>(n - 1) : 0.0;
  const int r = static_cast<int>(std::lround(30 + 200 * t));
  const int g = static_cast<int>(std::lround(60 + 40 * (1 - std::fabs(2 * t - 1))));
  const int b = static_cast<int>(std::lround(230 - 200 * t));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

SvgDocument make_svg(const ContourSet& contours, const Grid& grid, std::vector<std::string> caption) {
  SvgDocument doc;
  const double xw = grid.x_max - grid.x_min, yw = grid.y_max - grid.y_min;
  doc.plot_left = kMargin;
  doc.plot_top = kMargin;
  doc.plot_width = kWidth - 2 * kMargin;
  doc.plot_height = std::clamp(std::round(doc.plot_width * yw / xw), 120.0, 840.0);
  doc.width = kWidth;
  doc.height = static_cast<int>(doc.plot_height) + 2 * kMargin + kCaptionLine * static_cast<int>(caption.size());
  doc.caption = std::move(caption);

  std::map<double, std::size_t> level_index;
  for (std::size_t k = 0; k < contours.levels.size(); ++k) level_index.emplace(contours.levels[k], k);
  for (const Polyline& p : contours.polylines) {
    SvgPolyline s;
    s.level = p.level;
    const auto it = level_index.find(p.level);
    s.stroke = ramp_color(it == level_index.end() ? 0 : it->second, contours.levels.size());
    for (const Point2& v : p.vertices) {
      const double px = doc.plot_left + (v.x - grid.x_min) / xw * doc.plot_width;
      const double py = doc.plot_top + (grid.y_max - v.y) / yw * doc.plot_height;
      s.points.push_back({std::clamp(px, doc.plot_left, doc.plot_left + doc.plot_width),
                          std::clamp(py, doc.plot_top, doc.plot_top + doc.plot_height)});
    }
    if (p.closed && !s.points.empty()) s.points.push_back(s.points.front());
    doc.polylines.push_back(std::move(s));
  }
  return doc;
}

std::string SvgDocument::to_xml() const {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" fill=\"white\"/>\n";
  out += "<g fill=\"none\" stroke-width=\"1\">\n";
  for (const SvgPolyline& p : polylines) {
    char level[64];
    std::snprintf(level, sizeof level, "%.9g", p.level);
    out += "<polyline data-level=\"" + std::string(level) + "\" stroke=\"" + p.stroke + "\" points=\"";
    for (std::size_t k = 0; k < p.points.size(); ++k) {
      if (k) out += ' ';
      out += fixed3(p.points[k].x) + "," + fixed3(p.points[k].y);
    }
    out += "\"/>\n";
  }
  out += "</g>\n";
  out += "<rect x=\"" + fixed3(plot_left) + "\" y=\"" + fixed3(plot_top) + "\" width=\"" + fixed3(plot_width) +
         "\" height=\"" + fixed3(plot_height) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  double y = plot_top + plot_height + kMargin / 2.0 + 4;
  for (const std::string& line : caption) {
    out += "<text x=\"" + fixed3(plot_left) + "\" y=\"" + fixed3(y) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(line) + "</text>\n";
    y += kCaptionLine;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace gradeflow::cli
