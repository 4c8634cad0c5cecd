#include "gradeflow/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace gradeflow {
namespace {

using EdgeId = std::int64_t;

struct Segment {
  EdgeId a;
  EdgeId b;
};

// Local edges: 0 bottom, 1 right, 2 top, 3 left. Pairs per corner mask; the
// saddle masks 5 and 10 are handled separately.
constexpr std::array<std::array<int, 4>, 16> kTable{{
    {-1, -1, -1, -1},  // 0
    {3, 0, -1, -1},    // 1
    {0, 1, -1, -1},    // 2
    {3, 1, -1, -1},    // 3
    {1, 2, -1, -1},    // 4
    {-1, -1, -1, -1},  // 5 saddle
    {0, 2, -1, -1},    // 6
    {3, 2, -1, -1},    // 7
    {2, 3, -1, -1},    // 8
    {0, 2, -1, -1},    // 9
    {-1, -1, -1, -1},  // 10 saddle
    {1, 2, -1, -1},    // 11
    {1, 3, -1, -1},    // 12
    {0, 1, -1, -1},    // 13
    {3, 0, -1, -1},    // 14
    {-1, -1, -1, -1},  // 15
}};

class LevelTracer {
 public:
  LevelTracer(const ScalarField& f, double level) : f_(f), g_(f.grid), level_(level) {}

  std::vector<Polyline> trace() {
    for (int j = 0; j + 1 < g_.ny; ++j) {
      for (int i = 0; i + 1 < g_.nx; ++i) classify(i, j);
    }
    return stitch();
  }

 private:
  EdgeId horizontal(int i, int j) const { return 2 * static_cast<EdgeId>(g_.index(i, j)); }
  EdgeId vertical(int i, int j) const { return 2 * static_cast<EdgeId>(g_.index(i, j)) + 1; }

  EdgeId global_edge(int i, int j, int local) const {
    switch (local) {
      case 0: return horizontal(i, j);
      case 1: return vertical(i + 1, j);
      case 2: return horizontal(i, j + 1);
      default: return vertical(i, j);
    }
  }

  void add(int i, int j, int la, int lb) {
    segments_.push_back({global_edge(i, j, la), global_edge(i, j, lb)});
  }

  void classify(int i, int j) {
    if (!f_.is_valid(i, j) || !f_.is_valid(i + 1, j) || !f_.is_valid(i + 1, j + 1) || !f_.is_valid(i, j + 1)) {
      return;
    }
    const double v0 = f_.at(i, j), v1 = f_.at(i + 1, j), v2 = f_.at(i + 1, j + 1), v3 = f_.at(i, j + 1);
    const int mask = (v0 > level_ ? 1 : 0) | (v1 > level_ ? 2 : 0) | (v2 > level_ ? 4 : 0) | (v3 > level_ ? 8 : 0);
    if (mask == 5 || mask == 10) {
      const bool centre_above = 0.25 * (v0 + v1 + v2 + v3) > level_;
      // Separate the corners whose side differs from the centre.
      const bool isolate_low = centre_above;
      const bool corner0_low = mask == 10;
      if (isolate_low == corner0_low) {
        add(i, j, 3, 0);
        add(i, j, 1, 2);
      } else {
        add(i, j, 0, 1);
        add(i, j, 2, 3);
      }
      return;
    }
    const auto& row = kTable[static_cast<std::size_t>(mask)];
    if (row[0] >= 0) add(i, j, row[0], row[1]);
  }

  Point2 crossing(EdgeId id) const {
    const auto node = static_cast<std::size_t>(id / 2);
    const int i = static_cast<int>(node % static_cast<std::size_t>(g_.nx));
    const int j = static_cast<int>(node / static_cast<std::size_t>(g_.nx));
    const bool is_horizontal = id % 2 == 0;
    const int i1 = is_horizontal ? i + 1 : i;
    const int j1 = is_horizontal ? j : j + 1;
    const double fa = f_.at(i, j), fb = f_.at(i1, j1);
    const double t = (level_ - fa) / (fb - fa);
    const double xa = g_.x(i), ya = g_.y(j), xb = g_.x(i1), yb = g_.y(j1);
    return {xa + t * (xb - xa), ya + t * (yb - ya)};
  }

  std::vector<Polyline> stitch() {
    std::unordered_map<EdgeId, std::array<int, 2>> incident;
    std::vector<EdgeId> edge_order;
    for (int s = 0; s < static_cast<int>(segments_.size()); ++s) {
      for (EdgeId e : {segments_[static_cast<std::size_t>(s)].a, segments_[static_cast<std::size_t>(s)].b}) {
        auto [it, inserted] = incident.try_emplace(e, std::array<int, 2>{-1, -1});
        if (inserted) edge_order.push_back(e);
        auto& slots = it->second;
        if (slots[0] < 0) slots[0] = s;
        else slots[1] = s;
      }
    }
    std::vector<bool> used(segments_.size(), false);
    std::vector<Polyline> out;

    auto walk = [&](EdgeId start, int seg) {
      Polyline line;
      line.level = level_;
      line.vertices.push_back(crossing(start));
      EdgeId at = start;
      while (seg >= 0 && !used[static_cast<std::size_t>(seg)]) {
        used[static_cast<std::size_t>(seg)] = true;
        const Segment& s = segments_[static_cast<std::size_t>(seg)];
        at = s.a == at ? s.b : s.a;
        if (at == start) {
          line.closed = true;
          break;
        }
        line.vertices.push_back(crossing(at));
        const auto& slots = incident.at(at);
        seg = slots[0] == seg ? slots[1] : slots[0];
      }
      out.push_back(std::move(line));
    };

    for (EdgeId e : edge_order) {
      const auto& slots = incident.at(e);
      if (slots[1] < 0 && !used[static_cast<std::size_t>(slots[0])]) walk(e, slots[0]);
    }
    for (int s = 0; s < static_cast<int>(segments_.size()); ++s) {
      if (!used[static_cast<std::size_t>(s)]) walk(segments_[static_cast<std::size_t>(s)].a, s);
    }
    return out;
  }

  const ScalarField& f_;
  const Grid& g_;
  double level_;
  std::vector<Segment> segments_;
};

}  // namespace

std::size_t ContourSet::count_for_level(double level) const {
  return static_cast<std::size_t>(
      std::count_if(polylines.begin(), polylines.end(), [&](const Polyline& p) { return p.level == level; }));
}

ContourSet marching_squares(const ScalarField& field, const std::vector<double>& levels) {
  if (field.valid_count() == 0) throw std::invalid_argument("field has no valid nodes");
  ContourSet set;
  set.levels = levels;
  for (double level : levels) {
    auto lines = LevelTracer(field, level).trace();
    for (auto& l : lines) set.polylines.push_back(std::move(l));
  }
  return set;
}

double bilinear(const ScalarField& field, double x, double y) {
  const Grid& g = field.grid;
  const double fx = (x - g.x_min) / g.dx();
  const double fy = (y - g.y_min) / g.dy();
  int i = std::clamp(static_cast<int>(std::floor(fx)), 0, g.nx - 2);
  int j = std::clamp(static_cast<int>(std::floor(fy)), 0, g.ny - 2);
  const double tx = (x - g.x(i)) / (g.x(i + 1) - g.x(i));
  const double ty = (y - g.y(j)) / (g.y(j + 1) - g.y(j));
  return (1 - tx) * (1 - ty) * field.at(i, j) + tx * (1 - ty) * field.at(i + 1, j) +
         tx * ty * field.at(i + 1, j + 1) + (1 - tx) * ty * field.at(i, j + 1);
}

void export_csv(const ContourSet& contours, std::ostream& out) {
  out << "level,poly_id,x,y\n";
  for (std::size_t p = 0; p < contours.polylines.size(); ++p) {
    const Polyline& line = contours.polylines[p];
    for (const Point2& v : line.vertices) {
      out << format_real(line.level) << ',' << p << ',' << format_real(v.x) << ',' << format_real(v.y) << '\n';
    }
  }
}

}  // namespace gradeflow
