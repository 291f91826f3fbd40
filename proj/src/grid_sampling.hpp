#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace catkit::detail {

struct GridOutcome {
  double min_gap = std::numeric_limits<double>::infinity();
  double argmin = 0.0;
};

// Samples a required-positive gap at center + side * 2^j, j = j_min..j_max,
// inserting geometric midpoints (in the offset from center) wherever the
// gap is tiny or changes sign. Returns the worst gap seen and where.
inline GridOutcome sample_offset_gap(double center, double side,
                                     const std::function<double(double)>& gap, int j_min = -20,
                                     int j_max = 20) {
  std::vector<std::pair<double, double>> pts;  // (offset, gap)
  for (int j = j_min; j <= j_max; ++j) {
    const double off = std::ldexp(1.0, j);
    pts.emplace_back(off, gap(center + side * off));
  }
  for (int round = 0; round < 4; ++round) {
    std::vector<std::pair<double, double>> add;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const auto& [o1, g1] = pts[i];
      const auto& [o2, g2] = pts[i + 1];
      if (std::min(std::abs(g1), std::abs(g2)) < 1e-9 || (g1 < 0) != (g2 < 0)) {
        const double mid = std::sqrt(o1 * o2);
        add.emplace_back(mid, gap(center + side * mid));
      }
    }
    if (add.empty()) break;
    pts.insert(pts.end(), add.begin(), add.end());
    std::sort(pts.begin(), pts.end());
  }
  GridOutcome out;
  for (const auto& [off, g] : pts) {
    if (g < out.min_gap) {
      out.min_gap = g;
      out.argmin = center + side * off;
    }
  }
  return out;
}

inline std::string gap_detail(const GridOutcome& g, const char* var) {
  return "certified on adaptive grid, worst gap " + std::to_string(g.min_gap) + " at " + var +
         "=" + std::to_string(g.argmin);
}

}  // namespace catkit::detail
