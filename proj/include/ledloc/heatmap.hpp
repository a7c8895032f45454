#pragma once

#include <string>

#include "ledloc/mc.hpp"

// Self-contained SVG rendering of a sweep result: one panel per error column
// (closed-form and Monte Carlo) on a shared color scale, axes in meters,
// optional estimator markers. Output bytes depend only on the inputs.

namespace ledloc {

struct HeatmapOptions {
  bool mark_estimators = false;
  double est1_x = 0.0, est1_y = 0.0;
  double est2_x = 0.0, est2_y = 0.0;
};

std::string render_heatmap_svg(const GridSweepResult& result,
                               const HeatmapOptions& options = {});

void write_heatmap_svg(const GridSweepResult& result,
                       const HeatmapOptions& options, const std::string& path);

}  // namespace ledloc
