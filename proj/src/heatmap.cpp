#include "ledloc/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include "ledloc/errors.hpp"

namespace ledloc {

namespace {

// Layout constants (px).
constexpr double kPanel = 320.0;       // square plotting area per panel
constexpr double kMarginLeft = 72.0;   // room for the y tick labels
constexpr double kMarginTop = 46.0;
constexpr double kMarginBottom = 58.0;
constexpr double kPanelGap = 84.0;
constexpr double kBarGap = 46.0;
constexpr double kBarWidth = 22.0;
constexpr double kMarginRight = 84.0;

void appendf(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  out += buf;
}

// 16 evenly spaced viridis samples, dark-violet through yellow.
constexpr int kPalette[16][3] = {
    {68, 1, 84},    {72, 26, 108},  {71, 47, 125},  {65, 68, 135},
    {57, 86, 140},  {49, 104, 142}, {42, 120, 142}, {35, 136, 142},
    {31, 152, 139}, {34, 168, 132}, {53, 183, 121}, {84, 197, 104},
    {122, 209, 81}, {165, 219, 54}, {210, 226, 27}, {253, 231, 37}};

std::string color_at(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double pos = t * 15.0;
  const int lo = std::min(static_cast<int>(pos), 14);
  const double frac = pos - lo;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(kPalette[lo][0] +
                                             frac * (kPalette[lo + 1][0] -
                                                     kPalette[lo][0]))),
                static_cast<int>(std::lround(kPalette[lo][1] +
                                             frac * (kPalette[lo + 1][1] -
                                                     kPalette[lo][1]))),
                static_cast<int>(std::lround(kPalette[lo][2] +
                                             frac * (kPalette[lo + 1][2] -
                                                     kPalette[lo][2]))));
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Panel {
  double origin_x;  // left edge of the plotting area
  const char* title;
  double PointRecord::* column;
};

void draw_star(std::string& out, double cx, double cy) {
  constexpr double kOuter = 8.0, kInner = 3.2;
  std::string points;
  for (int k = 0; k < 10; ++k) {
    const double radius = (k % 2 == 0) ? kOuter : kInner;
    const double angle =
        std::numbers::pi * (-0.5 + static_cast<double>(k) / 5.0);
    appendf(points, "%s%.2f,%.2f", k ? " " : "",
            cx + radius * std::cos(angle), cy + radius * std::sin(angle));
  }
  appendf(out,
          "<polygon points=\"%s\" fill=\"#2244ee\" stroke=\"#ffffff\" "
          "stroke-width=\"1\"/>\n",
          points.c_str());
}

}  // namespace

std::string render_heatmap_svg(const GridSweepResult& result,
                               const HeatmapOptions& options) {
  const int nx = result.grid.nx();
  const int ny = result.grid.ny();
  if (nx < 1 || ny < 1 ||
      result.records.size() != static_cast<std::size_t>(nx) * ny) {
    throw ValidationError("heatmap: records do not cover the grid");
  }

  // Shared color scale over every finite error value in both columns.
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -std::numeric_limits<double>::infinity();
  for (const PointRecord& rec : result.records) {
    for (const double v : {rec.eps_theory, rec.eps_mc}) {
      if (std::isfinite(v)) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
    }
  }
  const bool any_finite = vmin <= vmax;
  if (!any_finite) {
    vmin = 0.0;
    vmax = 1.0;
  }
  const double span = vmax - vmin;
  const auto scale01 = [&](double v) {
    return span > 0.0 ? (v - vmin) / span : 0.5;
  };

  const double cw = kPanel / nx;
  const double ch = kPanel / ny;
  const double top = kMarginTop;
  const double bar_x =
      kMarginLeft + kPanel + kPanelGap + kPanel + kBarGap;
  const double width = bar_x + kBarWidth + kMarginRight;
  const double height = kMarginTop + kPanel + kMarginBottom;

  const Panel panels[2] = {
      {kMarginLeft, "theoretical e_ps (m)", &PointRecord::eps_theory},
      {kMarginLeft + kPanel + kPanelGap, "Monte Carlo e_ps (m)",
       &PointRecord::eps_mc},
  };

  std::string out;
  appendf(out,
          "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
          "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
          width, height, width, height);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  out +=
      "<g font-family=\"DejaVu Sans, sans-serif\" font-size=\"13\" "
      "fill=\"#222222\">\n";

  for (const Panel& panel : panels) {
    // Cells. Cell (ix, iy) is centred on grid point (ix, iy); y grows upward,
    // SVG y grows downward.
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        const PointRecord& rec =
            result.records[static_cast<std::size_t>(iy) * nx + ix];
        const double v = rec.*(panel.column);
        const std::string fill =
            std::isfinite(v) ? color_at(scale01(v)) : std::string("#808080");
        appendf(out,
                "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                "fill=\"%s\"/>\n",
                panel.origin_x + ix * cw, top + (ny - 1 - iy) * ch, cw + 0.5,
                ch + 0.5, fill.c_str());
      }
    }
    appendf(out,
            "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
            "fill=\"none\" stroke=\"#222222\" stroke-width=\"1\"/>\n",
            panel.origin_x, top, kPanel, kPanel);
    appendf(out,
            "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" "
            "font-size=\"15\">%s</text>\n",
            panel.origin_x + kPanel / 2, top - 16.0, panel.title);

    // Continuous data-to-pixel maps, aligned on cell centres.
    const double x_span = result.grid.x_max - result.grid.x_min;
    const double y_span = result.grid.y_max - result.grid.y_min;
    const auto px = [&](double x) {
      const double u = x_span > 0.0 ? (x - result.grid.x_min) / x_span : 0.5;
      return panel.origin_x + cw / 2 + u * (kPanel - cw);
    };
    const auto py = [&](double y) {
      const double u = y_span > 0.0 ? (y - result.grid.y_min) / y_span : 0.5;
      return top + kPanel - ch / 2 - u * (kPanel - ch);
    };

    // Five ticks per axis.
    for (int j = 0; j <= 4; ++j) {
      const double xv = result.grid.x_min + j * x_span / 4.0;
      const double yv = result.grid.y_min + j * y_span / 4.0;
      appendf(out,
              "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
              "stroke=\"#222222\" stroke-width=\"1\"/>\n",
              px(xv), top + kPanel, px(xv), top + kPanel + 5.0);
      appendf(out,
              "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" "
              "font-size=\"12\">%s</text>\n",
              px(xv), top + kPanel + 19.0, tick_label(xv).c_str());
      appendf(out,
              "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
              "stroke=\"#222222\" stroke-width=\"1\"/>\n",
              panel.origin_x - 5.0, py(yv), panel.origin_x, py(yv));
      appendf(out,
              "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\" "
              "font-size=\"12\">%s</text>\n",
              panel.origin_x - 9.0, py(yv) + 4.0, tick_label(yv).c_str());
    }
    appendf(out,
            "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">x (m)</text>\n",
            panel.origin_x + kPanel / 2, top + kPanel + 42.0);
    appendf(out,
            "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" "
            "transform=\"rotate(-90 %.2f %.2f)\">y (m)</text>\n",
            panel.origin_x - 48.0, top + kPanel / 2, panel.origin_x - 48.0,
            top + kPanel / 2);

    if (options.mark_estimators) {
      const double clamp_x_lo = panel.origin_x + 2.0;
      const double clamp_x_hi = panel.origin_x + kPanel - 2.0;
      const double clamp_y_lo = top + 2.0;
      const double clamp_y_hi = top + kPanel - 2.0;
      draw_star(out, std::clamp(px(options.est1_x), clamp_x_lo, clamp_x_hi),
                std::clamp(py(options.est1_y), clamp_y_lo, clamp_y_hi));
      draw_star(out, std::clamp(px(options.est2_x), clamp_x_lo, clamp_x_hi),
                std::clamp(py(options.est2_y), clamp_y_lo, clamp_y_hi));
    }
  }

  // Shared colorbar, vmax on top.
  constexpr int kBarSteps = 64;
  const double step_h = kPanel / kBarSteps;
  for (int i = 0; i < kBarSteps; ++i) {
    const double t = (i + 0.5) / kBarSteps;
    appendf(out,
            "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
            "fill=\"%s\"/>\n",
            bar_x, top + kPanel - (i + 1) * step_h, kBarWidth, step_h + 0.5,
            color_at(t).c_str());
  }
  appendf(out,
          "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
          "fill=\"none\" stroke=\"#222222\" stroke-width=\"1\"/>\n",
          bar_x, top, kBarWidth, kPanel);
  for (int j = 0; j <= 4; ++j) {
    const double v = vmin + j * (vmax - vmin) / 4.0;
    const double y = top + kPanel - j * kPanel / 4.0;
    appendf(out,
            "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
            "stroke=\"#222222\" stroke-width=\"1\"/>\n",
            bar_x + kBarWidth, y, bar_x + kBarWidth + 5.0, y);
    appendf(out,
            "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%s</text>\n",
            bar_x + kBarWidth + 9.0, y + 4.0,
            any_finite ? tick_label(v).c_str() : "n/a");
  }
  appendf(out,
          "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" "
          "font-size=\"13\">e_ps (m)</text>\n",
          bar_x + kBarWidth / 2, top - 16.0);

  out += "</g>\n</svg>\n";
  return out;
}

void write_heatmap_svg(const GridSweepResult& result,
                       const HeatmapOptions& options,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot open SVG for writing: " + path);
  }
  out << render_heatmap_svg(result, options);
  if (!out) {
    throw ParseError("failed writing SVG: " + path);
  }
}

}  // namespace ledloc
