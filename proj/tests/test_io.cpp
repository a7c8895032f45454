#include "doctest.h"

#include <cmath>
#include <limits>
#include <string>

#include "ledloc/errors.hpp"
#include "ledloc/heatmap.hpp"
#include "ledloc/mc.hpp"
#include "ledloc/sweep_io.hpp"

using namespace ledloc;

namespace {

const double kNan = std::numeric_limits<double>::quiet_NaN();

GridSweepResult tiny_result() {
  GridSweepResult res;
  res.grid = GridSpec{0.0, 1.0, 0.0, 1.0, 1.0};
  res.records = {
      {0.0, 0.0, 0.03, 0.031, 2e-4, 0},
      {1.0, 0.0, 0.04, 0.042, 3e-4, 0},
      {0.0, 1.0, 0.05, kNan, kNan, 50},
      {1.0, 1.0, 0.06, 0.059, 4e-4, 2},
  };
  return res;
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace

TEST_CASE("sweep_csv: header and full-precision row rendering") {
  GridSweepResult res;
  res.grid = GridSpec{0.25, 0.25, 0.5, 0.5, 1.0};
  res.records = {{0.25, 0.5, 0.03125, kNan, 0.0078125, 7}};
  const std::string expected =
      "x_m,y_m,eps_theory_m,eps_mc_m,mc_stderr_m,degenerate_trials\n"
      "2.50000000000000000e-01,5.00000000000000000e-01,"
      "3.12500000000000000e-02,nan,7.81250000000000000e-03,7\n";
  CHECK(sweep_csv(res) == expected);
}

TEST_CASE("sweep_csv: round trip is bit exact, including the nan sentinel") {
  const GridSweepResult res = tiny_result();
  const GridSweepResult back = parse_sweep_csv(sweep_csv(res));
  REQUIRE(back.records.size() == res.records.size());
  for (size_t i = 0; i < res.records.size(); ++i) {
    const PointRecord& a = res.records[i];
    const PointRecord& b = back.records[i];
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.eps_theory == b.eps_theory);
    CHECK((std::isnan(a.eps_mc) ? std::isnan(b.eps_mc) : a.eps_mc == b.eps_mc));
    CHECK((std::isnan(a.mc_std_err) ? std::isnan(b.mc_std_err)
                                    : a.mc_std_err == b.mc_std_err));
    CHECK(a.degenerate_trials == b.degenerate_trials);
  }
  CHECK(back.grid.x_min == 0.0);
  CHECK(back.grid.x_max == 1.0);
  CHECK(back.grid.y_min == 0.0);
  CHECK(back.grid.y_max == 1.0);
  CHECK(back.grid.step == 1.0);
  CHECK(back.grid.nx() == 2);
  CHECK(back.grid.ny() == 2);
}

TEST_CASE("sweep_csv: round trip of a real sweep") {
  ExperimentSpec spec;
  spec.scene = fig3_preset();
  spec.grid = GridSpec{0.0, 4.0, 1.0, 3.0, 2.0};
  spec.trials_per_point = 50;
  const GridSweepResult res = sweep(spec, 1);
  const GridSweepResult back = parse_sweep_csv(sweep_csv(res));
  REQUIRE(back.records.size() == res.records.size());
  for (size_t i = 0; i < res.records.size(); ++i) {
    CHECK(back.records[i].eps_theory == res.records[i].eps_theory);
    CHECK(back.records[i].eps_mc == res.records[i].eps_mc);
    CHECK(back.records[i].mc_std_err == res.records[i].mc_std_err);
  }
  CHECK(back.grid.step == 2.0);
}

TEST_CASE("parse_sweep_csv: single-point file") {
  const GridSweepResult one = parse_sweep_csv(
      "x_m,y_m,eps_theory_m,eps_mc_m,mc_stderr_m,degenerate_trials\n"
      "2.0,2.0,0.02,0.021,1e-4,0\n");
  REQUIRE(one.records.size() == 1);
  CHECK(one.grid.nx() == 1);
  CHECK(one.grid.ny() == 1);
  CHECK(one.grid.x_min == 2.0);
  CHECK(one.grid.y_max == 2.0);
}

TEST_CASE("parse_sweep_csv: malformed input refused") {
  CHECK_THROWS_WITH_AS(parse_sweep_csv(""), doctest::Contains("empty"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_sweep_csv("x,y\n1,2\n"),
                       doctest::Contains("header"), ParseError);
  const std::string header =
      "x_m,y_m,eps_theory_m,eps_mc_m,mc_stderr_m,degenerate_trials\n";
  CHECK_THROWS_WITH_AS(parse_sweep_csv(header), doctest::Contains("no data"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_sweep_csv(header + "1,2,3,4,5\n"),
                       doctest::Contains("6 fields"), ParseError);
  CHECK_THROWS_WITH_AS(parse_sweep_csv(header + "1,2,3,4,5,six\n"),
                       doctest::Contains("trial count"), ParseError);
  CHECK_THROWS_WITH_AS(parse_sweep_csv(header + "1,2,3,4,five,6\n"),
                       doctest::Contains("not a number"), ParseError);
  CHECK_THROWS_WITH_AS(parse_sweep_csv(header + "nan,2,3,4,5,6\n"),
                       doctest::Contains("coordinates"), ParseError);
}

TEST_CASE("parse_sweep_csv: raster structure is enforced") {
  const std::string header =
      "x_m,y_m,eps_theory_m,eps_mc_m,mc_stderr_m,degenerate_trials\n";
  // Ragged: second y-block has a different x set.
  CHECK_THROWS_AS(parse_sweep_csv(header +
                                  "0,0,1,1,0,0\n"
                                  "1,0,1,1,0,0\n"
                                  "0,1,1,1,0,0\n"
                                  "2,1,1,1,0,0\n"),
                  ParseError);
  // Incomplete final block.
  CHECK_THROWS_AS(parse_sweep_csv(header +
                                  "0,0,1,1,0,0\n"
                                  "1,0,1,1,0,0\n"
                                  "0,1,1,1,0,0\n"),
                  ParseError);
  // x must ascend within a block.
  CHECK_THROWS_AS(parse_sweep_csv(header +
                                  "1,0,1,1,0,0\n"
                                  "0,0,1,1,0,0\n"),
                  ParseError);
  // y must ascend across blocks.
  CHECK_THROWS_AS(parse_sweep_csv(header +
                                  "0,1,1,1,0,0\n"
                                  "1,1,1,1,0,0\n"
                                  "0,0,1,1,0,0\n"
                                  "1,0,1,1,0,0\n"),
                  ParseError);
}

TEST_CASE("render_heatmap_svg: deterministic bytes with both panels") {
  const GridSweepResult res = tiny_result();
  const std::string svg = render_heatmap_svg(res);
  CHECK(svg == render_heatmap_svg(res));
  CHECK(count_occurrences(svg, "<svg ") == 1);
  CHECK(count_occurrences(svg, "</svg>") == 1);
  CHECK(count_occurrences(svg, "theoretical e_ps (m)") == 1);
  CHECK(count_occurrences(svg, "Monte Carlo e_ps (m)") == 1);
}

TEST_CASE("render_heatmap_svg: missing values show as gray") {
  const std::string with_nan = render_heatmap_svg(tiny_result());
  CHECK(count_occurrences(with_nan, "#808080") >= 1);

  GridSweepResult clean = tiny_result();
  clean.records[2].eps_mc = 0.05;
  clean.records[2].mc_std_err = 1e-4;
  CHECK(count_occurrences(render_heatmap_svg(clean), "#808080") == 0);
}

TEST_CASE("render_heatmap_svg: estimator markers appear only when asked") {
  const GridSweepResult res = tiny_result();
  CHECK(count_occurrences(render_heatmap_svg(res), "<polygon") == 0);

  HeatmapOptions opts;
  opts.mark_estimators = true;
  opts.est1_x = 0.0;
  opts.est1_y = 0.5;
  opts.est2_x = 1.0;
  opts.est2_y = 0.5;
  // One star per head per panel.
  CHECK(count_occurrences(render_heatmap_svg(res, opts), "<polygon") == 4);
}

TEST_CASE("render_heatmap_svg: single-cell grid renders") {
  GridSweepResult res;
  res.grid = GridSpec{2.0, 2.0, 2.0, 2.0, 1.0};
  res.records = {{2.0, 2.0, 0.02, 0.021, 1e-4, 0}};
  const std::string svg = render_heatmap_svg(res);
  CHECK(count_occurrences(svg, "<svg ") == 1);
  CHECK(count_occurrences(svg, "<rect") >= 2);
}
