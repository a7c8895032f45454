#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ledloc/config.hpp"
#include "ledloc/error_analysis.hpp"
#include "ledloc/errors.hpp"
#include "ledloc/heatmap.hpp"
#include "ledloc/mc.hpp"
#include "ledloc/sweep_io.hpp"

namespace {

using namespace ledloc;

// Either a config file or one of the bundled presets.
struct SceneSource {
  std::string config_path;
  std::string preset;

  bool given() const { return !config_path.empty() || !preset.empty(); }

  ExperimentSpec resolve() const {
    if (!config_path.empty()) {
      return load_config(config_path);
    }
    ExperimentSpec spec;
    spec.scene = (preset == "fig4") ? fig4_preset() : fig3_preset();
    return spec;
  }
};

// Adds --config/--preset to a subcommand; at most one may be given.
void add_scene_options(CLI::App* cmd, SceneSource& src) {
  auto* config = cmd->add_option("--config", src.config_path,
                                 "configuration file (key = value schema)");
  auto* preset = cmd->add_option("--preset", src.preset,
                                 "bundled scenario: fig3 (wide heads) or "
                                 "fig4 (narrow heads)")
                     ->check(CLI::IsMember({"fig3", "fig4"}));
  config->excludes(preset);
  preset->excludes(config);
}

struct Overrides {
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> step;
  std::string noise;  // "", "on" or "off"
};

void add_override_options(CLI::App* cmd, Overrides& ov, bool with_step) {
  cmd->add_option("--trials", ov.trials, "Monte Carlo trials per grid point");
  cmd->add_option("--seed", ov.seed, "random seed");
  if (with_step) {
    cmd->add_option("--step", ov.step, "grid step in meters");
  }
  cmd->add_option("--noise", ov.noise, "noise model switch: on | off")
      ->check(CLI::IsMember({"on", "off"}));
}

void apply(const Overrides& ov, ExperimentSpec& spec) {
  if (ov.trials) spec.trials_per_point = *ov.trials;
  if (ov.seed) spec.seed = *ov.seed;
  if (ov.step) spec.grid.step = *ov.step;
  if (ov.noise == "off") spec.scene.noise = NoiseModel::off();
  spec.validate();
}

std::string fmt_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

void print_matrix(const char* label, const Mat3& m) {
  std::printf("%s\n", label);
  for (int r = 0; r < 3; ++r) {
    std::printf("  % .9e  % .9e  % .9e\n", m(r, 0), m(r, 1), m(r, 2));
  }
}

int run_sweep(const SceneSource& src, const Overrides& ov,
              const std::string& out_path, int workers) {
  ExperimentSpec spec = src.resolve();
  apply(ov, spec);
  const GridSweepResult result = sweep(spec, workers);
  write_sweep_csv(result, out_path);
  if (!result.all_points_ok()) {
    int bad = 0;
    for (const PointRecord& rec : result.records) {
      if (!std::isfinite(rec.eps_theory) || !std::isfinite(rec.eps_mc)) ++bad;
    }
    std::cerr << "error: " << bad
              << " grid point(s) were degenerate; written as nan in "
              << out_path << "\n";
    return 1;
  }
  return 0;
}

int run_point(const SceneSource& src, const Overrides& ov, double x,
              double y) {
  ExperimentSpec spec = src.resolve();
  apply(ov, spec);
  const SceneConfig& scene = spec.scene;
  const Vec3 led = scene.led_at(x, y);
  if (!scene.room.contains(led)) {
    throw ValidationError("led position outside room");
  }

  const AoaEstimator est1 = scene.estimator1();
  const AoaEstimator est2 = scene.estimator2();
  const HeadError head1 = head_error_at(scene, est1, led);
  const HeadError head2 = head_error_at(scene, est2, led);
  const ErrorReport report = theoretical_error_at(scene, led);
  const EmpiricalError emp = empirical_eps(scene, led, spec.trials_per_point,
                                           RngStream(spec.seed));

  std::printf("led position (m): %g %g %g\n", led.x(), led.y(), led.z());
  std::printf("e_ps theory (m): %s\n", fmt_value(report.e_ps).c_str());
  std::printf("e_ps monte carlo (m): %s\n", fmt_value(emp.e_ps).c_str());
  std::printf("mc std err (m): %s\n", fmt_value(emp.std_err).c_str());
  std::printf("trials: %d  degenerate: %d\n",
              emp.valid_trials + emp.degenerate_trials, emp.degenerate_trials);
  print_matrix("position error covariance (m^2):", report.covariance);
  print_matrix("head 1 incidence noise covariance:", head1.covariance);
  print_matrix("head 2 incidence noise covariance:", head2.covariance);
  return 0;
}

int run_plot(const std::string& in_path, const std::string& out_path,
             const SceneSource& src) {
  const GridSweepResult result = read_sweep_csv(in_path);
  HeatmapOptions options;
  if (src.given()) {
    const ExperimentSpec spec = src.resolve();
    options.mark_estimators = true;
    options.est1_x = spec.scene.estimator1_pos.x();
    options.est1_y = spec.scene.estimator1_pos.y();
    options.est2_x = spec.scene.estimator2_pos.x();
    options.est2_y = spec.scene.estimator2_pos.y();
  }
  write_heatmap_svg(result, options, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Beacon-LED localization: closed-form position-error prediction and "
      "Monte Carlo validation for a two-head AOA setup."};
  app.require_subcommand(1);

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "evaluate the error over an LED grid and write a CSV");
  SceneSource sweep_src;
  Overrides sweep_ov;
  std::string sweep_out;
  int workers = 0;
  add_scene_options(sweep_cmd, sweep_src);
  sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();
  add_override_options(sweep_cmd, sweep_ov, true);
  sweep_cmd->add_option("--workers", workers,
                        "worker threads (0 = hardware concurrency)");

  auto* point_cmd = app.add_subcommand(
      "point", "report theory and Monte Carlo error at one LED position");
  SceneSource point_src;
  Overrides point_ov;
  double px = 0.0, py = 0.0;
  add_scene_options(point_cmd, point_src);
  point_cmd->add_option("--x", px, "LED x coordinate (m)")->required();
  point_cmd->add_option("--y", py, "LED y coordinate (m)")->required();
  add_override_options(point_cmd, point_ov, false);

  auto* plot_cmd = app.add_subcommand(
      "plot", "render a sweep CSV as a two-panel SVG heatmap");
  SceneSource plot_src;
  std::string plot_in, plot_out;
  plot_cmd->add_option("--in", plot_in, "sweep CSV path")->required();
  plot_cmd->add_option("--out", plot_out, "output SVG path")->required();
  add_scene_options(plot_cmd, plot_src);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_cmd->parsed()) {
      if (!sweep_src.given()) {
        std::cerr << "error: sweep needs --config or --preset\n";
        return 2;
      }
      return run_sweep(sweep_src, sweep_ov, sweep_out, workers);
    }
    if (point_cmd->parsed()) {
      if (!point_src.given()) {
        std::cerr << "error: point needs --config or --preset\n";
        return 2;
      }
      return run_point(point_src, point_ov, px, py);
    }
    if (plot_cmd->parsed()) {
      return run_plot(plot_in, plot_out, plot_src);
    }
  } catch (const ledloc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
