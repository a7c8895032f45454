#pragma once

#include <cstdint>
#include <vector>

#include "ledloc/linalg.hpp"
#include "ledloc/rng.hpp"
#include "ledloc/scene.hpp"

// Monte Carlo engine: end-to-end trials (noisy currents -> incidence
// estimates -> triangulation), per-point empirical error, and grid sweeps
// comparing empirical against closed-form error.

namespace ledloc {

struct GridSpec {
  double x_min = 0.0, x_max = 4.0;
  double y_min = 0.0, y_max = 4.0;
  double step = 0.25;

  int nx() const;
  int ny() const;
  double x_at(int ix) const { return x_min + ix * step; }
  double y_at(int iy) const { return y_min + iy * step; }

  void validate(const RoomBounds& room) const;
};

struct ExperimentSpec {
  SceneConfig scene;
  GridSpec grid;
  int trials_per_point = 20000;
  std::uint64_t seed = 42;

  void validate() const;
};

// One end-to-end trial. Draws eight standard normals in fixed order (head 1
// PDs 1..4, then head 2 PDs 1..4), so a given stream state fixes the result
// bit for bit. Throws DegenerateGeometry when the noisy rays fail to
// triangulate.
Vec3 run_trial(const SceneConfig& scene, const Vec3& led, RngStream& rng);

struct EmpiricalError {
  double e_ps;             // sqrt(mean ||t_hat - t||^2) over valid trials
  double std_err;          // delta-method standard error of e_ps
  int degenerate_trials;
  int valid_trials;
};

// Trial k draws from trial_root.substream(k); any parallel split over trials
// would reproduce the same numbers. Throws AllTrialsDegenerate when no trial
// triangulates.
EmpiricalError empirical_eps(const SceneConfig& scene, const Vec3& led,
                             int n_trials, const RngStream& trial_root);

struct PointRecord {
  double x, y;              // LED horizontal coordinates, meters
  double eps_theory;        // closed-form e_ps (NaN when degenerate)
  double eps_mc;            // empirical e_ps (NaN when all trials degenerate)
  double mc_std_err;
  int degenerate_trials;
};

struct GridSweepResult {
  GridSpec grid;
  std::vector<PointRecord> records;  // row-major, y ascending then x ascending

  bool all_points_ok() const;
};

// Evaluates theory and Monte Carlo at every grid point. Point p draws from
// RngStream(seed).substream(p), so the result is identical for any worker
// count. workers <= 0 selects hardware concurrency.
GridSweepResult sweep(const ExperimentSpec& spec, int workers = 0);

}  // namespace ledloc
