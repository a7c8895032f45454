#include "ledloc/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "ledloc/aoa.hpp"
#include "ledloc/error_analysis.hpp"
#include "ledloc/errors.hpp"
#include "ledloc/localizer.hpp"

namespace ledloc {

namespace {

// Inclusive endpoint count; tolerant of ranges that are off an exact
// multiple of step by rounding error.
int axis_points(double lo, double hi, double step) {
  return static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

}  // namespace

int GridSpec::nx() const { return axis_points(x_min, x_max, step); }
int GridSpec::ny() const { return axis_points(y_min, y_max, step); }

void GridSpec::validate(const RoomBounds& room) const {
  if (!(step > 0.0)) {
    throw ValidationError("grid.step: must be positive");
  }
  if (!(x_max >= x_min)) {
    throw ValidationError("grid.x_max: below grid.x_min");
  }
  if (!(y_max >= y_min)) {
    throw ValidationError("grid.y_max: below grid.y_min");
  }
  if (x_min < room.x_min || x_max > room.x_max || y_min < room.y_min ||
      y_max > room.y_max) {
    throw ValidationError("grid: extends outside the room footprint");
  }
}

void ExperimentSpec::validate() const {
  scene.validate();
  grid.validate(scene.room);
  if (trials_per_point < 1) {
    throw ValidationError("mc.trials_per_point: must be at least 1");
  }
}

Vec3 run_trial(const SceneConfig& scene, const Vec3& led, RngStream& rng) {
  const AoaEstimator est1 = scene.estimator1();
  const AoaEstimator est2 = scene.estimator2();

  // Head 1's four PD draws come first, then head 2's; the draw order is part
  // of the reproducibility contract.
  const Vec4 currents1 =
      simulate_currents(est1, scene.optics, scene.noise, led, scene.led_normal,
                        rng, scene.clip_negative_currents);
  const Vec4 currents2 =
      simulate_currents(est2, scene.optics, scene.noise, led, scene.led_normal,
                        rng, scene.clip_negative_currents);

  const HeadGeometry g1 = true_geometry(est1, led, scene.led_normal);
  const HeadGeometry g2 = true_geometry(est2, led, scene.led_normal);
  const double mu1 = peak_current(scene.optics, g1.distance, g1.cos_theta);
  const double mu2 = peak_current(scene.optics, g2.distance, g2.cos_theta);
  if (!(mu1 > 0.0) || !(mu2 > 0.0)) {
    throw DegenerateGeometry(
        "peak current vanishes; incidence is unobservable");
  }

  const Vec3 r1 = estimate_incidence(est1, currents1, mu1);
  const Vec3 r2 = estimate_incidence(est2, currents2, mu2);

  const TriangulationResult res =
      triangulate({est1.position(), est2.position(), r1, r2},
                  scene.degeneracy_threshold, scene.min_separation);
  return res.t_hat;
}

EmpiricalError empirical_eps(const SceneConfig& scene, const Vec3& led,
                             int n_trials, const RngStream& trial_root) {
  if (n_trials < 1) {
    throw ValidationError("mc.trials_per_point: must be at least 1");
  }

  double sum_sq = 0.0;    // sum of squared position errors
  double sum_quad = 0.0;  // sum of their squares, for the standard error
  int valid = 0;
  int degenerate = 0;
  for (int k = 0; k < n_trials; ++k) {
    RngStream rng = trial_root.substream(static_cast<std::uint64_t>(k));
    try {
      const Vec3 t_hat = run_trial(scene, led, rng);
      const double sq = (t_hat - led).squaredNorm();
      sum_sq += sq;
      sum_quad += sq * sq;
      ++valid;
    } catch (const DegenerateGeometry&) {
      ++degenerate;
    }
  }
  if (valid == 0) {
    throw AllTrialsDegenerate("no trial produced a position estimate");
  }

  const double mean_sq = sum_sq / valid;
  const double e_ps = std::sqrt(mean_sq);
  double std_err = 0.0;
  if (valid > 1 && e_ps > 0.0) {
    // Delta method: Var(sqrt(mean S)) ~= Var(S) / (4 N mean S).
    const double var_sq =
        std::max(0.0, (sum_quad - valid * mean_sq * mean_sq) / (valid - 1));
    std_err = std::sqrt(var_sq / valid) / (2.0 * e_ps);
  }
  return {e_ps, std_err, degenerate, valid};
}

bool GridSweepResult::all_points_ok() const {
  for (const PointRecord& rec : records) {
    if (!std::isfinite(rec.eps_theory) || !std::isfinite(rec.eps_mc)) {
      return false;
    }
  }
  return true;
}

GridSweepResult sweep(const ExperimentSpec& spec, int workers) {
  spec.validate();

  const int nx = spec.grid.nx();
  const int ny = spec.grid.ny();
  const int n_points = nx * ny;

  GridSweepResult out;
  out.grid = spec.grid;
  out.records.resize(static_cast<std::size_t>(n_points));

  const RngStream root(spec.seed);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  auto eval_point = [&](int p) {
    const int iy = p / nx;
    const int ix = p % nx;
    const double x = spec.grid.x_at(ix);
    const double y = spec.grid.y_at(iy);
    const Vec3 led = spec.scene.led_at(x, y);

    PointRecord rec{};
    rec.x = x;
    rec.y = y;
    try {
      rec.eps_theory = theoretical_error_at(spec.scene, led).e_ps;
    } catch (const DegenerateGeometry&) {
      rec.eps_theory = nan;
    }
    try {
      const RngStream point_root =
          root.substream(static_cast<std::uint64_t>(p));
      const EmpiricalError emp =
          empirical_eps(spec.scene, led, spec.trials_per_point, point_root);
      rec.eps_mc = emp.e_ps;
      rec.mc_std_err = emp.std_err;
      rec.degenerate_trials = emp.degenerate_trials;
    } catch (const AllTrialsDegenerate&) {
      rec.eps_mc = nan;
      rec.mc_std_err = nan;
      rec.degenerate_trials = spec.trials_per_point;
    }
    out.records[static_cast<std::size_t>(p)] = rec;
  };

  int n_workers = workers > 0
                      ? workers
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_workers = std::clamp(n_workers, 1, std::max(n_points, 1));

  if (n_workers == 1) {
    for (int p = 0; p < n_points; ++p) {
      eval_point(p);
    }
    return out;
  }

  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (int p = next.fetch_add(1); p < n_points;
             p = next.fetch_add(1)) {
          eval_point(p);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
  return out;
}

}  // namespace ledloc
