#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "ledloc/error_analysis.hpp"
#include "ledloc/errors.hpp"
#include "ledloc/mc.hpp"
#include "test_helpers.hpp"

using namespace ledloc;
using test_helpers::rel_diff;

TEST_CASE("GridSpec: point counts and coordinates") {
  GridSpec grid;  // defaults: [0,4] x [0,4], step 0.25
  CHECK(grid.nx() == 17);
  CHECK(grid.ny() == 17);
  CHECK(grid.x_at(0) == 0.0);
  CHECK(grid.x_at(16) == 4.0);
  CHECK(grid.y_at(8) == 2.0);

  GridSpec odd{0.0, 1.0, 0.0, 1.0, 0.3};
  CHECK(odd.nx() == 4);  // 0, 0.3, 0.6, 0.9; the last step overshoots
  CHECK(odd.y_at(3) == doctest::Approx(0.9).epsilon(1e-15));

  GridSpec single{1.0, 1.0, 2.0, 2.0, 0.5};
  CHECK(single.nx() == 1);
  CHECK(single.ny() == 1);
}

TEST_CASE("GridSpec: validation against the room") {
  const RoomBounds room;
  GridSpec grid;
  CHECK_NOTHROW(grid.validate(room));
  grid.step = 0.0;
  CHECK_THROWS_AS(grid.validate(room), ValidationError);
  grid.step = 0.25;
  grid.x_max = 5.0;
  CHECK_THROWS_AS(grid.validate(room), ValidationError);
  grid.x_max = 4.0;
  grid.y_min = 3.0;
  grid.y_max = 1.0;
  CHECK_THROWS_AS(grid.validate(room), ValidationError);
}

TEST_CASE("ExperimentSpec: trial count validation") {
  ExperimentSpec spec;
  spec.scene = fig3_preset();
  CHECK_NOTHROW(spec.validate());
  spec.trials_per_point = 0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
}

TEST_CASE("run_trial: zero noise recovers the LED") {
  SceneConfig scene = fig3_preset();
  scene.noise = NoiseModel::off();
  RngStream rng(4);
  for (const double x : {0.5, 2.0, 3.75}) {
    for (const double y : {0.25, 2.0, 3.5}) {
      const Vec3 led = scene.led_at(x, y);
      CHECK((run_trial(scene, led, rng) - led).norm() < 1e-9);
    }
  }
}

TEST_CASE("run_trial: bit-identical under the same stream state") {
  const SceneConfig scene = fig3_preset();
  const Vec3 led = scene.led_at(1.5, 2.5);
  RngStream a(1234);
  RngStream b(1234);
  for (int i = 0; i < 20; ++i) {
    const Vec3 ta = run_trial(scene, led, a);
    const Vec3 tb = run_trial(scene, led, b);
    CHECK((ta - tb).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("run_trial: consumes exactly eight gaussians") {
  const SceneConfig scene = fig3_preset();
  const Vec3 led = scene.led_at(2.5, 1.0);
  RngStream a(55);
  RngStream b(55);
  (void)run_trial(scene, led, a);
  for (int i = 0; i < 8; ++i) (void)b.gaussian();
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("run_trial: degenerate when the LED is edge-on") {
  const SceneConfig scene = fig3_preset();
  RngStream rng(8);
  CHECK_THROWS_AS(run_trial(scene, Vec3(2.0, 2.0, 0.0), rng),
                  DegenerateGeometry);
}

TEST_CASE("empirical_eps: zero noise, zero error, full accounting") {
  SceneConfig scene = fig3_preset();
  scene.noise = NoiseModel::off();
  const EmpiricalError err =
      empirical_eps(scene, scene.led_at(1.0, 3.0), 50, RngStream(9));
  CHECK(err.e_ps < 1e-9);
  CHECK(err.degenerate_trials == 0);
  CHECK(err.valid_trials == 50);
}

TEST_CASE("empirical_eps: matches the closed form at the room center") {
  const SceneConfig scene = fig3_preset();
  const Vec3 led = scene.led_at(2.0, 2.0);
  const double theory = theoretical_error_at(scene, led).e_ps;
  const EmpiricalError err = empirical_eps(scene, led, 20000, RngStream(42));
  CHECK(err.valid_trials + err.degenerate_trials == 20000);
  CHECK(err.degenerate_trials == 0);
  CHECK(rel_diff(err.e_ps, theory) < 0.05);
  // The reported uncertainty should cover the gap comfortably.
  CHECK(std::abs(err.e_ps - theory) < 6.0 * err.std_err + 0.02 * theory);
}

TEST_CASE("empirical_eps: standard error shrinks like 1/sqrt(trials)") {
  const SceneConfig scene = fig3_preset();
  const Vec3 led = scene.led_at(1.0, 1.0);
  double ratio_sum = 0.0;
  const int seeds = 10;
  for (int s = 0; s < seeds; ++s) {
    const RngStream root(1000 + static_cast<std::uint64_t>(s));
    const EmpiricalError small = empirical_eps(scene, led, 2000, root);
    const EmpiricalError big = empirical_eps(scene, led, 4000, root);
    CHECK(small.std_err > 0.0);
    ratio_sum += big.std_err / small.std_err;
  }
  const double mean_ratio = ratio_sum / seeds;
  CHECK(std::abs(mean_ratio - 1.0 / std::sqrt(2.0)) < 0.2 / std::sqrt(2.0));
}

TEST_CASE("empirical_eps: convergence envelope tightens with trials") {
  // Use a reduced noise scale so the first-order bias is negligible and the
  // statistical envelope alone governs the gap: |mc - theory| should stay
  // within ~5 standard errors, i.e. 5/sqrt(2n) relative.
  SceneConfig scene = fig3_preset();
  scene.noise.const_coeff_A2 *= 1e-4;
  scene.noise.linear_coeff_A *= 1e-4;
  const Vec3 led = scene.led_at(1.5, 2.5);
  const double theory = theoretical_error_at(scene, led).e_ps;
  const RngStream root(2718);
  int k = 0;
  for (const int n : {1000, 10000, 100000}) {
    const EmpiricalError err = empirical_eps(scene, led, n, root.substream(k++));
    CHECK(err.degenerate_trials == 0);
    CHECK(rel_diff(err.e_ps, theory) < 5.0 / std::sqrt(2.0 * n));
  }
}

TEST_CASE("empirical_eps: narrow placement hurts the room corner") {
  const Vec3 corner(0.25, 0.25, 4.0);
  const EmpiricalError wide =
      empirical_eps(fig3_preset(), corner, 4000, RngStream(5));
  const EmpiricalError narrow =
      empirical_eps(fig4_preset(), corner, 4000, RngStream(5));
  CHECK(narrow.e_ps > wide.e_ps);
}

TEST_CASE("empirical_eps: trial streams are independent of call history") {
  const SceneConfig scene = fig3_preset();
  const Vec3 led = scene.led_at(3.0, 1.0);
  RngStream root(31);
  // Burning draws on the root does not move the substreams trials use.
  const EmpiricalError before = empirical_eps(scene, led, 500, root);
  (void)root.gaussian();
  const EmpiricalError after = empirical_eps(scene, led, 500, root);
  CHECK(before.e_ps == after.e_ps);
  CHECK(before.std_err == after.std_err);
}

TEST_CASE("empirical_eps: all-degenerate geometry raises") {
  const SceneConfig scene = fig3_preset();
  CHECK_THROWS_AS(
      empirical_eps(scene, Vec3(1.0, 1.0, 0.0), 10, RngStream(3)),
      AllTrialsDegenerate);
  CHECK_THROWS_AS(empirical_eps(scene, scene.led_at(1.0, 1.0), 0, RngStream(3)),
                  ValidationError);
}

TEST_CASE("sweep: single-point grid with zero noise") {
  ExperimentSpec spec;
  spec.scene = fig3_preset();
  spec.scene.noise = NoiseModel::off();
  spec.grid = GridSpec{2.0, 2.0, 2.0, 2.0, 0.25};
  spec.trials_per_point = 10;
  const GridSweepResult res = sweep(spec);
  REQUIRE(res.records.size() == 1);
  CHECK(res.records[0].x == 2.0);
  CHECK(res.records[0].y == 2.0);
  CHECK(res.records[0].eps_theory == 0.0);
  CHECK(res.records[0].eps_mc < 1e-9);
  CHECK(res.records[0].degenerate_trials == 0);
  CHECK(res.all_points_ok());
}

TEST_CASE("sweep: record layout is y-major, x-fastest, both ascending") {
  ExperimentSpec spec;
  spec.scene = fig3_preset();
  spec.grid = GridSpec{1.0, 2.0, 2.0, 3.5, 0.5};
  spec.trials_per_point = 10;
  const GridSweepResult res = sweep(spec);
  REQUIRE(res.records.size() == 12);  // 3 x-points, 4 y-points
  int idx = 0;
  for (int iy = 0; iy < 4; ++iy) {
    for (int ix = 0; ix < 3; ++ix, ++idx) {
      CHECK(res.records[idx].x == 1.0 + 0.5 * ix);
      CHECK(res.records[idx].y == 2.0 + 0.5 * iy);
    }
  }
}

TEST_CASE("sweep: theory and Monte Carlo stay close on a coarse grid") {
  ExperimentSpec spec;
  spec.scene = fig3_preset();
  spec.grid = GridSpec{0.0, 4.0, 0.0, 4.0, 1.0};
  spec.trials_per_point = 4000;
  spec.seed = 7;
  const GridSweepResult res = sweep(spec);
  REQUIRE(res.records.size() == 25);
  for (const PointRecord& rec : res.records) {
    CHECK(std::isfinite(rec.eps_theory));
    CHECK(std::isfinite(rec.eps_mc));
    CHECK(rec.degenerate_trials == 0);
    CHECK(rel_diff(rec.eps_mc, rec.eps_theory) < 0.05);
  }
  CHECK(res.all_points_ok());
}

TEST_CASE("sweep: identical output for any worker count") {
  ExperimentSpec spec;
  spec.scene = fig3_preset();
  spec.grid = GridSpec{0.5, 3.5, 0.5, 3.5, 0.75};
  spec.trials_per_point = 300;
  spec.seed = 99;
  const GridSweepResult serial = sweep(spec, 1);
  const GridSweepResult threaded = sweep(spec, 3);
  REQUIRE(serial.records.size() == threaded.records.size());
  for (size_t i = 0; i < serial.records.size(); ++i) {
    // Bit-for-bit: every point derives its stream from the seed and its own
    // index, never from scheduling.
    CHECK(serial.records[i].eps_theory == threaded.records[i].eps_theory);
    CHECK(serial.records[i].eps_mc == threaded.records[i].eps_mc);
    CHECK(serial.records[i].mc_std_err == threaded.records[i].mc_std_err);
    CHECK(serial.records[i].degenerate_trials ==
          threaded.records[i].degenerate_trials);
  }
}

TEST_CASE("sweep: per-point streams are substreams of the seed") {
  ExperimentSpec spec;
  spec.scene = fig3_preset();
  spec.grid = GridSpec{1.0, 2.0, 3.0, 3.0, 1.0};  // two points, one row
  spec.trials_per_point = 40;
  spec.seed = 424242;
  const GridSweepResult res = sweep(spec, 1);
  REQUIRE(res.records.size() == 2);
  const RngStream root(spec.seed);
  const EmpiricalError p0 =
      empirical_eps(spec.scene, spec.scene.led_at(1.0, 3.0), 40,
                    root.substream(0));
  const EmpiricalError p1 =
      empirical_eps(spec.scene, spec.scene.led_at(2.0, 3.0), 40,
                    root.substream(1));
  CHECK(res.records[0].eps_mc == p0.e_ps);
  CHECK(res.records[1].eps_mc == p1.e_ps);
}
