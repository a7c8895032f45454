#pragma once

#include <cmath>
#include <random>

#include "ledloc/linalg.hpp"
#include "ledloc/scene.hpp"

// Shared helpers for the unit suites. Scene generation uses std::mt19937_64,
// deliberately not the library's own stream type, so the statistical oracles
// are not fed by the machinery they check.

namespace test_helpers {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

inline ledloc::Vec3 random_unit(std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ledloc::Vec3 v;
  do {
    v = {normal(gen), normal(gen), normal(gen)};
  } while (v.norm() < 1e-3);
  return v.normalized();
}

// Floor-mounted estimators looking up at a ceiling LED, the sort of scene
// the whole pipeline targets. Guarantees separation and a non-degenerate
// ray pair.
struct RandomScene {
  ledloc::Vec3 a1, a2, led;
};

inline RandomScene random_scene(std::mt19937_64& gen,
                                double min_separation = 0.5) {
  std::uniform_real_distribution<double> coord(0.0, 4.0);
  RandomScene s;
  do {
    s.a1 = {coord(gen), coord(gen), 0.0};
    s.a2 = {coord(gen), coord(gen), 0.0};
  } while ((s.a2 - s.a1).norm() < min_separation);
  s.led = {coord(gen), coord(gen), 4.0};
  return s;
}

}  // namespace test_helpers
