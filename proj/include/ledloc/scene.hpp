#pragma once

#include "ledloc/aoa.hpp"
#include "ledloc/channel.hpp"
#include "ledloc/linalg.hpp"
#include "ledloc/localizer.hpp"

namespace ledloc {

struct RoomBounds {
  double x_min = 0.0, x_max = 4.0;
  double y_min = 0.0, y_max = 4.0;
  double z_min = 0.0, z_max = 4.0;

  bool contains(const Vec3& p) const {
    return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min &&
           p.y() <= y_max && p.z() >= z_min && p.z() <= z_max;
  }
};

// Full scenario description: room, LED mount, the two heads, optics, noise
// and the numerical thresholds. Defaults are the wide placement scenario
// (heads at the room's left and right edges).
struct SceneConfig {
  RoomBounds room;
  double led_height = 4.0;
  Vec3 led_normal{0.0, 0.0, -1.0};        // ceiling mount, facing the floor
  Vec3 estimator1_pos{0.0, 2.0, 0.0};
  Vec3 estimator2_pos{4.0, 2.0, 0.0};
  OpticalParams optics{};
  NoiseModel noise{};
  bool use_optimal_normals = true;
  Mat4x3 pd_normals = optimal_normals();  // effective rows, whatever the selector
  double degeneracy_threshold = kDegeneracyThreshold;
  double min_separation = kMinSeparation;
  bool clip_negative_currents = false;

  AoaEstimator estimator1() const { return {estimator1_pos, pd_normals}; }
  AoaEstimator estimator2() const { return {estimator2_pos, pd_normals}; }

  Vec3 led_at(double x, double y) const { return {x, y, led_height}; }

  // Throws ValidationError naming the first offending key.
  void validate() const;
};

// Wide placement: heads at (0,2,0) and (4,2,0).
SceneConfig fig3_preset();
// Narrow placement: heads at (1.5,2,0) and (2.5,2,0), same optics.
SceneConfig fig4_preset();

}  // namespace ledloc
