#include "ledloc/scene.hpp"

#include <string>

namespace ledloc {

void SceneConfig::validate() const {
  if (!(room.x_min < room.x_max))
    throw ValidationError("room.x_max: must exceed room.x_min");
  if (!(room.y_min < room.y_max))
    throw ValidationError("room.y_max: must exceed room.y_min");
  if (!(room.z_min < room.z_max))
    throw ValidationError("room.z_max: must exceed room.z_min");
  if (!(led_height >= room.z_min && led_height <= room.z_max))
    throw ValidationError("led.height: outside room z range");
  if (!led_normal.allFinite() || !is_unit(led_normal, 1e-9))
    throw ValidationError("led.normal: must be a unit vector");
  if (!room.contains(estimator1_pos))
    throw ValidationError("estimator1.position: outside room");
  if (!room.contains(estimator2_pos))
    throw ValidationError("estimator2.position: outside room");
  if ((estimator2_pos - estimator1_pos).norm() < min_separation)
    throw ValidationError(
        "estimator2.position: closer to estimator1.position than "
        "thresholds.min_separation");
  optics.validate();
  noise.validate();
  if (!(degeneracy_threshold > 0.0))
    throw ValidationError("thresholds.degeneracy: must be > 0");
  if (!(min_separation > 0.0))
    throw ValidationError("thresholds.min_separation: must be > 0");
  for (int q = 0; q < 4; ++q) {
    if (!is_unit(pd_normals.row(q).transpose(), 1e-9))
      throw ValidationError("pd.row" + std::to_string(q + 1) +
                            ": must be a unit vector");
  }
  try {
    // must support the LS recovery
    pseudo_left_inverse(pd_normals);
  } catch (const RankDeficient&) {
    throw ValidationError("pd.normals: rows do not span 3-space");
  }
}

SceneConfig fig3_preset() { return SceneConfig{}; }

SceneConfig fig4_preset() {
  SceneConfig scene;
  scene.estimator1_pos = Vec3{1.5, 2.0, 0.0};
  scene.estimator2_pos = Vec3{2.5, 2.0, 0.0};
  return scene;
}

}  // namespace ledloc
