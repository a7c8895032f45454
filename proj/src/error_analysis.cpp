#include "ledloc/error_analysis.hpp"

#include <cmath>
#include <string>

#include "ledloc/aoa.hpp"

namespace ledloc {

DistanceJacobians distance_jacobians(const TriangulationInputs& inp,
                                     double threshold) {
  const GramProjections gp = gram_and_projections(inp);
  const double disc = gp.discriminant();
  if (!(disc > threshold)) {
    throw DegenerateGeometry("distance_jacobians: discriminant " +
                             std::to_string(disc) + " at or below threshold");
  }
  const RowVec3 r1 = inp.r1.transpose();
  const RowVec3 r2 = inp.r2.transpose();
  const RowVec3 baseline = (inp.a2 - inp.a1).transpose();
  const double num1 = gp.c3 * gp.f1 - gp.c2 * gp.f2;  // disc * d1
  const double num2 = gp.c2 * gp.f1 - gp.c1 * gp.f2;  // disc * d2
  const double inv_disc = 1.0 / disc;
  const double inv_disc2 = inv_disc * inv_disc;

  // gradients of the discriminant
  const RowVec3 disc_by_r1 = 2.0 * gp.c3 * r1 - 2.0 * gp.c2 * r2;
  const RowVec3 disc_by_r2 = 2.0 * gp.c1 * r2 - 2.0 * gp.c2 * r1;

  DistanceJacobians jac;
  jac.d1_by_r1 = -num1 * inv_disc2 * disc_by_r1 +
                 inv_disc * (gp.c3 * baseline - gp.f2 * r2);
  jac.d2_by_r1 = -num2 * inv_disc2 * disc_by_r1 +
                 inv_disc * (gp.c2 * baseline + gp.f1 * r2 - 2.0 * gp.f2 * r1);
  jac.d1_by_r2 = -num1 * inv_disc2 * disc_by_r2 +
                 inv_disc * (2.0 * gp.f1 * r2 - gp.c2 * baseline - gp.f2 * r1);
  jac.d2_by_r2 = -num2 * inv_disc2 * disc_by_r2 +
                 inv_disc * (gp.f1 * r1 - gp.c1 * baseline);
  return jac;
}

JacobianPair estimate_jacobians(const TriangulationInputs& inp,
                                double threshold) {
  const GramProjections gp = gram_and_projections(inp);
  const auto [d1, d2] = solve_distances(gp, threshold);
  const DistanceJacobians dj = distance_jacobians(inp, threshold);
  const Mat3 identity = Mat3::Identity();
  JacobianPair jac;
  jac.dt_by_r1 = 0.5 * (inp.r1 * dj.d1_by_r1 + d1 * identity +
                        inp.r2 * dj.d2_by_r1);
  jac.dt_by_r2 = 0.5 * (inp.r1 * dj.d1_by_r2 + d2 * identity +
                        inp.r2 * dj.d2_by_r2);
  return jac;
}

Mat3 error_covariance(const JacobianPair& jac, const Mat3& cov1,
                      const Mat3& cov2) {
  return jac.dt_by_r1 * cov1 * jac.dt_by_r1.transpose() +
         jac.dt_by_r2 * cov2 * jac.dt_by_r2.transpose();
}

double rms_position_error(const Mat3& cov) {
  const double tr = cov.trace();
  if (tr < -1e-18) {
    throw NegativeTrace("rms_position_error: trace " + std::to_string(tr));
  }
  return std::sqrt(std::max(tr, 0.0));
}

HeadError head_error_at(const SceneConfig& scene, const AoaEstimator& est,
                        const Vec3& led) {
  const HeadGeometry geo = true_geometry(est, led, scene.led_normal);
  const double mu_max = peak_current(scene.optics, geo.distance, geo.cos_theta);
  if (!(mu_max > 0.0)) {
    throw DegenerateGeometry(
        "head_error_at: zero peak current (LED edge-on to head)");
  }
  const Vec4 var = per_pd_variances(est, scene.noise, mu_max, geo.incidence,
                                    scene.clip_negative_currents);
  return {geo, mu_max, head_noise_covariance(est, mu_max, var)};
}

ErrorReport theoretical_error_at(const SceneConfig& scene, const Vec3& led) {
  const AoaEstimator est1 = scene.estimator1();
  const AoaEstimator est2 = scene.estimator2();
  const HeadError head1 = head_error_at(scene, est1, led);
  const HeadError head2 = head_error_at(scene, est2, led);

  const TriangulationInputs inp{est1.position(), est2.position(),
                                head1.geometry.incidence,
                                head2.geometry.incidence};
  const JacobianPair jac = estimate_jacobians(inp, scene.degeneracy_threshold);
  const Mat3 cov = error_covariance(jac, head1.covariance, head2.covariance);
  return {cov, rms_position_error(cov)};
}

}  // namespace ledloc
