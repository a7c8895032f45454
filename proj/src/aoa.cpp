#include "ledloc/aoa.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ledloc {

Mat4x3 optimal_normals() {
  const double scale = std::sqrt(2.0 / 3.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Mat4x3 v;
  for (int q = 1; q <= 4; ++q) {
    const double alpha = q * std::numbers::pi / 2.0;
    v.row(q - 1) << scale * std::cos(alpha), scale * std::sin(alpha),
        scale * inv_sqrt2;
  }
  return v;
}

AoaEstimator::AoaEstimator(const Vec3& position, const Mat4x3& normals)
    : position_(position), normals_(normals) {
  if (!position.allFinite())
    throw ValidationError("AoaEstimator: position must be finite");
  for (int q = 0; q < 4; ++q) {
    const Vec3 row = normals.row(q).transpose();
    if (!is_unit(row)) {
      throw ValidationError("AoaEstimator: PD normal row " +
                            std::to_string(q + 1) + " is not unit norm");
    }
  }
  left_inverse_ = pseudo_left_inverse(normals);  // throws RankDeficient
}

HeadGeometry true_geometry(const AoaEstimator& est, const Vec3& led,
                           const Vec3& led_normal) {
  const Vec3 diff = led - est.position();
  const double d = diff.norm();
  if (!(d > 0.0)) throw CoincidentPoints("true_geometry: LED coincides with estimator");
  const Vec3 r = diff / d;
  const double cos_theta = std::clamp(-r.dot(led_normal), 0.0, 1.0);
  return {r, d, cos_theta};
}

double peak_current(const OpticalParams& params, double distance_m,
                    double cos_theta) {
  if (!(distance_m > 0.0))
    throw InvalidGeometry("peak_current: distance must be > 0");
  return params.responsivity_A_per_lux * params.transmit_power_lm *
         (params.lambertian_order + 1.0) /
         (2.0 * std::numbers::pi * distance_m * distance_m) *
         std::pow(cos_theta, params.lambertian_order);
}

Vec4 mean_currents(const AoaEstimator& est, double mu_max,
                   const Vec3& incidence, bool clip_negative) {
  Vec4 mu = mu_max * (est.normals() * incidence);
  if (clip_negative) mu = mu.cwiseMax(0.0);
  return mu;
}

Vec4 per_pd_variances(const AoaEstimator& est, const NoiseModel& model,
                      double mu_max, const Vec3& incidence,
                      bool clip_negative) {
  const Vec4 mu = mean_currents(est, mu_max, incidence, clip_negative);
  Vec4 var;
  for (int q = 0; q < 4; ++q) var[q] = noise_variance(model, mu[q]);
  return var;
}

Vec4 simulate_currents(const AoaEstimator& est, const OpticalParams& params,
                       const NoiseModel& model, const Vec3& led,
                       const Vec3& led_normal, RngStream& rng,
                       bool clip_negative) {
  const HeadGeometry geo = true_geometry(est, led, led_normal);
  const double mu_max = peak_current(params, geo.distance, geo.cos_theta);
  const Vec4 mu = mean_currents(est, mu_max, geo.incidence, clip_negative);
  Vec4 currents;
  for (int q = 0; q < 4; ++q)
    currents[q] = sample_noisy_current(model, mu[q], rng);
  return currents;
}

Vec3 estimate_incidence(const AoaEstimator& est, const Vec4& currents,
                        double mu_max) {
  if (!(mu_max > 0.0))
    throw InvalidGeometry("estimate_incidence: mu_max must be > 0");
  return (est.left_inverse() * currents) / mu_max;
}

Mat3 incidence_noise_covariance(double mu_max, const Vec4& variances) {
  const double c = 6.0 / (16.0 * mu_max * mu_max);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Mat3 cov = Mat3::Zero();
  cov(0, 0) = c * (variances[3] + variances[1]);
  cov(1, 1) = c * (variances[0] + variances[2]);
  cov(2, 2) = 0.5 * c * variances.sum();
  cov(0, 2) = cov(2, 0) = c * inv_sqrt2 * (variances[3] - variances[1]);
  cov(1, 2) = cov(2, 1) = c * inv_sqrt2 * (variances[0] - variances[2]);
  return cov;
}

namespace {

bool uses_optimal_normals(const AoaEstimator& est) {
  static const Mat4x3 opt = optimal_normals();
  return (est.normals() - opt).cwiseAbs().maxCoeff() < 1e-12;
}

}  // namespace

Mat3 head_noise_covariance(const AoaEstimator& est, double mu_max,
                           const Vec4& variances) {
  if (uses_optimal_normals(est))
    return incidence_noise_covariance(mu_max, variances);
  const Mat3x4 map = est.left_inverse() / mu_max;
  return map * variances.asDiagonal() * map.transpose();
}

IncidenceEstimate observe_incidence(const AoaEstimator& est,
                                    const OpticalParams& params,
                                    const NoiseModel& model, const Vec3& led,
                                    const Vec3& led_normal, RngStream& rng,
                                    bool clip_negative) {
  const HeadGeometry geo = true_geometry(est, led, led_normal);
  const double mu_max = peak_current(params, geo.distance, geo.cos_theta);
  const Vec4 var = per_pd_variances(est, model, mu_max, geo.incidence,
                                    clip_negative);
  const Vec4 currents =
      simulate_currents(est, params, model, led, led_normal, rng, clip_negative);
  return {estimate_incidence(est, currents, mu_max), mu_max,
          head_noise_covariance(est, mu_max, var)};
}

}  // namespace ledloc
