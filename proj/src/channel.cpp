#include "ledloc/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ledloc {

void OpticalParams::validate() const {
  if (!(transmit_power_lm > 0.0))
    throw ValidationError("optics.transmit_power_lm: must be > 0");
  if (!(lambertian_order >= 0.0))
    throw ValidationError("optics.lambertian_order: must be >= 0");
  if (!(pd_area_m2 > 0.0))
    throw ValidationError("optics.pd_area_mm2: must be > 0");
  if (!(responsivity_A_per_lux > 0.0))
    throw ValidationError("optics.responsivity_nA_per_lux: must be > 0");
}

void NoiseModel::validate() const {
  if (!(const_coeff_A2 >= 0.0))
    throw ValidationError("noise.const_coeff_A2: must be >= 0");
  if (!(linear_coeff_A >= 0.0))
    throw ValidationError("noise.linear_coeff_A: must be >= 0");
}

double lambertian_power(const OpticalParams& params, double distance_m,
                        double cos_theta, double cos_phi) {
  if (!(distance_m > 0.0)) {
    throw InvalidGeometry("lambertian_power: distance must be > 0, got " +
                          std::to_string(distance_m));
  }
  return params.transmit_power_lm * (params.lambertian_order + 1.0) *
         params.pd_area_m2 / (2.0 * std::numbers::pi * distance_m * distance_m) *
         std::pow(cos_theta, params.lambertian_order) * cos_phi;
}

double current_mean(const OpticalParams& params, double received_flux_lm) {
  return params.responsivity_A_per_lux / params.pd_area_m2 * received_flux_lm;
}

double noise_variance(const NoiseModel& model, double mean_current_A) {
  return model.const_coeff_A2 +
         model.linear_coeff_A * std::max(mean_current_A, 0.0);
}

double sample_noisy_current(const NoiseModel& model, double mean_current_A,
                            RngStream& rng) {
  const double sigma = std::sqrt(noise_variance(model, mean_current_A));
  return mean_current_A + sigma * rng.gaussian();
}

}  // namespace ledloc
