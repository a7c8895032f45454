#pragma once

#include "ledloc/errors.hpp"
#include "ledloc/rng.hpp"

// Lambertian line-of-sight channel: received flux, flux-to-current
// conversion, and the luminance-dependent additive current noise.

namespace ledloc {

struct OpticalParams {
  double transmit_power_lm = 5000.0;       // luminous flux of the LED
  double lambertian_order = 1.0;           // radiation pattern exponent
  double pd_area_m2 = 15e-6;               // effective receiving area per PD
  double responsivity_A_per_lux = 22e-9;   // illuminance-to-current conversion

  void validate() const;  // throws ValidationError
};

// Current-domain noise variance: const_coeff + linear_coeff * mean current.
// Defaults are an MMSE fit covering thermal plus shot noise; the draw itself
// is zero-mean Gaussian.
struct NoiseModel {
  double const_coeff_A2 = 8.0185e-18;
  double linear_coeff_A = 1.869e-11;

  static NoiseModel off() { return {0.0, 0.0}; }
  void validate() const;
};

// Received luminous flux at distance d for radiation-angle cosine cos_theta
// and incidence-angle cosine cos_phi. cos_phi keeps its sign; callers that
// want a physically clipped channel clamp at zero themselves.
double lambertian_power(const OpticalParams& params, double distance_m,
                        double cos_theta, double cos_phi);

// Mean photocurrent (responsivity / area) * flux.
double current_mean(const OpticalParams& params, double received_flux_lm);

// Variance of the additive current noise at the given mean current.
// Negative means are clamped to zero, keeping the variance at least the floor.
double noise_variance(const NoiseModel& model, double mean_current_A);

// mean + Gaussian(0, noise_variance); deterministic given the stream state.
double sample_noisy_current(const NoiseModel& model, double mean_current_A,
                            RngStream& rng);

}  // namespace ledloc
