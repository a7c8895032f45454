#pragma once

#include "ledloc/channel.hpp"
#include "ledloc/linalg.hpp"
#include "ledloc/rng.hpp"

// One angle-of-arrival head: four differently oriented photodiodes at a
// common position. Relative received currents recover the incidence vector
// toward the LED by least squares.

namespace ledloc {

// The error-power-optimal PD normal matrix: rows
// sqrt(2/3) * (cos(q*pi/2), sin(q*pi/2), 1/sqrt(2)), q = 1..4.
// Every row is unit norm and V^T V = (4/3) I.
Mat4x3 optimal_normals();

class AoaEstimator {
 public:
  // Validates unit-norm rows and full rank of the normal matrix;
  // caches the least-squares left inverse.
  AoaEstimator(const Vec3& position, const Mat4x3& normals);

  const Vec3& position() const { return position_; }
  const Mat4x3& normals() const { return normals_; }
  const Mat3x4& left_inverse() const { return left_inverse_; }

 private:
  Vec3 position_;
  Mat4x3 normals_;
  Mat3x4 left_inverse_;
};

// Unit incidence vector, range and LED radiation-angle cosine as seen from
// one head. cos_theta is clamped to [0, 1].
struct HeadGeometry {
  Vec3 incidence;
  double distance;
  double cos_theta;
};

HeadGeometry true_geometry(const AoaEstimator& est, const Vec3& led,
                           const Vec3& led_normal);

// Peak photocurrent scale of a head:
// R_p * P_t * (m+1) / (2 pi d^2) * cos_theta^m.
double peak_current(const OpticalParams& params, double distance_m,
                    double cos_theta);

// Per-PD mean currents mu_max * V * r, optionally clamped at zero for a
// physically clipped channel. All four PDs share one incidence vector; the
// head is small against the range.
Vec4 mean_currents(const AoaEstimator& est, double mu_max,
                   const Vec3& incidence, bool clip_negative = false);

// Per-PD noise variances, each evaluated at that PD's own mean current.
Vec4 per_pd_variances(const AoaEstimator& est, const NoiseModel& model,
                      double mu_max, const Vec3& incidence,
                      bool clip_negative = false);

// One noisy reading of the four PD currents.
Vec4 simulate_currents(const AoaEstimator& est, const OpticalParams& params,
                       const NoiseModel& model, const Vec3& led,
                       const Vec3& led_normal, RngStream& rng,
                       bool clip_negative = false);

// Least-squares recovery (1/mu_max) (V^T V)^-1 V^T currents. Exact on
// noiseless currents; not re-normalized.
Vec3 estimate_incidence(const AoaEstimator& est, const Vec4& currents,
                        double mu_max);

// Covariance of the incidence-vector error for the optimal normal matrix:
// the LS map sends the four independent PD noises to
// (sqrt(6)/(4 mu_max)) * (n4 - n2, n1 - n3, sum(n)/sqrt(2)).
Mat3 incidence_noise_covariance(double mu_max, const Vec4& variances);

// Covariance for an arbitrary head: the closed form above when the head uses
// the optimal matrix, the generic LS-map congruence otherwise.
Mat3 head_noise_covariance(const AoaEstimator& est, double mu_max,
                           const Vec4& variances);

// Estimated incidence vector bundled with its noise covariance.
struct IncidenceEstimate {
  Vec3 r_hat;
  double mu_max;
  Mat3 covariance;
};

// End-to-end per-head observation: true geometry -> noisy currents -> LS
// estimate, with the covariance evaluated from the true per-PD variances.
IncidenceEstimate observe_incidence(const AoaEstimator& est,
                                    const OpticalParams& params,
                                    const NoiseModel& model, const Vec3& led,
                                    const Vec3& led_normal, RngStream& rng,
                                    bool clip_negative = false);

}  // namespace ledloc
