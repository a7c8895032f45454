#pragma once

#include "ledloc/linalg.hpp"
#include "ledloc/localizer.hpp"
#include "ledloc/scene.hpp"

// First-order propagation of the incidence-vector noise through the
// triangulation: closed-form Jacobians of the solved ray ranges and of the
// position estimate, the resulting position-error covariance and the scalar
// RMS position error.

namespace ledloc {

// Row-vector gradients of the two solved ranges with respect to each
// incidence vector.
struct DistanceJacobians {
  RowVec3 d1_by_r1, d2_by_r1;
  RowVec3 d1_by_r2, d2_by_r2;
};

DistanceJacobians distance_jacobians(const TriangulationInputs& inp,
                                     double threshold = kDegeneracyThreshold);

// dt_by_rk = 1/2 (r1 * d(d1)/drk + d_k I + r2 * d(d2)/drk), meters of
// position shift per unit direction perturbation.
struct JacobianPair {
  Mat3 dt_by_r1, dt_by_r2;
};

JacobianPair estimate_jacobians(const TriangulationInputs& inp,
                                double threshold = kDegeneracyThreshold);

// J1 C1 J1^T + J2 C2 J2^T; the two heads' noises are independent.
Mat3 error_covariance(const JacobianPair& jac, const Mat3& cov1,
                      const Mat3& cov2);

// Scalar position error sqrt(trace(cov)). Traces in [-1e-18, 0] clamp to
// zero; anything more negative throws NegativeTrace.
double rms_position_error(const Mat3& cov);

struct ErrorReport {
  Mat3 covariance;  // m^2
  double e_ps;      // m, sqrt of the trace
};

// One head's noise picture at a given LED position: true geometry, peak
// current, and the incidence-estimate covariance C_{n_k}.
struct HeadError {
  HeadGeometry geometry;
  double mu_max;
  Mat3 covariance;
};

HeadError head_error_at(const SceneConfig& scene, const AoaEstimator& est,
                        const Vec3& led);

// Closed-form predicted error for a scene at a given LED position. The
// Jacobians are evaluated at the true incidence vectors, never at noisy
// estimates.
ErrorReport theoretical_error_at(const SceneConfig& scene, const Vec3& led);

}  // namespace ledloc
