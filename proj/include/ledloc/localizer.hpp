#pragma once

#include "ledloc/linalg.hpp"

// Two-ray triangulation: given the estimator positions a1, a2 and the
// (possibly noisy, possibly non-unit) incidence vectors r1, r2, solve
// (r1, r2) (d1, -d2)^T = a2 - a1 by least squares and place the LED at the
// midpoint of the two per-ray points.

namespace ledloc {

inline constexpr double kDegeneracyThreshold = 1e-9;
inline constexpr double kMinSeparation = 1e-6;

struct TriangulationInputs {
  Vec3 a1, a2;  // estimator positions, meters
  Vec3 r1, r2;  // incidence vectors
};

// Gram entries c1 = r1.r1, c2 = r1.r2, c3 = r2.r2 and the baseline
// projections f_k = r_k.(a2 - a1).
struct GramProjections {
  double c1, c2, c3;
  double f1, f2;

  double discriminant() const { return c1 * c3 - c2 * c2; }
};

GramProjections gram_and_projections(const TriangulationInputs& inp);

struct RayDistances {
  double d1, d2;  // signed ray parameters, meters
};

// d1 = (c3 f1 - c2 f2) / (c1 c3 - c2^2), d2 = (c2 f1 - c1 f2) / (same).
// Throws DegenerateGeometry when the discriminant is at or below threshold.
RayDistances solve_distances(const GramProjections& gp,
                             double threshold = kDegeneracyThreshold);

struct TriangulationResult {
  Vec3 t_hat;            // midpoint of a1 + d1 r1 and a2 + d2 r2
  double d1, d2;
  GramProjections gram;
  bool behind_ray;       // a solved range came out negative (heavy noise)
};

TriangulationResult triangulate(const TriangulationInputs& inp,
                                double degeneracy_threshold = kDegeneracyThreshold,
                                double min_separation = kMinSeparation);

}  // namespace ledloc
