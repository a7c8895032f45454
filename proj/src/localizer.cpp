#include "ledloc/localizer.hpp"

#include <string>

namespace ledloc {

GramProjections gram_and_projections(const TriangulationInputs& inp) {
  const Vec3 baseline = inp.a2 - inp.a1;
  return {inp.r1.dot(inp.r1), inp.r1.dot(inp.r2), inp.r2.dot(inp.r2),
          inp.r1.dot(baseline), inp.r2.dot(baseline)};
}

RayDistances solve_distances(const GramProjections& gp, double threshold) {
  const double disc = gp.discriminant();
  if (!(disc > threshold)) {
    throw DegenerateGeometry("solve_distances: discriminant " +
                             std::to_string(disc) +
                             " at or below threshold (parallel rays?)");
  }
  return {(gp.c3 * gp.f1 - gp.c2 * gp.f2) / disc,
          (gp.c2 * gp.f1 - gp.c1 * gp.f2) / disc};
}

TriangulationResult triangulate(const TriangulationInputs& inp,
                                double degeneracy_threshold,
                                double min_separation) {
  if ((inp.a2 - inp.a1).norm() < min_separation) {
    throw DegenerateGeometry("triangulate: estimators closer than minimum separation");
  }
  const GramProjections gp = gram_and_projections(inp);
  const auto [d1, d2] = solve_distances(gp, degeneracy_threshold);
  const Vec3 t_hat = 0.5 * (inp.a1 + d1 * inp.r1 + inp.a2 + d2 * inp.r2);
  return {t_hat, d1, d2, gp, d1 < 0.0 || d2 < 0.0};
}

}  // namespace ledloc
