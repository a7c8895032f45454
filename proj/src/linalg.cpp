#include "ledloc/linalg.hpp"

#include <cmath>

namespace ledloc {

Mat2 mat2_inverse(const Mat2& m, double threshold) {
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (!(std::abs(det) > threshold)) {
    throw SingularMatrix("mat2_inverse: |det| = " + std::to_string(std::abs(det)) +
                         " below threshold");
  }
  Mat2 inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return inv / det;
}

Mat3x4 pseudo_left_inverse(const Mat4x3& v, double threshold) {
  const Mat3 gram = v.transpose() * v;
  const double det = gram.determinant();
  if (!(std::abs(det) > threshold)) {
    throw RankDeficient("pseudo_left_inverse: V^T V singular (det = " +
                        std::to_string(det) + ")");
  }
  return gram.inverse() * v.transpose();
}

}  // namespace ledloc
