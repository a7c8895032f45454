#pragma once

#include <Eigen/Dense>

#include "ledloc/errors.hpp"

// Fixed-size linear algebra shared by every module. Positions are in meters,
// directions are dimensionless; nothing here exceeds 4x4.

namespace ledloc {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using RowVec3 = Eigen::RowVector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4x3 = Eigen::Matrix<double, 4, 3>;
using Mat3x4 = Eigen::Matrix<double, 3, 4>;

inline constexpr double kSingularityThreshold = 1e-12;
inline constexpr double kUnitNormTolerance = 1e-12;

inline bool is_unit(const Vec3& v, double tol = kUnitNormTolerance) {
  return std::abs(v.norm() - 1.0) <= tol;
}

// Adjugate inverse with an absolute determinant cutoff; throws SingularMatrix
// below it so degenerate estimator geometry surfaces early.
Mat2 mat2_inverse(const Mat2& m, double threshold = kSingularityThreshold);

// (V^T V)^-1 V^T. Throws RankDeficient when V^T V is singular.
Mat3x4 pseudo_left_inverse(const Mat4x3& v,
                           double threshold = kSingularityThreshold);

}  // namespace ledloc
