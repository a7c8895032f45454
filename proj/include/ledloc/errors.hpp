#pragma once

#include <stdexcept>
#include <string>

namespace ledloc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 2x2 determinant magnitude at or below the singularity threshold.
struct SingularMatrix : Error {
  using Error::Error;
};

// V^T V not invertible; the PD normal matrix does not span 3-space.
struct RankDeficient : Error {
  using Error::Error;
};

struct InvalidGeometry : Error {
  using Error::Error;
};

// LED coincides with an estimator position.
struct CoincidentPoints : Error {
  using Error::Error;
};

// Parallel or near-parallel rays, or estimators too close together.
struct DegenerateGeometry : Error {
  using Error::Error;
};

struct NegativeTrace : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct AllTrialsDegenerate : Error {
  using Error::Error;
};

}  // namespace ledloc
