#include "doctest.h"

#include <random>

#include "ledloc/aoa.hpp"
#include "ledloc/errors.hpp"
#include "ledloc/linalg.hpp"

using namespace ledloc;

TEST_CASE("mat2_inverse: identity stays identity") {
  const Mat2 inv = mat2_inverse(Mat2::Identity());
  CHECK((inv - Mat2::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("mat2_inverse: diagonal case") {
  Mat2 m;
  m << 1.0, 0.0, 0.0, 2.0;
  const Mat2 inv = mat2_inverse(m);
  CHECK(inv(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(inv(1, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(inv(0, 1) == 0.0);
  CHECK(inv(1, 0) == 0.0);
}

TEST_CASE("mat2_inverse: adjugate hand evaluation") {
  Mat2 m;
  m << 1.0, 0.5, 0.5, 1.0;
  const Mat2 inv = mat2_inverse(m);
  CHECK(inv(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(inv(0, 1) == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
  CHECK(inv(1, 0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
  CHECK(inv(1, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("mat2_inverse: singular input refused") {
  Mat2 m;
  m << 1.0, 1.0, 1.0, 1.0;
  CHECK_THROWS_AS(mat2_inverse(m), SingularMatrix);

  // determinant just below the default cutoff
  Mat2 tiny;
  tiny << 1e-7, 0.0, 0.0, 1e-6;
  CHECK_THROWS_AS(mat2_inverse(tiny), SingularMatrix);
  CHECK_NOTHROW(mat2_inverse(tiny, 1e-14));
}

TEST_CASE("mat2_inverse: round-trip on random well-conditioned matrices") {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> entry(-2.0, 2.0);
  int tested = 0;
  while (tested < 500) {
    Mat2 m;
    m << entry(gen), entry(gen), entry(gen), entry(gen);
    if (std::abs(m.determinant()) < 1e-2) continue;
    const Mat2 inv = mat2_inverse(m);
    CHECK((m * inv - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((inv * m - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    ++tested;
  }
}

TEST_CASE("pseudo_left_inverse: orthonormal rows plus duplicate") {
  Mat4x3 v;
  v << 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1;
  const Mat3x4 left = pseudo_left_inverse(v);
  CHECK(((left * v) - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pseudo_left_inverse: the optimal PD matrix inverts to (3/4) V^T") {
  const Mat4x3 v = optimal_normals();
  const Mat3x4 left = pseudo_left_inverse(v);
  CHECK((left - 0.75 * v.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(((left * v) - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pseudo_left_inverse: scaling the input halves the inverse") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  Mat4x3 v;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 3; ++c) v(r, c) = entry(gen);
  const Mat3x4 left = pseudo_left_inverse(v);
  const Mat3x4 left_scaled = pseudo_left_inverse(Mat4x3(2.0 * v));
  CHECK((left_scaled - 0.5 * left).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pseudo_left_inverse: rank-deficient input refused") {
  Mat4x3 v;
  v << 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0;
  CHECK_THROWS_AS(pseudo_left_inverse(v), RankDeficient);

  Mat4x3 planar;  // rows span only the xy plane
  planar << 1, 0, 0, 0, 1, 0, 1, 1, 0, 1, -1, 0;
  CHECK_THROWS_AS(pseudo_left_inverse(planar), RankDeficient);
}

TEST_CASE("pseudo_left_inverse: left-identity property on random full-rank "
          "inputs") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  int tested = 0;
  while (tested < 200) {
    Mat4x3 v;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 3; ++c) v(r, c) = entry(gen);
    const Mat3 gram = v.transpose() * v;
    if (std::abs(gram.determinant()) < 1e-3) continue;
    const Mat3x4 left = pseudo_left_inverse(v);
    CHECK(((left * v) - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    ++tested;
  }
}

TEST_CASE("optimal PD matrix gram identity") {
  const Mat4x3 v = optimal_normals();
  const Mat3 gram = v.transpose() * v;
  CHECK((gram - (4.0 / 3.0) * Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}
