#include <doctest.h>

#include <cmath>

#include "circv/rng.hpp"
#include "circv/tensor3/symmat3.hpp"
#include "circv/tensor3/tensors.hpp"

using namespace circv;
using namespace circv::tensor3;

TEST_CASE("circulant layout") {
  const SymMat3 m = circulant(3, 1);
  const Mat3 expected = (Mat3() << 3, 1, 1, 1, 3, 1, 1, 1, 3).finished();
  CHECK(m.mat() == expected);
  CHECK(circulant(2, 4).mat() ==
        (Mat3() << 2, 4, 4, 4, 2, 4, 4, 4, 2).finished());
  CHECK(circulant(1, 0).mat() == Mat3::Identity());
}

TEST_CASE("inverse of circulant(3,1)") {
  // oracle: (2I + J)(0.5 I - 0.1 J) = I by direct multiplication
  const Mat3 J = Mat3::Ones();
  const Mat3 I = Mat3::Identity();
  const Mat3 product = (2 * I + J) * (0.5 * I - 0.1 * J);
  REQUIRE((product - I).cwiseAbs().maxCoeff() < 1e-15);

  const SymMat3 inv = invert(circulant(3, 1));
  CHECK((inv.mat() - circulant(0.4, -0.1).mat()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((circulant(3, 1).mat() * inv.mat() - I).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(invert(SymMat3::identity()).mat() == Mat3::Identity());
}

TEST_CASE("singular circulant is rejected with its determinant") {
  try {
    invert(circulant(2, 2));
    FAIL("expected a singularity error");
  } catch (const SingularMatrixError& e) {
    CHECK(std::abs(e.determinant) < 1e-12);
  }
  CHECK_THROWS_AS(invert(SymMat3::zero()), SingularMatrixError);
}

TEST_CASE("circulant matrices commute exactly") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const SymMat3 a = circulant(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const SymMat3 b = circulant(rng.uniform(-2, 2), rng.uniform(-2, 2));
    CHECK(circulant_product(a, b).mat() == circulant_product(b, a).mat());
    // and the parametrized product is the matrix product
    CHECK((circulant_product(a, b).mat() - a.mat() * b.mat())
              .cwiseAbs()
              .maxCoeff() < 1e-13);
  }
}

TEST_CASE("circulant eigenstructure on fixed vectors") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double d = rng.uniform(-3, 3);
    const double o = rng.uniform(-3, 3);
    const Mat3 m = circulant(d, o).mat();
    const Vec3 ones(1, 1, 1);
    CHECK((m * ones - (d + 2 * o) * ones).cwiseAbs().maxCoeff() < 1e-13);
    for (const Vec3& v : {Vec3(1, -1, 0), Vec3(1, 1, -2)}) {
      CHECK((m * v - (d - o) * v).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("trace of a product is cyclic") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    Mat3 a, b;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a(i, j) = rng.uniform(-1, 1);
        b(i, j) = rng.uniform(-1, 1);
      }
    CHECK(std::abs((a * b).trace() - (b * a).trace()) < 1e-13);
  }
}

TEST_CASE("lowering the curvature index") {
  Rank4 zero(Variance::Mixed);
  CHECK(lower_riemann(zero, circulant(3, 1)).max_abs() == 0.0);

  Rank4 r(Variance::Mixed);
  SplitMix64 rng(17);
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r(h, i, j, k) = rng.uniform(-1, 1);

  // with g = identity the entries are just repositioned
  const Rank4 low_id = lower_riemann(r, SymMat3::identity());
  CHECK((low_id - Rank4(Variance::Lower)).max_abs() ==
        doctest::Approx(r.max_abs()));
  for (int h = 0; h < 3; ++h) CHECK(low_id(h, 0, 1, 2) == r(h, 0, 1, 2));

  // lowering then raising restores the input
  const SymMat3 g = circulant(2.7, 0.4);
  const Rank4 rt = raise_riemann(lower_riemann(r, g), invert(g));
  CHECK((rt - r).max_abs() < 1e-12);

  CHECK_THROWS_AS(lower_riemann(low_id, g), VarianceError);
  CHECK_THROWS_AS(raise_riemann(r, g), VarianceError);
}

TEST_CASE("symmetry defects") {
  const Rank4 zero(Variance::Lower);
  const SymmetryDefects z = symmetry_defects(zero);
  CHECK(z.antisym_first_pair == 0.0);
  CHECK(z.antisym_last_pair == 0.0);
  CHECK(z.pair_sym == 0.0);

  Rank4 single(Variance::Lower);
  single(0, 0, 0, 0) = 1.0;
  const SymmetryDefects s = symmetry_defects(single);
  CHECK(s.antisym_first_pair == doctest::Approx(1.0));
  CHECK(s.antisym_last_pair == doctest::Approx(1.0));
  CHECK(s.pair_sym == doctest::Approx(0.0));
}
