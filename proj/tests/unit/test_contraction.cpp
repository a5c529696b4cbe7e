#include "schur_dilate/contraction.hpp"

#include "test_util.hpp"

using namespace schur_dilate;
using namespace schur_dilate::testing;

TEST(Defects, ZeroContraction) {
  const DefectPair d = defects(zeros(3, 2));
  EXPECT_LE(frob(d.d_t - identity(2)), 1e-15);
  EXPECT_LE(frob(d.d_t_star - identity(3)), 1e-15);
}

TEST(Defects, ScalarPythagoras) {
  ComplexMatrix t(1, 1);
  t(0, 0) = 0.6;
  const DefectPair d = defects(t);
  EXPECT_NEAR(d.d_t(0, 0).real(), 0.8, 1e-15);
  EXPECT_NEAR(d.d_t_star(0, 0).real(), 0.8, 1e-15);
}

TEST(Defects, DefinitionAndIntertwining) {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index r = 1 + t % 4, c = 1 + (t / 4) % 4;
    const ComplexMatrix x = random_contraction(r, c, 0.9, rng);
    const DefectPair d = defects(x);
    EXPECT_LE(frob(d.d_t * d.d_t + x.adjoint() * x - identity(c)), 1e-10);
    EXPECT_LE(frob(d.d_t_star * d.d_t_star + x * x.adjoint() - identity(r)), 1e-10);
    EXPECT_LE(frob(x * d.d_t - d.d_t_star * x), 1e-10);
    EXPECT_TRUE(is_psd(d.d_t).psd);
    EXPECT_TRUE(is_psd(d.d_t_star).psd);
  }
}

TEST(Defects, BoundaryAndRejection) {
  Rng rng(22);
  const ComplexMatrix u = random_unitary(3, rng);
  EXPECT_LE(frob(defects(u).d_t), 1e-7);
  EXPECT_ERROR_KIND(defects(1.01 * u), ErrorKind::NotContraction);
}

TEST(Julia, Examples) {
  ComplexMatrix swap = zeros(4, 4);
  swap.topRightCorner(2, 2) = identity(2);
  swap.bottomLeftCorner(2, 2) = identity(2);
  EXPECT_LE(frob(julia(zeros(2, 2)) - swap), 1e-15);
  ComplexMatrix t(1, 1);
  t(0, 0) = 0.6;
  EXPECT_LE(frob(julia(t) - mat2(0.6, 0.8, 0.8, -0.6)), 1e-15);
}

TEST(Julia, UnitaryOnRectangular) {
  Rng rng(23);
  for (Eigen::Index r = 1; r <= 6; ++r) {
    for (Eigen::Index c = 1; c <= 6; ++c) {
      const ComplexMatrix x = random_contraction(r, c, uniform01(rng), rng);
      const ComplexMatrix j = julia(x);
      ASSERT_EQ(j.rows(), r + c);
      EXPECT_LE(frob(j.adjoint() * j - identity(r + c)), 1e-10);
      EXPECT_EQ(j.topLeftCorner(r, c), x);
    }
  }
  EXPECT_ERROR_KIND(julia(2.0 * identity(2)), ErrorKind::NotContraction);
}

TEST(SolveContractionFactor, IdentityX) {
  Rng rng(24);
  const ComplexMatrix y = random_contraction(3, 3, 0.8, rng);
  EXPECT_LE(frob(solve_contraction_factor(identity(3), y) - y), 1e-12);
}

TEST(SolveContractionFactor, EqualSidesGiveRangeProjector) {
  Rng rng(25);
  const ComplexMatrix x = random_ginibre(4, 2, rng);
  const ComplexMatrix g = solve_contraction_factor(x, x);
  EXPECT_LE(frob(g - x * pinv(x)), 1e-10);
  EXPECT_LE(frob(g * g - g), 1e-10);
}

TEST(SolveContractionFactor, ConstructionOracle) {
  Rng rng(26);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix c = random_contraction(3, 4, uniform01(rng), rng);
    // Rank-deficient X half the time.
    const ComplexMatrix x = t % 2 ? random_ginibre(4, 3, rng) : random_ginibre(4, 1, rng) * random_ginibre(1, 3, rng);
    const ComplexMatrix y = c * x;
    const ComplexMatrix g = solve_contraction_factor(x, y);
    EXPECT_LE(frob(g * x - y), 1e-9 * std::max(1.0, frob(y)));
    EXPECT_LE(op_norm(g), 1.0 + 1e-9);
    EXPECT_LE(frob(g * (identity(4) - x * pinv(x))), 1e-9);
  }
}

TEST(SolveContractionFactor, RejectsDominatingY) {
  EXPECT_ERROR_KIND(solve_contraction_factor(identity(2), 2.0 * identity(2)), ErrorKind::NoFactor);
}

TEST(SolveLeftContractionFactor, ConstructionOracle) {
  Rng rng(27);
  const ComplexMatrix c = random_contraction(3, 2, 0.7, rng);
  const ComplexMatrix x = random_ginibre(4, 3, rng);
  const ComplexMatrix g = solve_left_contraction_factor(x, x * c);
  EXPECT_LE(frob(x * g - x * c), 1e-9 * frob(x * c));
  EXPECT_LE(op_norm(g), 1.0 + 1e-9);
}

TEST(SolvePartialIsometry, Examples) {
  EXPECT_LE(frob(solve_partial_isometry(identity(2), identity(2)).v - identity(2)), 1e-15);
  ComplexMatrix x = zeros(2, 1), y = zeros(2, 1);
  x(0, 0) = 1.0;
  y(1, 0) = 1.0;
  const PartialIsometryFactor f = solve_partial_isometry(x, y);
  EXPECT_LE(frob(f.v - mat2(0, 0, 1, 0)), 1e-15);
  EXPECT_EQ(f.initial_rank, 1);
}

TEST(SolvePartialIsometry, SquareRootFreedom) {
  Rng rng(28);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix b = t % 3 ? random_ginibre(3, 3, rng) : random_ginibre(3, 1, rng) * random_ginibre(1, 3, rng);
    const ComplexMatrix x = sqrt_psd(b.adjoint() * b);
    const PartialIsometryFactor f = solve_partial_isometry(x, b);
    EXPECT_LE(frob(f.v * x - b), 1e-9 * std::max(1.0, frob(b)));
    EXPECT_LE(frob(f.v * f.v.adjoint() * f.v - f.v), 1e-9);
  }
  EXPECT_ERROR_KIND(solve_partial_isometry(identity(2), 0.5 * identity(2)), ErrorKind::NotEquinormed);
}
