#include "schur_dilate/maps.hpp"

#include "schur_dilate/families.hpp"
#include "test_util.hpp"

using namespace schur_dilate;
using namespace schur_dilate::testing;

namespace {

ComplexMatrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix e = zeros(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

TEST(KrausPairs, IdentityMap) {
  const MatrixLinearMap phi = map_from_kraus_pairs({{identity(3), identity(3)}});
  Rng rng(51);
  const ComplexMatrix x = random_ginibre(3, 3, rng);
  EXPECT_LE(frob(phi.apply(x) - x), 1e-15);
  EXPECT_TRUE(phi.flags().unital);
  EXPECT_TRUE(phi.flags().trace_preserving);
  EXPECT_TRUE(phi.flags().positive_declared);
  EXPECT_LE(frob(phi.action() - identity(9)), 1e-15);
}

TEST(KrausPairs, TransposeFromMatrixUnits) {
  // X^T = sum_ij E_ij X E_ij, i.e. pairs (E_ij, E_ji) in the A X B* form.
  std::vector<KrausPair> pairs;
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) pairs.emplace_back(unit(3, i, j), unit(3, j, i));
  }
  const MatrixLinearMap phi = map_from_kraus_pairs(pairs);
  Rng rng(52);
  const ComplexMatrix x = random_ginibre(3, 3, rng);
  EXPECT_LE(frob(phi.apply(x) - x.transpose()), 1e-14);
  EXPECT_FALSE(phi.flags().positive_declared);  // transpose is not CP
  EXPECT_TRUE(phi.flags().hermiticity_preserving);
}

TEST(KrausPairs, AmplitudeDampingTracePreserving) {
  ComplexMatrix e0 = mat2(1, 0, 0, 0.8), e1 = mat2(0, 0.6, 0, 0);
  const MatrixLinearMap phi = map_from_kraus_pairs({{e0, e0}, {e1, e1}});
  EXPECT_TRUE(phi.flags().trace_preserving);
  EXPECT_FALSE(phi.flags().unital);
  EXPECT_ERROR_KIND(map_from_kraus_pairs({{identity(2), identity(3)}}), ErrorKind::DimensionMismatch);
}

TEST(Builtin, Examples) {
  const MatrixLinearMap t = builtin_witness("transpose", 2);
  EXPECT_LE(frob(t.apply(identity(2)) - identity(2)), 1e-15);
  const MatrixLinearMap r = builtin_witness("reduction", 2);
  EXPECT_LE(frob(r.apply(diag({1, 0})) - diag({0, 1})), 1e-15);
  EXPECT_ERROR_KIND(builtin_witness("nope", 2), ErrorKind::UnknownName);
  for (const auto& name : builtin_witness_names()) {
    const MatrixLinearMap phi = builtin_witness(name, 3);
    EXPECT_TRUE(phi.flags().positive_declared) << name;
    EXPECT_FALSE(is_psd(hermitian_part(phi.choi())).psd) << name << " should not be CP";
    Rng rng(53);
    const ComplexMatrix x = random_ginibre(3, 3, rng);
    EXPECT_LE(frob(phi.apply(x.adjoint()) - phi.apply(x).adjoint()), 1e-14) << name;
  }
}

TEST(Builtin, BellPartialTranspose) {
  const ComplexMatrix out = apply_blockwise(builtin_witness("transpose", 2), bell_projector(), 2);
  EXPECT_NEAR(is_psd(out).min_eigenvalue, -0.5, 1e-12);
}

TEST(Builtin, Choi3OnPositiveInputs) {
  const MatrixLinearMap phi = builtin_witness("choi3", 3);
  Rng rng(54);
  for (int t = 0; t < 200; ++t) EXPECT_TRUE(is_psd(hermitian_part(phi.apply(random_psd(3, rng)))).psd);
}

TEST(ApplyBlockwise, Basics) {
  Rng rng(55);
  const ComplexMatrix a = random_ginibre(6, 6, rng);
  const MatrixLinearMap id = map_from_kraus_pairs({{identity(2), identity(2)}});
  EXPECT_LE(frob(apply_blockwise(id, a, 3) - a), 1e-15);
  const MatrixLinearMap t = builtin_witness("transpose", 6);
  EXPECT_LE(frob(apply_blockwise(t, a, 1) - a.transpose()), 1e-15);
  const ComplexMatrix pt = apply_blockwise(builtin_witness("transpose", 2), a, 3);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      for (Eigen::Index p = 0; p < 2; ++p) {
        for (Eigen::Index q = 0; q < 2; ++q) EXPECT_EQ(pt(2 * i + p, 2 * j + q), a(2 * i + q, 2 * j + p));
      }
    }
  }
  EXPECT_ERROR_KIND(apply_blockwise(t, a, 2), ErrorKind::DimensionMismatch);
}

TEST(ApplyBlockwise, Linear) {
  Rng rng(56);
  const MatrixLinearMap phi = builtin_witness("reduction", 3);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_ginibre(6, 6, rng), b = random_ginibre(6, 6, rng);
    const Complex s(0.4, 1.1);
    EXPECT_LE(frob(apply_blockwise(phi, a + s * b, 2) - apply_blockwise(phi, a, 2) - s * apply_blockwise(phi, b, 2)),
              1e-12 * frob(a + b));
  }
}

TEST(InequalitySuite, TransposeAndReduction) {
  for (const char* name : {"transpose", "reduction-unital"}) {
    const InequalityReport rep = positivity_inequality_suite(builtin_witness(name, 3), 100, 7);
    EXPECT_TRUE(rep.passed) << name << " worst " << rep.worst();
    EXPECT_GE(rep.worst(), -1e-9);
  }
  EXPECT_ERROR_KIND(positivity_inequality_suite(builtin_witness("reduction", 3), 10, 1), ErrorKind::NotUnital);
}

TEST(InequalitySuite, ZeroContractionIsBoundary) {
  // G = 0: D_{G*} = I so I - Phi(0) - Phi(I)^2 = 0 for a unital map.
  const MatrixLinearMap phi = builtin_witness("transpose", 2);
  const ComplexMatrix pd = phi.apply(identity(2));
  EXPECT_LE(frob(identity(2) - phi.apply(zeros(2, 2)) - pd * pd), 1e-15);
}
