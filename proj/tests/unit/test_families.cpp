#include "schur_dilate/families.hpp"

#include "schur_dilate/contraction.hpp"
#include "test_util.hpp"

using namespace schur_dilate;
using namespace schur_dilate::testing;

namespace {

ComplexMatrix blk(const ComplexMatrix& a, Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  return a.block(i * n, j * n, n, n);
}

const Family kAll[] = {Family::Toeplitz2,  Family::Subnormal3I,  Family::Subnormal3II,
                       Family::ArrowFirst, Family::ArrowSecond, Family::Span3};

FamilyRequest request(Family f, std::uint64_t seed, Eigen::Index dim = 2) {
  FamilyRequest r;
  r.family = f;
  r.seed = seed;
  r.block_dim = f == Family::Span3 ? 3 : dim;
  return r;
}

}  // namespace

TEST(Families, NamesRoundTrip) {
  for (Family f : kAll) EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_FALSE(parse_family("nope").has_value());
}

TEST(Families, SamplesArePsdHermitianAndDeterministic) {
  for (Family f : kAll) {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const StateFamilySample a = gen_family(request(f, s));
      const StateFamilySample b = gen_family(request(f, s));
      EXPECT_EQ(a.matrix, b.matrix);
      EXPECT_EQ(a.matrix, a.matrix.adjoint().eval()) << family_name(f);
      EXPECT_TRUE(is_psd(a.matrix).psd) << family_name(f) << " seed " << s;
      EXPECT_EQ(a.matrix.rows(), a.block_dim * a.block_count);
    }
  }
}

TEST(Families, Toeplitz2Pattern) {
  const StateFamilySample s = gen_family(request(Family::Toeplitz2, 3));
  EXPECT_EQ(blk(s.matrix, 2, 0, 0), blk(s.matrix, 2, 1, 1));
  Rng rng(61);
  const ComplexMatrix t = random_psd(2, rng);
  ComplexMatrix expected = zeros(4, 4);
  expected.topLeftCorner(2, 2) = t;
  expected.bottomRightCorner(2, 2) = t;
  EXPECT_LE(frob(toeplitz2_from(t, zeros(2, 2)) - expected), 1e-15);
}

TEST(Families, Subnormal3ZeroGamma) {
  Rng rng(62);
  const ComplexMatrix t = random_psd(2, rng);
  const ComplexMatrix a = subnormal3_i_from(t, zeros(2, 2));
  for (auto [i, j] : {std::pair{0, 0}, {0, 2}, {1, 1}, {2, 0}, {2, 2}}) EXPECT_LE(frob(blk(a, 2, i, j) - t), 1e-15);
  for (auto [i, j] : {std::pair{0, 1}, {1, 0}, {1, 2}, {2, 1}}) EXPECT_EQ(frob(blk(a, 2, i, j)), 0.0);
}

TEST(Families, SubnormalPatterns) {
  const StateFamilySample s1 = gen_family(request(Family::Subnormal3I, 4));
  EXPECT_EQ(frob(blk(s1.matrix, 2, 1, 2)), 0.0);
  EXPECT_EQ(blk(s1.matrix, 2, 0, 0), blk(s1.matrix, 2, 2, 2));
  const StateFamilySample s2 = gen_family(request(Family::Subnormal3II, 4));
  EXPECT_EQ(frob(blk(s2.matrix, 2, 0, 1)), 0.0);
}

TEST(Families, ArrowPatterns) {
  FamilyRequest r = request(Family::ArrowFirst, 5);
  r.block_count = 4;
  const StateFamilySample a = gen_family(r);
  EXPECT_EQ(blk(a.matrix, 2, 0, 0), blk(a.matrix, 2, 1, 1));
  EXPECT_EQ(frob(blk(a.matrix, 2, 0, 1)), 0.0);
  EXPECT_EQ(blk(a.matrix, 2, 0, 3), blk(a.matrix, 2, 3, 0));  // Hermitian S_i in symmetric slots
  r.family = Family::ArrowSecond;
  const StateFamilySample b = gen_family(r);
  EXPECT_EQ(blk(b.matrix, 2, 1, 1), blk(b.matrix, 2, 3, 3));
  EXPECT_EQ(frob(blk(b.matrix, 2, 1, 2)), 0.0);
  EXPECT_EQ(blk(b.matrix, 2, 0, 2), blk(b.matrix, 2, 2, 0));
}

TEST(Families, Span3RankOneMembership) {
  // sigma = e e* on C^2 (x) C^m with e = (u-coefficient x, w-coefficient y).
  const ComplexMatrix a = mat2(1.0, 2.0, 2.0, 4.0);  // x x*, x = (1, 2)
  const ComplexMatrix b = mat2(0.5, 1.0, 1.0, 2.0);  // x y* with y = (0.5, 1) (real, so Hermitian)
  const ComplexMatrix c = mat2(0.25, 0.5, 0.5, 1.0);
  const ComplexMatrix rho = span3_embed(1, a, b, c);
  // Block (i, j) = A_ij * z z^T with z = u + (y_i / x_i) w = (1, 1, 0.5).
  Eigen::VectorXcd x(6);
  x << 1.0, 1.0, 0.5, 2.0, 2.0, 1.0;
  EXPECT_LE(frob(rho - x * x.adjoint()), 1e-15);
  // Pattern 1: entries (0,0) = (0,1) = (1,1) in every block.
  const StateFamilySample s = gen_family(request(Family::Span3, 9));
  for (Eigen::Index i = 0; i < s.block_count; ++i) {
    for (Eigen::Index j = 0; j < s.block_count; ++j) {
      const ComplexMatrix q = blk(s.matrix, 3, i, j);
      EXPECT_EQ(q(0, 0), q(0, 1));
      EXPECT_EQ(q(0, 0), q(1, 1));
      EXPECT_EQ(q(0, 2), q(1, 2));
    }
  }
}

TEST(Families, UnsupportedCombinations) {
  FamilyRequest r = request(Family::Toeplitz2, 1);
  r.block_count = 3;
  EXPECT_ERROR_KIND(gen_family(r), ErrorKind::UnsupportedCombination);
  r = request(Family::Span3, 1);
  r.block_dim = 2;
  EXPECT_ERROR_KIND(gen_family(r), ErrorKind::UnsupportedCombination);
  r = request(Family::Span3, 1);
  r.pattern = 4;
  EXPECT_ERROR_KIND(gen_family(r), ErrorKind::UnsupportedCombination);
  r = request(Family::ArrowFirst, 1);
  r.block_count = 1;
  EXPECT_ERROR_KIND(gen_family(r), ErrorKind::UnsupportedCombination);
}

TEST(Witness, IdentityAndTransposePass) {
  const MatrixLinearMap id = map_from_kraus_pairs({{identity(2), identity(2)}});
  const MatrixLinearMap tr = builtin_witness("transpose", 2);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const StateFamilySample x = gen_family(request(Family::Toeplitz2, s));
    EXPECT_TRUE(witness_check(id, x).passed);
    EXPECT_TRUE(witness_check(tr, x).passed) << "seed " << s;
  }
}

TEST(Witness, NegativeControls) {
  const WitnessResult bell = witness_check(builtin_witness("transpose", 2), bell_projector(), 2);
  EXPECT_FALSE(bell.passed);
  EXPECT_NEAR(bell.min_eig, -0.5, 1e-10);
  EXPECT_FALSE(witness_check(builtin_witness("reduction", 2), bell_projector(), 2).passed);
  const ComplexMatrix h = horodecki_state(3.5);
  EXPECT_TRUE(is_psd(apply_blockwise(builtin_witness("transpose", 3), h, 3)).psd);  // PPT
  const WitnessResult c = witness_check(builtin_witness("choi3", 3), h, 3);
  EXPECT_FALSE(c.passed);
  EXPECT_NEAR(c.min_eig, -1.0 / 42.0, 1e-9);
}
