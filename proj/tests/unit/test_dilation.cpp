#include "schur_dilate/dilation.hpp"

#include <cmath>
#include <numbers>

#include "test_util.hpp"

using namespace schur_dilate;
using namespace schur_dilate::testing;

namespace {

Povm trine() {
  std::vector<Eigen::VectorXcd> v;
  for (int k = 0; k < 3; ++k) {
    Eigen::VectorXcd x(2);
    const double a = 2.0 * std::numbers::pi * k / 3.0;
    x << std::sqrt(2.0 / 3.0) * std::cos(a), std::sqrt(2.0 / 3.0) * std::sin(a);
    v.push_back(x);
  }
  return povm_from_vectors(v);
}

Povm random_rank_one_povm(Eigen::Index m, Eigen::Index n, Rng& rng) {
  const ComplexMatrix co = random_isometry(n, m, rng).adjoint();  // m x n, M M* = I
  std::vector<Eigen::VectorXcd> v;
  for (Eigen::Index i = 0; i < n; ++i) v.push_back(co.col(i));
  return povm_from_vectors(v);
}

KrausChannel amplitude_damping() { return make_channel({mat2(1, 0, 0, 0.8), mat2(0, 0.6, 0, 0)}); }

KrausChannel random_channel(Eigen::Index n, Eigen::Index m, Eigen::Index r, Rng& rng) {
  const ComplexMatrix v = random_isometry(r * m, n, rng);
  std::vector<ComplexMatrix> k;
  for (Eigen::Index i = 0; i < r; ++i) k.push_back(v.middleRows(i * m, m));
  return make_channel(k);
}

}  // namespace

TEST(Povm, Validation) {
  Eigen::VectorXcd a(2), b(2);
  a << 1, 0;
  b << 0, 0.5;
  EXPECT_ERROR_KIND(povm_from_vectors({a, b}), ErrorKind::NotResolution);
  Povm mixed = make_povm({0.5 * identity(2), 0.5 * identity(2)});
  EXPECT_TRUE(mixed.vectors.empty());
  EXPECT_ERROR_KIND(povm_dilate(mixed), ErrorKind::EffectsNotRankOne);
  // Rank-one effects given as matrices get their vectors extracted.
  const Povm t = trine();
  const Povm back = make_povm(t.effects);
  EXPECT_EQ(back.vectors.size(), 3u);
}

TEST(PovmDilate, BasisPovmIsBlockDiagonal) {
  Eigen::VectorXcd a(2), b(2);
  a << 1, 0;
  b << 0, 1;
  const Povm p = povm_from_vectors({a, b});
  const DilationResult r = povm_dilate(p);
  EXPECT_EQ(r.size(), 4);
  EXPECT_LE(frob(r.unitary.topLeftCorner(2, 2) - identity(2)), 1e-15);
  EXPECT_LE(frob(r.unitary.bottomRightCorner(2, 2) + identity(2)), 1e-15);
  EXPECT_LE(frob(r.unitary.topRightCorner(2, 2)), 1e-15);
  const PovmReport rep = povm_verify(r, p);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.worst(), 1e-12);
}

TEST(PovmDilate, Trine) {
  const Povm p = trine();
  const DilationResult r = povm_dilate(p);
  EXPECT_EQ(r.size(), 5);
  EXPECT_LE(unitarity_defect(r.unitary), 1e-10);
  const PovmReport rep = povm_verify(r, p);
  EXPECT_LE(rep.compression, 1e-10);
  EXPECT_LE(rep.orthogonality, 1e-9);
  EXPECT_TRUE(rep.passed);
}

TEST(PovmDilate, RandomRankOne) {
  Rng rng(71);
  for (int t = 0; t < 30; ++t) {
    const Povm p = random_rank_one_povm(2 + t % 2, 4 + t % 3, rng);
    const PovmReport rep = povm_verify(povm_dilate(p), p);
    EXPECT_LE(rep.compression, 1e-10);
    EXPECT_LE(rep.orthogonality, 1e-9);
    EXPECT_LE(rep.idempotence, 1e-9);
    EXPECT_LE(rep.completeness, 1e-10);
  }
}

TEST(PovmDilate, CorruptedColumnIsFlagged) {
  const Povm p = trine();
  DilationResult r = povm_dilate(p);
  r.unitary(0, 1) += 1e-3;
  const PovmReport rep = povm_verify(r, p);
  EXPECT_FALSE(rep.passed);
  EXPECT_GT(rep.orthogonality, 1e-6);
}

TEST(PovmDilate, FreedomAndPadding) {
  Rng rng(72);
  const Povm p = trine();
  const DilationResult base = povm_dilate(p);
  const Freedom f{random_unitary(3, rng), random_unitary(2, rng)};
  const DilationResult r = povm_dilate(p, f, 4);
  EXPECT_EQ(r.size(), 8);
  const PovmReport rep = povm_verify(r, p);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(frob(r.unitary.topLeftCorner(2, 3) - base.unitary.topLeftCorner(2, 3)), 1e-12);
  EXPECT_ERROR_KIND(povm_dilate(p, Freedom{2.0 * identity(3), identity(2)}), ErrorKind::NotUnitary);
  EXPECT_ERROR_KIND(povm_dilate(p, std::nullopt, 2), ErrorKind::PaddingTooSmall);
}

TEST(ChannelDilate, IdentityChannel) {
  const KrausChannel ch = make_channel({identity(2)});
  EXPECT_TRUE(ch.trace_preserving);
  const DilationResult r = channel_dilate(ch);
  Rng rng(73);
  const ComplexMatrix rho = random_density(2, rng);
  EXPECT_LE(frob(channel_simulate(r, rho) - rho), 1e-15);
  EXPECT_EQ(r.ancilla_dim, 2);
}

TEST(ChannelDilate, AmplitudeDamping) {
  const KrausChannel ch = amplitude_damping();
  const DilationResult r = channel_dilate(ch);
  EXPECT_LE(unitarity_defect(r.unitary), 1e-12);
  EXPECT_EQ(r.size(), 6);  // r m + n = 4 + 2, already a multiple of m
  EXPECT_LE(frob(channel_simulate(r, diag({0, 1})) - diag({0.36, 0.64})), 1e-12);
  Rng rng(74);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix rho = random_density(2, rng);
    EXPECT_LE(frob(channel_simulate(r, rho) - apply_kraus(ch, rho)), 1e-10);
  }
}

TEST(ChannelDilate, RandomChannelsAndPadding) {
  Rng rng(75);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n = 1 + t % 3, m = 1 + (t / 3) % 3, k = 1 + t % 4;
    const Eigen::Index r = std::max<Eigen::Index>(k, (n + m - 1) / m);
    const KrausChannel ch = random_channel(n, m, r, rng);
    ChannelDilateOptions opt;
    if (t % 2) opt.pad_to_ancilla = minimal_ancilla(ch) + 1;
    const DilationResult res = channel_dilate(ch, opt);
    EXPECT_EQ(res.size() % m, 0);
    EXPECT_LE(unitarity_defect(res.unitary), 1e-10);
    for (int s = 0; s < 5; ++s) {
      const ComplexMatrix rho = random_density(n, rng);
      EXPECT_LE(frob(channel_simulate(res, rho) - apply_kraus(ch, rho)), 1e-10);
    }
  }
}

TEST(ChannelDilate, FreedomIsInert) {
  Rng rng(76);
  const KrausChannel ch = random_channel(2, 2, 3, rng);
  const DilationResult base = channel_dilate(ch);
  const ComplexMatrix rho = random_density(2, rng);
  for (int t = 0; t < 10; ++t) {
    ChannelDilateOptions opt;
    opt.freedom = Freedom{random_unitary(2, rng), random_unitary(6, rng)};
    EXPECT_LE(frob(channel_simulate(channel_dilate(ch, opt), rho) - channel_simulate(base, rho)), 1e-10);
  }
}

TEST(ChannelDilate, Errors) {
  const KrausChannel td = make_channel({mat2(1, 0, 0, 0.5)});
  EXPECT_FALSE(td.trace_preserving);
  EXPECT_ERROR_KIND(channel_dilate(td), ErrorKind::NotTracePreserving);
  EXPECT_ERROR_KIND(make_channel({2.0 * identity(2)}), ErrorKind::NotTracePreserving);
  const KrausChannel ch = amplitude_damping();
  ChannelDilateOptions opt;
  opt.pad_to_ancilla = 2;
  EXPECT_ERROR_KIND(channel_dilate(ch, opt), ErrorKind::PaddingTooSmall);
  const DilationResult r = channel_dilate(ch);
  EXPECT_ERROR_KIND(channel_simulate(r, identity(3)), ErrorKind::DimensionMismatch);
  EXPECT_ERROR_KIND(channel_simulate(r, diag({1, -0.5})), ErrorKind::NotState);
  EXPECT_ERROR_KIND(channel_simulate(r, identity(2)), ErrorKind::NotState);
}

TEST(ChannelDilate, TraceDecreasingAbsorbingSector) {
  const KrausChannel td = make_channel({mat2(1, 0, 0, 0.5)});
  ChannelDilateOptions opt;
  opt.allow_trace_decreasing = true;
  const DilationResult r = channel_dilate(td, opt);
  EXPECT_LE(unitarity_defect(r.unitary), 1e-12);
  Rng rng(77);
  const ComplexMatrix rho = random_density(2, rng);
  EXPECT_LE(frob(channel_simulate(r, rho) - apply_kraus(td, rho)), 1e-12);
  // Keeping the absorbing sector restores the lost trace.
  EXPECT_NEAR(channel_simulate(r, rho, false).trace().real(), 1.0, 1e-12);
}
