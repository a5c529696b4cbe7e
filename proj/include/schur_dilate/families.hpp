#pragma once

// Structured positive block matrices on which every positive map acts
// positively, their seeded generators, and the witness check.
//
// Block layout follows kron(): block (i, j) of a k x k block matrix with
// n x n blocks is the (i, j) entry of the outer C^{k x k} factor.

#include <cstdint>
#include <optional>
#include <string>

#include "schur_dilate/linalg.hpp"
#include "schur_dilate/maps.hpp"

namespace schur_dilate {

enum class Family {
  Toeplitz2,     // [[T, S], [S*, T]]
  Subnormal3I,   // 3x3, G12 normal, G23 = 0, G13 = I
  Subnormal3II,  // 3x3, G23 normal, G12 = 0, G13 = I
  ArrowFirst,    // T on the leading diagonal, R last, Hermitian S_i in the last row/column
  ArrowSecond,   // T first, R on the trailing diagonal, Hermitian S_i in the first row/column
  Span3,         // C^{m x m} (x) span of a 3x3 pattern
};

std::string family_name(Family f);
std::optional<Family> parse_family(const std::string& name);

struct FamilyRequest {
  Family family = Family::Toeplitz2;
  Eigen::Index block_dim = 2;
  /// 0 selects the family's fixed or default count.
  Eigen::Index block_count = 0;
  /// Span3 only: 1, 2 or 3.
  int pattern = 1;
  std::uint64_t seed = 0;
};

struct StateFamilySample {
  Family family = Family::Toeplitz2;
  int pattern = 0;
  ComplexMatrix matrix;
  Eigen::Index block_dim = 0;
  Eigen::Index block_count = 0;
  std::uint64_t seed = 0;
};

StateFamilySample gen_family(const FamilyRequest& request, const Tolerances& tol = {});

// Deterministic builders behind the generator. T is PSD, G a contraction.
ComplexMatrix toeplitz2_from(const ComplexMatrix& t, const ComplexMatrix& gamma, const Tolerances& tol = {});
ComplexMatrix subnormal3_i_from(const ComplexMatrix& t, const ComplexMatrix& gamma, const Tolerances& tol = {});
ComplexMatrix subnormal3_ii_from(const ComplexMatrix& t, const ComplexMatrix& gamma, const Tolerances& tol = {});
/// Block (i, j) = a_ij u u^T + b_ij (u w^T + w u^T) + c_ij w w^T for the
/// pattern's fixed real pair (u, w); a, b, c are m x m.
ComplexMatrix span3_embed(int pattern, const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c);

struct WitnessResult {
  bool passed = false;
  double min_eig = 0.0;
};

WitnessResult witness_check(const MatrixLinearMap& phi, const ComplexMatrix& matrix, Eigen::Index block_count,
                            const Tolerances& tol = {});
WitnessResult witness_check(const MatrixLinearMap& phi, const StateFamilySample& sample, const Tolerances& tol = {});

/// Projector onto (|00> + |11>)/sqrt(2), block_dim 2, block_count 2.
ComplexMatrix bell_projector();
/// Horodecki 3x3 state 2/7 P+ + a/7 s+ + (5-a)/7 s-; PPT and entangled for
/// 3 < a <= 4, detected by the Choi map.
ComplexMatrix horodecki_state(double a);

}  // namespace schur_dilate
