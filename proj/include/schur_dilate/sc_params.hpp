#pragma once

// Schur-Constantinescu parameters of row, column and matrix contractions and
// of positive block matrices.
//
// Row contraction T = [T_1 ... T_n]:
//   T_k = D_{G_1*} ... D_{G_{k-1}*} G_k
// Column contraction T = [T_1; ...; T_n]:
//   T_k = G_k D_{G_{k-1}} ... D_{G_1}
// Matrix contraction (block grid G[i][j]): block column j is
//   F_1 ... F_{j-1} C_j
// where C_j is the column contraction with parameters G[0][j] .. G[n-1][j]
// and F_l is the lower-triangular factor of I - C_l C_l* returned by
// defect_factors(). For a 2x2 grid this gives
//   [[G11,            D_{G11*} G12                                ],
//    [G21 D_{G11},   -G21 G11* G12 + D_{G21*} G22 D_{G12}         ]].
// Positive block matrix A: L_ii = A_ii^{1/2}, and the strictly upper grid
// G[i][j] holds the row contraction R_i (parameters G[i][i+1..n-1]) with
//   [A_{i,i+1} ... A_{i,n-1}] = L_ii R_i L_{i+1},
// where L_{i+1} is the block-upper-triangular Cholesky factor of the
// trailing principal submatrix.

#include <cstddef>
#include <vector>

#include "schur_dilate/linalg.hpp"

namespace schur_dilate {

struct BlockShape {
  std::vector<Eigen::Index> row_dims;
  std::vector<Eigen::Index> col_dims;

  Eigen::Index rows() const { return total_of(row_dims); }
  Eigen::Index cols() const { return total_of(col_dims); }
  void validate() const;
  bool operator==(const BlockShape&) const = default;

  static BlockShape square(std::vector<Eigen::Index> dims) { return {dims, dims}; }
};

enum class Orientation { Row, Column };

struct RowColParams {
  Orientation orientation = Orientation::Row;
  std::vector<ComplexMatrix> gammas;
  BlockShape shape;
};

struct MatrixContractionParams {
  /// gammas[i][j]: block row i, block column j.
  std::vector<std::vector<ComplexMatrix>> gammas;
  BlockShape shape;
};

struct PositiveSCParams {
  std::vector<ComplexMatrix> diag_roots;
  /// n x n grid; only entries with i < j are meaningful.
  std::vector<std::vector<ComplexMatrix>> gammas;
  BlockShape shape;

  std::size_t block_count() const { return diag_roots.size(); }
  /// Row contraction parameters of R_i (blocks i+1 .. n-1).
  RowColParams row_params(std::size_t i) const;
};

/// Factors with d_t * d_t^* = I - T*T and d_t_star * d_t_star^* = I - TT*.
struct DefectFactors {
  ComplexMatrix d_t;
  ComplexMatrix d_t_star;
};

RowColParams row_parametrize(const ComplexMatrix& t, const BlockShape& shape, const Tolerances& tol = {});
ComplexMatrix row_reconstruct(const RowColParams& params, const Tolerances& tol = {});
RowColParams col_parametrize(const ComplexMatrix& t, const BlockShape& shape, const Tolerances& tol = {});
ComplexMatrix col_reconstruct(const RowColParams& params, const Tolerances& tol = {});
ComplexMatrix reconstruct(const RowColParams& params, const Tolerances& tol = {});

/// Row: d_t is the block-lower-triangular factor with diagonal D_{G_i} and
/// entries -G_i* D_{G_{i-1}*} ... D_{G_{j+1}*} G_j; d_t_star = D_{G_1*} ... D_{G_n*}.
/// Column: the mirror image (d_t = D_{G_1} ... D_{G_n}, d_t_star lower-triangular).
DefectFactors defect_factors(const RowColParams& params, const Tolerances& tol = {});

MatrixContractionParams matrix_parametrize(const ComplexMatrix& t, const BlockShape& shape,
                                           const Tolerances& tol = {});
ComplexMatrix matrix_reconstruct(const MatrixContractionParams& params, const Tolerances& tol = {});

/// Explicit 2x2 form from four contractions (block positions as named).
ComplexMatrix two_by_two_closed_form(const ComplexMatrix& g11, const ComplexMatrix& g12,
                                     const ComplexMatrix& g21, const ComplexMatrix& g22,
                                     const Tolerances& tol = {});
/// Block-lower-triangular factors of I - T*T and I - TT* for a 2x2 grid.
DefectFactors matrix_defects_2x2(const MatrixContractionParams& params, const Tolerances& tol = {});

struct UnitaryFactors {
  ComplexMatrix gamma1;  // the (1,1) block, a contraction
  ComplexMatrix gamma2;  // unitary
  ComplexMatrix gamma3;  // unitary
};

/// U = diag(I, G3) J(G1) diag(I, G2) for a unitary whose off-diagonal blocks
/// are square.
UnitaryFactors unitary_factorize(const ComplexMatrix& u, const BlockShape& shape, const Tolerances& tol = {});
ComplexMatrix unitary_assemble(const UnitaryFactors& f, const Tolerances& tol = {});

PositiveSCParams psd_parametrize(const ComplexMatrix& a, const BlockShape& shape, const Tolerances& tol = {});
ComplexMatrix psd_reconstruct(const PositiveSCParams& params, const Tolerances& tol = {});
/// Block-upper-triangular L with L* L = psd_reconstruct(params).
ComplexMatrix psd_cholesky(const PositiveSCParams& params, const Tolerances& tol = {});

/// Parameters of M (x) B*B from the scalar parameters of M.
PositiveSCParams tensor_sc(const PositiveSCParams& scalar_params, const ComplexMatrix& b,
                           const Tolerances& tol = {});

/// G L where L = psd_cholesky(a_params) and G = matrix_reconstruct(gamma_params).
ComplexMatrix dominated_factor(const PositiveSCParams& a_params, const MatrixContractionParams& gamma_params,
                               const Tolerances& tol = {});

}  // namespace schur_dilate
