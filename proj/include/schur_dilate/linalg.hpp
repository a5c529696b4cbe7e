#pragma once

// Dense complex kernel shared by every other module.
//
// Matrices are column-major Eigen::MatrixXcd. Tensor products put the FIRST
// factor on the slow (outer) index: kron(A, B) has blocks A(i, j) * B, so an
// ancilla written first occupies the block index and the system the index
// inside each block.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "schur_dilate/error.hpp"

namespace schur_dilate {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

struct Tolerances {
  /// Relative eigenvalue slack for positivity and Hermiticity checks.
  double psd_tol = 1e-10;
  /// Absolute singular-value cutoff for pinv; <= 0 selects
  /// max(rows, cols) * eps * sigma_max.
  double rank_tol = 0.0;
  /// Frobenius tolerance for parametrize/reconstruct round trips.
  double recon_tol = 1e-8;
  /// Extracted contractions with norm in (1, 1 + slack] are clipped to 1.
  double contraction_slack = 1e-9;

  void validate() const;
};

struct HermEig {
  RealVector values;     // descending
  ComplexMatrix vectors;  // unitary, columns match values
};

struct PsdCheck {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

/// Reads SCHUR_DILATE_TOL (psd_tol override) on top of the defaults.
Tolerances tolerances_from_env();

ComplexMatrix identity(Eigen::Index n);
ComplexMatrix zeros(Eigen::Index rows, Eigen::Index cols);

bool is_finite(const ComplexMatrix& a);
bool is_square(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double rel_tol);
void require_hermitian(const ComplexMatrix& a, double rel_tol, const char* what);

/// Largest singular value.
double op_norm(const ComplexMatrix& a);
RealVector singular_values(const ComplexMatrix& a);

HermEig herm_eig(const ComplexMatrix& a, const Tolerances& tol = {});
ComplexMatrix sqrt_psd(const ComplexMatrix& a, const Tolerances& tol = {});
ComplexMatrix pinv(const ComplexMatrix& a, const Tolerances& tol = {});
PsdCheck is_psd(const ComplexMatrix& a, const Tolerances& tol = {});

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// Traces out the first (outer) factor of a (k*n)x(k*n) matrix.
ComplexMatrix ptrace_first(const ComplexMatrix& x, Eigen::Index k, Eigen::Index n);

/// Unitary polar factor W of a square matrix, a = W |a|.
ComplexMatrix polar_unitary(const ComplexMatrix& a);
/// Clips singular values above 1 down to 1. Throws NotContraction when the
/// norm exceeds 1 + slack.
ComplexMatrix clip_to_contraction(const ComplexMatrix& a, double slack);

/// Block (i, j) of a matrix partitioned by the given row/column sizes.
ComplexMatrix block_of(const ComplexMatrix& a, const std::vector<Eigen::Index>& row_dims,
                       const std::vector<Eigen::Index>& col_dims, std::size_t i, std::size_t j);
Eigen::Index offset_of(const std::vector<Eigen::Index>& dims, std::size_t i);
Eigen::Index total_of(const std::vector<Eigen::Index>& dims);

ComplexMatrix hermitian_part(const ComplexMatrix& a);
/// Copies the upper triangle onto the lower one (conjugated) and zeroes the
/// imaginary part of the diagonal, so the result is bit-exactly Hermitian.
ComplexMatrix make_exactly_hermitian(const ComplexMatrix& a);

double unitarity_defect(const ComplexMatrix& u);

}  // namespace schur_dilate
