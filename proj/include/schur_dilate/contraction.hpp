#pragma once

#include "schur_dilate/linalg.hpp"

namespace schur_dilate {

/// D_T = (I - T*T)^{1/2} and D_{T*} = (I - TT*)^{1/2}.
struct DefectPair {
  ComplexMatrix d_t;       // cols(T) x cols(T)
  ComplexMatrix d_t_star;  // rows(T) x rows(T)
};

struct PartialIsometryFactor {
  ComplexMatrix v;
  Eigen::Index initial_rank = 0;
};

DefectPair defects(const ComplexMatrix& t, const Tolerances& tol = {});

/// Julia unitary [[T, D_{T*}], [D_T, -T*]], size (rows + cols).
ComplexMatrix julia(const ComplexMatrix& t, const Tolerances& tol = {});

/// Contraction G with G X = Y, vanishing on (Ran X)^perp. Requires
/// Y*Y <= X*X up to psd_tol; throws NoFactor otherwise.
ComplexMatrix solve_contraction_factor(const ComplexMatrix& x, const ComplexMatrix& y,
                                       const Tolerances& tol = {});

/// Left-sided variant: contraction G with X G = Y (needs YY* <= XX*).
ComplexMatrix solve_left_contraction_factor(const ComplexMatrix& x, const ComplexMatrix& y,
                                            const Tolerances& tol = {});

/// Partial isometry V with V X = Y given X*X = Y*Y; initial space cl(Ran X).
PartialIsometryFactor solve_partial_isometry(const ComplexMatrix& x, const ComplexMatrix& y,
                                             const Tolerances& tol = {});

void require_contraction(const ComplexMatrix& t, const Tolerances& tol, const char* what);

}  // namespace schur_dilate
