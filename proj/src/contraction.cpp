#include "schur_dilate/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

namespace schur_dilate {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// sqrt(1 - s^2) computed as sqrt((1 - s)(1 + s)); values within a few ulps
// of 1 are treated as exactly 1.
double defect_of(double s) {
  if (s >= 1.0 - 8.0 * kEps) return 0.0;
  return std::sqrt((1.0 - s) * (1.0 + s));
}

}  // namespace

void require_contraction(const ComplexMatrix& t, const Tolerances& tol, const char* what) {
  const double norm = op_norm(t);
  if (norm > 1.0 + tol.psd_tol) {
    throw Error(ErrorKind::NotContraction,
                std::string(what) + " has operator norm " + std::to_string(norm) + " > 1");
  }
}

DefectPair defects(const ComplexMatrix& t, const Tolerances& tol) {
  const Eigen::Index r = t.rows();
  const Eigen::Index c = t.cols();
  DefectPair out;
  if (t.size() == 0) {
    out.d_t = identity(c);
    out.d_t_star = identity(r);
    return out;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  if (s(0) > 1.0 + tol.psd_tol) {
    throw Error(ErrorKind::NotContraction, "operator norm " + std::to_string(s(0)) + " > 1");
  }
  Eigen::VectorXcd dv = Eigen::VectorXcd::Ones(c);
  Eigen::VectorXcd du = Eigen::VectorXcd::Ones(r);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double d = defect_of(std::min(s(i), 1.0));
    dv(i) = d;
    du(i) = d;
  }
  const ComplexMatrix& u = svd.matrixU();
  const ComplexMatrix& v = svd.matrixV();
  out.d_t = hermitian_part(v * dv.asDiagonal() * v.adjoint());
  out.d_t_star = hermitian_part(u * du.asDiagonal() * u.adjoint());
  return out;
}

ComplexMatrix julia(const ComplexMatrix& t, const Tolerances& tol) {
  const DefectPair d = defects(t, tol);
  const Eigen::Index r = t.rows();
  const Eigen::Index c = t.cols();
  ComplexMatrix j(r + c, c + r);
  j.topLeftCorner(r, c) = t;
  j.topRightCorner(r, r) = d.d_t_star;
  j.bottomLeftCorner(c, c) = d.d_t;
  j.bottomRightCorner(c, r) = -t.adjoint();
  return j;
}

ComplexMatrix solve_contraction_factor(const ComplexMatrix& x, const ComplexMatrix& y,
                                       const Tolerances& tol) {
  if (x.cols() != y.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "G X = Y needs X and Y with equal column counts");
  }
  const ComplexMatrix xx = x.adjoint() * x;
  const ComplexMatrix gap = hermitian_part(xx - y.adjoint() * y);
  const double scale = std::max(op_norm(xx), 1.0);
  const double min_gap = gap.size() == 0 ? 0.0 : herm_eig(gap, tol).values.minCoeff();
  if (min_gap < -tol.psd_tol * scale) {
    throw Error(ErrorKind::NoFactor, "Y*Y exceeds X*X (min eigenvalue of X*X - Y*Y is " +
                                         std::to_string(min_gap) + ")");
  }
  const ComplexMatrix g = y * pinv(x, tol);
  const double norm = op_norm(g);
  if (norm <= 1.0) return g;
  // The Gram test passed, so any excess is amplified rounding in small
  // singular directions of X.
  Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXcd clipped = svd.singularValues().cwiseMin(1.0).cast<Complex>();
  return svd.matrixU() * clipped.asDiagonal() * svd.matrixV().adjoint();
}

ComplexMatrix solve_left_contraction_factor(const ComplexMatrix& x, const ComplexMatrix& y,
                                            const Tolerances& tol) {
  if (x.rows() != y.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "X G = Y needs X and Y with equal row counts");
  }
  return solve_contraction_factor(x.adjoint(), y.adjoint(), tol).adjoint();
}

PartialIsometryFactor solve_partial_isometry(const ComplexMatrix& x, const ComplexMatrix& y,
                                             const Tolerances& tol) {
  if (x.cols() != y.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "V X = Y needs X and Y with equal column counts");
  }
  const ComplexMatrix xx = x.adjoint() * x;
  const double scale = std::max(xx.norm(), 1.0);
  if ((xx - y.adjoint() * y).norm() > tol.psd_tol * scale) {
    throw Error(ErrorKind::NotEquinormed, "X*X and Y*Y differ");
  }
  PartialIsometryFactor out;
  const ComplexMatrix v = y * pinv(x, tol);
  if (v.size() == 0) {
    out.v = v;
    return out;
  }
  // Snap singular values to {0, 1} so V V* V = V holds to rounding.
  Eigen::JacobiSVD<ComplexMatrix> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  Eigen::VectorXcd snapped(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    snapped(i) = s(i) > 0.5 ? 1.0 : 0.0;
    if (s(i) > 0.5) ++out.initial_rank;
  }
  out.v = svd.matrixU() * snapped.asDiagonal() * svd.matrixV().adjoint();
  return out;
}

}  // namespace schur_dilate
