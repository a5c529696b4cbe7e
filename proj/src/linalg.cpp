#include "schur_dilate/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace schur_dilate {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::NoFactor: return "NoFactor";
    case ErrorKind::NotEquinormed: return "NotEquinormed";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::ShapeUnsupported: return "ShapeUnsupported";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::NotResolution: return "NotResolution";
    case ErrorKind::EffectsNotRankOne: return "EffectsNotRankOne";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::PaddingTooSmall: return "PaddingTooSmall";
    case ErrorKind::NotState: return "NotState";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

void Tolerances::validate() const {
  if (!(psd_tol > 0.0) || !(recon_tol > 0.0) || !(contraction_slack > 0.0)) {
    throw Error(ErrorKind::Parse, "tolerances must be strictly positive");
  }
}

Tolerances tolerances_from_env() {
  Tolerances tol;
  if (const char* env = std::getenv("SCHUR_DILATE_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::Parse, std::string("SCHUR_DILATE_TOL is not a positive number: ") + env);
    }
    tol.psd_tol = v;
  }
  return tol;
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix zeros(Eigen::Index rows, Eigen::Index cols) { return ComplexMatrix::Zero(rows, cols); }

bool is_finite(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

bool is_square(const ComplexMatrix& a) { return a.rows() == a.cols(); }

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (!is_square(a)) return false;
  const double scale = std::max(a.norm(), 1.0);
  return (a - a.adjoint()).norm() <= rel_tol * scale;
}

void require_hermitian(const ComplexMatrix& a, double rel_tol, const char* what) {
  if (!is_square(a)) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be square");
  }
  if (!is_hermitian(a, rel_tol)) {
    throw Error(ErrorKind::NotHermitian, std::string(what) + " is not Hermitian");
  }
}

RealVector singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return RealVector();
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

double op_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

HermEig herm_eig(const ComplexMatrix& a, const Tolerances& tol) {
  require_hermitian(a, tol.psd_tol, "herm_eig input");
  const ComplexMatrix h = hermitian_part(a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "Hermitian eigensolver did not converge");
  }
  // Eigen sorts ascending.
  HermEig out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& a, const Tolerances& tol) {
  const HermEig eig = herm_eig(a, tol);
  const double scale = eig.values.size() > 0 ? eig.values.cwiseAbs().maxCoeff() : 0.0;
  // Eigenvalues at the solver's rounding level are zeroed too; their square
  // roots would otherwise inject sqrt(eps)-sized noise into the kernel.
  const double floor = static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon() * scale;
  RealVector roots(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    if (v < -tol.psd_tol * scale) {
      throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(v) + " below -psd_tol*||A||");
    }
    roots(i) = v > floor ? std::sqrt(v) : 0.0;
  }
  ComplexMatrix r = eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return hermitian_part(r);
}

ComplexMatrix pinv(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.size() == 0) return ComplexMatrix::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  const double cutoff =
      tol.rank_tol > 0.0
          ? tol.rank_tol
          : static_cast<double>(std::max(a.rows(), a.cols())) * std::numeric_limits<double>::epsilon() *
                (s.size() > 0 ? s(0) : 0.0);
  Eigen::VectorXcd inv(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) inv(i) = s(i) > cutoff ? 1.0 / s(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

PsdCheck is_psd(const ComplexMatrix& a, const Tolerances& tol) {
  const HermEig eig = herm_eig(a, tol);
  PsdCheck out;
  if (eig.values.size() == 0) {
    out.psd = true;
    return out;
  }
  const double norm = eig.values.cwiseAbs().maxCoeff();
  out.min_eigenvalue = eig.values(eig.values.size() - 1);
  out.psd = out.min_eigenvalue >= -tol.psd_tol * std::max(norm, 1.0);
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix ptrace_first(const ComplexMatrix& x, Eigen::Index k, Eigen::Index n) {
  if (k <= 0 || n <= 0 || x.rows() != k * n || x.cols() != k * n) {
    throw Error(ErrorKind::DimensionMismatch, "ptrace_first expects a (k*n)x(k*n) matrix");
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < k; ++a) out += x.block(a * n, a * n, n, n);
  return out;
}

ComplexMatrix polar_unitary(const ComplexMatrix& a) {
  if (!is_square(a)) throw Error(ErrorKind::DimensionMismatch, "polar_unitary expects a square matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

ComplexMatrix clip_to_contraction(const ComplexMatrix& a, double slack) {
  if (a.size() == 0) return a;
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  if (s(0) <= 1.0) return a;
  if (s(0) > 1.0 + slack) {
    throw Error(ErrorKind::NotContraction, "operator norm " + std::to_string(s(0)) + " exceeds 1");
  }
  const Eigen::VectorXcd clipped = s.cwiseMin(1.0).cast<Complex>();
  return svd.matrixU() * clipped.asDiagonal() * svd.matrixV().adjoint();
}

Eigen::Index offset_of(const std::vector<Eigen::Index>& dims, std::size_t i) {
  Eigen::Index off = 0;
  for (std::size_t k = 0; k < i; ++k) off += dims[k];
  return off;
}

Eigen::Index total_of(const std::vector<Eigen::Index>& dims) { return offset_of(dims, dims.size()); }

ComplexMatrix block_of(const ComplexMatrix& a, const std::vector<Eigen::Index>& row_dims,
                       const std::vector<Eigen::Index>& col_dims, std::size_t i, std::size_t j) {
  return a.block(offset_of(row_dims, i), offset_of(col_dims, j), row_dims[i], col_dims[j]);
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

ComplexMatrix make_exactly_hermitian(const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    out(j, j) = Complex(a(j, j).real(), 0.0);
    for (Eigen::Index i = j + 1; i < a.rows(); ++i) out(i, j) = std::conj(out(j, i));
  }
  return out;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (!is_square(u)) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - identity(u.rows())).norm();
}

}  // namespace schur_dilate
