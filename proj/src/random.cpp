#include "schur_dilate/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace schur_dilate {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over (base, index)
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

ComplexMatrix random_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return out;
}

ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
  const ComplexMatrix g = random_ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

ComplexMatrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  return random_unitary(rows, rng).leftCols(cols);
}

ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  return make_exactly_hermitian(hermitian_part(random_ginibre(n, n, rng)));
}

ComplexMatrix random_psd(Eigen::Index n, Rng& rng) {
  const ComplexMatrix b = random_ginibre(n, n, rng);
  ComplexMatrix p = b * b.adjoint();
  p /= p.trace().real();
  return make_exactly_hermitian(p);
}

ComplexMatrix random_density(Eigen::Index n, Rng& rng) { return random_psd(n, rng); }

ComplexMatrix random_contraction(Eigen::Index rows, Eigen::Index cols, double norm, Rng& rng) {
  const ComplexMatrix g = random_ginibre(rows, cols, rng);
  return g * (norm / op_norm(g));
}

ComplexMatrix random_normal(Eigen::Index n, double max_modulus, Rng& rng) {
  const ComplexMatrix u = random_unitary(n, rng);
  Eigen::VectorXcd z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // uniform on the disk of radius max_modulus
    const double r = max_modulus * std::sqrt(uniform01(rng));
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    z(i) = std::polar(r, theta);
  }
  return u * z.asDiagonal() * u.adjoint();
}

}  // namespace schur_dilate
