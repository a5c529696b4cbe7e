#pragma once

// Seeded generators for test data and the witness families. All draws go
// through an explicit Rng so results depend only on the seed.

#include <cstdint>
#include <random>

#include "schur_dilate/linalg.hpp"

namespace schur_dilate {

using Rng = std::mt19937_64;

/// Derives an independent stream seed for trial `index` of a batch.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

double uniform01(Rng& rng);
/// Entries i.i.d. standard complex Gaussian.
ComplexMatrix random_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(Eigen::Index n, Rng& rng);
/// Random isometry (rows >= cols): first columns of a Haar unitary.
ComplexMatrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng);
ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng);
/// B B* / trace, full rank almost surely.
ComplexMatrix random_psd(Eigen::Index n, Rng& rng);
ComplexMatrix random_density(Eigen::Index n, Rng& rng);
/// Ginibre matrix rescaled to operator norm exactly `norm`.
ComplexMatrix random_contraction(Eigen::Index rows, Eigen::Index cols, double norm, Rng& rng);
/// U diag(z) U* with |z_i| <= max_modulus.
ComplexMatrix random_normal(Eigen::Index n, double max_modulus, Rng& rng);

}  // namespace schur_dilate
