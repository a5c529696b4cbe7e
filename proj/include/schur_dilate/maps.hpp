#pragma once

// Linear maps on matrix algebras, stored by their action on column-stacked
// inputs: vec(Phi(X)) = action * vec(X), with vec stacking columns. Under
// that convention X -> A X B* has action conj(B) (x) A.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "schur_dilate/linalg.hpp"

namespace schur_dilate {

struct MapFlags {
  bool hermiticity_preserving = false;
  bool positive_declared = false;
  bool unital = false;
  bool trace_preserving = false;
};

class MatrixLinearMap {
 public:
  MatrixLinearMap(Eigen::Index in_dim, Eigen::Index out_dim, ComplexMatrix action, MapFlags flags, std::string name = {});

  Eigen::Index in_dim() const { return in_dim_; }
  Eigen::Index out_dim() const { return out_dim_; }
  const ComplexMatrix& action() const { return action_; }
  const MapFlags& flags() const { return flags_; }
  const std::string& name() const { return name_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  /// Choi matrix sum_ij E_ij (x) Phi(E_ij) (outer index = input basis).
  ComplexMatrix choi() const;

 private:
  Eigen::Index in_dim_;
  Eigen::Index out_dim_;
  ComplexMatrix action_;
  MapFlags flags_;
  std::string name_;
};

using KrausPair = std::pair<ComplexMatrix, ComplexMatrix>;

/// Phi(X) = sum_i A_i X B_i*. Flags are computed numerically; positivity is
/// declared when the Choi matrix is PSD (the map is then CP).
MatrixLinearMap map_from_kraus_pairs(const std::vector<KrausPair>& pairs, const Tolerances& tol = {});

/// Samples f on the matrix units. Flags other than positive_declared are
/// computed numerically.
MatrixLinearMap map_from_function(Eigen::Index in_dim, Eigen::Index out_dim,
                                  const std::function<ComplexMatrix(const ComplexMatrix&)>& f,
                                  bool positive_declared, std::string name = {});

/// transpose | reduction | reduction-unital | choi3. Dimension is ignored
/// for choi3 (fixed at 3).
MatrixLinearMap builtin_witness(const std::string& name, Eigen::Index dim);
std::vector<std::string> builtin_witness_names();

/// (I_k (x) Phi)(A) for A with k x k blocks of size in_dim.
ComplexMatrix apply_blockwise(const MatrixLinearMap& phi, const ComplexMatrix& a, Eigen::Index k);

struct InequalityReport {
  std::size_t trials = 0;
  // Worst (smallest) minimum eigenvalue seen for each quantity.
  double russo_dye = 0.0;       // I - Phi(G)* Phi(G), G a contraction
  double kadison = 0.0;         // Phi(S^2) - Phi(S)^2, S self-adjoint
  double normal_left = 0.0;     // Phi(A*A) - Phi(A*) Phi(A), A normal
  double normal_right = 0.0;    // Phi(A*A) - Phi(A) Phi(A*), A normal
  double defect_star = 0.0;     // I - Phi(G*G) - Phi(D_{G*})^2, G normal contraction
  double defect = 0.0;          // I - Phi(G*G) - Phi(D_G)^2
  bool passed = false;

  double worst() const;
};

/// Russo-Dye, Kadison and the normal-operator inequalities over `trials`
/// random draws. Throws NotUnital unless Phi(I) = I.
InequalityReport positivity_inequality_suite(const MatrixLinearMap& phi, std::size_t trials, std::uint64_t seed,
                                             const Tolerances& tol = {});

}  // namespace schur_dilate
