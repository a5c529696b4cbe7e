#pragma once

// Unitary dilations of finite rank-one POVMs and of Kraus channels, both
// built from the Julia unitary of an isometric (or co-isometric) stack.
//
// Index layout of the dilation space C^K:
//   POVM:    rows [0, m) are the system; columns [0, n) are the outcomes and
//            columns [n, n + m) are null outcomes compressing to 0.
//   Channel: columns [0, n) carry the input; rows [0, r m) are r copies of the
//            output space (ancilla block i holds E_i rho E_i*); rows
//            [r m, r m + n) are the absorbing sector, nonzero only for trace
//            decreasing channels; identity padding fills the rest.

#include <optional>
#include <vector>

#include "schur_dilate/linalg.hpp"

namespace schur_dilate {

struct Povm {
  Eigen::Index dim = 0;
  std::vector<ComplexMatrix> effects;
  /// Present when every effect is v v*; filled by make_povm when possible.
  std::vector<Eigen::VectorXcd> vectors;
};

/// Effects from vectors, E(i) = v_i v_i*. Throws NotResolution unless the
/// effects sum to the identity within 1e-10.
Povm povm_from_vectors(const std::vector<Eigen::VectorXcd>& vectors, const Tolerances& tol = {});
/// Validates general effects and extracts rank-one vectors where possible.
Povm make_povm(const std::vector<ComplexMatrix>& effects, const Tolerances& tol = {});

struct KrausChannel {
  Eigen::Index in_dim = 0;
  Eigen::Index out_dim = 0;
  std::vector<ComplexMatrix> kraus;  // each out_dim x in_dim
  bool trace_preserving = false;
};

/// Throws NotTracePreserving when sum E_i* E_i exceeds I beyond psd_tol.
KrausChannel make_channel(const std::vector<ComplexMatrix>& kraus, const Tolerances& tol = {});
ComplexMatrix apply_kraus(const KrausChannel& ch, const ComplexMatrix& rho);

struct Freedom {
  ComplexMatrix u1;
  ComplexMatrix u2;
};

enum class DilationKind { Povm, Channel };

struct DilationResult {
  DilationKind kind = DilationKind::Povm;
  ComplexMatrix unitary;
  Eigen::Index system_offset = 0;
  Eigen::Index system_dim = 0;
  Eigen::Index in_dim = 0;
  Eigen::Index out_dim = 0;
  /// Channel: total dimension / out_dim. POVM: total dimension / dim.
  Eigen::Index ancilla_dim = 0;
  Eigen::Index outcome_count = 0;
  Eigen::Index absorbing_begin = 0;
  Eigen::Index absorbing_end = 0;
  Freedom freedom;

  Eigen::Index size() const { return unitary.rows(); }
};

/// Freedom sizes: U1 acts on the last n rows, U2 on the last m columns.
DilationResult povm_dilate(const Povm& povm, const std::optional<Freedom>& freedom = std::nullopt,
                           std::optional<Eigen::Index> pad_to_ancilla = std::nullopt, const Tolerances& tol = {});

struct PovmReport {
  double unitarity = 0.0;
  double idempotence = 0.0;     // max ||F(i)^2 - F(i)||
  double orthogonality = 0.0;   // max ||F(i) F(j)||, i != j
  double completeness = 0.0;    // ||sum F(i) - I||
  double compression = 0.0;     // max ||P F(i) P - E(i)|| over real outcomes
  double null_compression = 0.0;
  bool passed = false;
  double worst() const;
};

PovmReport povm_verify(const DilationResult& result, const Povm& povm, double threshold = 1e-9);

struct ChannelDilateOptions {
  std::optional<Freedom> freedom;
  std::optional<Eigen::Index> pad_to_ancilla;
  bool allow_trace_decreasing = false;
};

/// Minimal ancilla count r + ceil(n / m) for the given channel.
Eigen::Index minimal_ancilla(const KrausChannel& ch);

/// Freedom sizes: U1 is n x n (absorbing rows), U2 is r m x r m.
DilationResult channel_dilate(const KrausChannel& ch, const ChannelDilateOptions& options = {},
                              const Tolerances& tol = {});

/// Embeds rho on the input columns, conjugates by U and traces out the
/// ancilla. The absorbing sector is dropped unless exclude_absorbing is false.
ComplexMatrix channel_simulate(const DilationResult& result, const ComplexMatrix& rho, bool exclude_absorbing = true,
                               const Tolerances& tol = {});

}  // namespace schur_dilate
