#include "schur_dilate/dilation.hpp"

#include <algorithm>
#include <cmath>

#include "schur_dilate/contraction.hpp"

namespace schur_dilate {

namespace {

constexpr double kResolutionTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;

void require_unitary(const ComplexMatrix& u, Eigen::Index n, const char* what) {
  if (u.rows() != n || u.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be " + std::to_string(n) + "x" +
                                                  std::to_string(n));
  }
  if (unitarity_defect(u) > kUnitaryTol) throw Error(ErrorKind::NotUnitary, std::string(what) + " is not unitary");
}

// diag(I, U1) * J * diag(I, U2), each factor acting on the trailing indices.
ComplexMatrix apply_freedom(const ComplexMatrix& j, const Freedom& f) {
  ComplexMatrix out = j;
  const Eigen::Index a = f.u1.rows();
  const Eigen::Index b = f.u2.rows();
  out.bottomRows(a) = f.u1 * out.bottomRows(a);
  out.rightCols(b) = out.rightCols(b) * f.u2;
  return out;
}

ComplexMatrix pad_identity(const ComplexMatrix& u, Eigen::Index total) {
  if (total == u.rows()) return u;
  ComplexMatrix out = identity(total);
  out.topLeftCorner(u.rows(), u.cols()) = u;
  return out;
}

Freedom resolve_freedom(const std::optional<Freedom>& f, Eigen::Index a, Eigen::Index b) {
  if (!f) return {identity(a), identity(b)};
  require_unitary(f->u1, a, "freedom U1");
  require_unitary(f->u2, b, "freedom U2");
  return *f;
}

}  // namespace

Povm povm_from_vectors(const std::vector<Eigen::VectorXcd>& vectors, const Tolerances& tol) {
  if (vectors.empty()) throw Error(ErrorKind::DimensionMismatch, "POVM needs at least one vector");
  std::vector<ComplexMatrix> effects;
  for (const auto& v : vectors) {
    if (v.size() != vectors.front().size()) throw Error(ErrorKind::DimensionMismatch, "POVM vectors differ in length");
    effects.push_back(v * v.adjoint());
  }
  Povm p = make_povm(effects, tol);
  p.vectors = vectors;
  return p;
}

Povm make_povm(const std::vector<ComplexMatrix>& effects, const Tolerances& tol) {
  if (effects.empty()) throw Error(ErrorKind::DimensionMismatch, "POVM needs at least one effect");
  Povm p;
  p.dim = effects.front().rows();
  ComplexMatrix sum = zeros(p.dim, p.dim);
  for (const auto& e : effects) {
    if (e.rows() != p.dim || e.cols() != p.dim) throw Error(ErrorKind::DimensionMismatch, "effects must be square");
    if (!is_psd(e, tol).psd) throw Error(ErrorKind::NotPSD, "POVM effect is not positive");
    sum += e;
  }
  if ((sum - identity(p.dim)).norm() > kResolutionTol) {
    throw Error(ErrorKind::NotResolution, "effects do not sum to the identity");
  }
  p.effects = effects;
  // Rank-one extraction: v = sqrt(lambda_max) * top eigenvector.
  std::vector<Eigen::VectorXcd> vecs;
  for (const auto& e : effects) {
    const HermEig eig = herm_eig(hermitian_part(e), tol);
    const double scale = std::max(1.0, eig.values(0));
    if (eig.values.size() > 1 && eig.values(1) > tol.psd_tol * scale) return p;
    vecs.push_back(std::sqrt(std::max(eig.values(0), 0.0)) * eig.vectors.col(0));
  }
  p.vectors = std::move(vecs);
  return p;
}

KrausChannel make_channel(const std::vector<ComplexMatrix>& kraus, const Tolerances& tol) {
  if (kraus.empty()) throw Error(ErrorKind::DimensionMismatch, "channel needs at least one Kraus operator");
  KrausChannel ch;
  ch.out_dim = kraus.front().rows();
  ch.in_dim = kraus.front().cols();
  ComplexMatrix sum = zeros(ch.in_dim, ch.in_dim);
  for (const auto& e : kraus) {
    if (e.rows() != ch.out_dim || e.cols() != ch.in_dim) {
      throw Error(ErrorKind::DimensionMismatch, "Kraus operators must share one shape");
    }
    sum += e.adjoint() * e;
  }
  const ComplexMatrix gap = identity(ch.in_dim) - sum;
  if (!is_psd(hermitian_part(gap), tol).psd) {
    throw Error(ErrorKind::NotTracePreserving, "sum of E_i* E_i exceeds the identity");
  }
  ch.trace_preserving = gap.norm() <= kResolutionTol;
  ch.kraus = kraus;
  return ch;
}

ComplexMatrix apply_kraus(const KrausChannel& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.in_dim || rho.cols() != ch.in_dim) {
    throw Error(ErrorKind::DimensionMismatch, "state does not match the channel input");
  }
  ComplexMatrix out = zeros(ch.out_dim, ch.out_dim);
  for (const auto& e : ch.kraus) out += e * rho * e.adjoint();
  return out;
}

DilationResult povm_dilate(const Povm& povm, const std::optional<Freedom>& freedom,
                           std::optional<Eigen::Index> pad_to_ancilla, const Tolerances& tol) {
  if (povm.vectors.size() != povm.effects.size() || povm.effects.empty()) {
    throw Error(ErrorKind::EffectsNotRankOne, "POVM dilation needs rank-one effects");
  }
  const Eigen::Index m = povm.dim;
  const Eigen::Index n = static_cast<Eigen::Index>(povm.vectors.size());
  ComplexMatrix mm(m, n);
  for (Eigen::Index i = 0; i < n; ++i) mm.col(i) = povm.vectors[i];
  if ((mm * mm.adjoint() - identity(m)).norm() > kResolutionTol) {
    throw Error(ErrorKind::NotResolution, "vectors do not resolve the identity");
  }
  DilationResult r;
  r.kind = DilationKind::Povm;
  r.freedom = resolve_freedom(freedom, n, m);
  // M M* = I, so D_{M*} = 0 and the upper-right block of J(M) vanishes.
  ComplexMatrix u = apply_freedom(julia(mm, tol), r.freedom);
  Eigen::Index total = m + n;
  if (pad_to_ancilla) {
    if (*pad_to_ancilla * m < total) throw Error(ErrorKind::PaddingTooSmall, "padding below the dilation size");
    total = *pad_to_ancilla * m;
  }
  r.unitary = pad_identity(u, total);
  r.system_offset = 0;
  r.system_dim = m;
  r.in_dim = m;
  r.out_dim = m;
  r.ancilla_dim = (total + m - 1) / m;
  r.outcome_count = n;
  return r;
}

double PovmReport::worst() const {
  return std::max({unitarity, idempotence, orthogonality, completeness, compression, null_compression});
}

PovmReport povm_verify(const DilationResult& result, const Povm& povm, double threshold) {
  PovmReport rep;
  const ComplexMatrix& u = result.unitary;
  const Eigen::Index k = u.rows();
  const Eigen::Index m = result.system_dim;
  rep.unitarity = unitarity_defect(u);
  std::vector<ComplexMatrix> f;
  f.reserve(k);
  ComplexMatrix sum = zeros(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    f.push_back(u.col(i) * u.col(i).adjoint());
    sum += f.back();
    rep.idempotence = std::max(rep.idempotence, (f.back() * f.back() - f.back()).norm());
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      rep.orthogonality = std::max(rep.orthogonality, (f[i] * f[j]).norm());
    }
  }
  rep.completeness = (sum - identity(k)).norm();
  const Eigen::Index off = result.system_offset;
  for (Eigen::Index i = 0; i < k; ++i) {
    const ComplexMatrix c = f[i].block(off, off, m, m);
    if (i < result.outcome_count && i < static_cast<Eigen::Index>(povm.effects.size())) {
      rep.compression = std::max(rep.compression, (c - povm.effects[i]).norm());
    } else {
      rep.null_compression = std::max(rep.null_compression, c.norm());
    }
  }
  if (result.outcome_count != static_cast<Eigen::Index>(povm.effects.size())) {
    rep.compression = std::max(rep.compression, 1.0);
  }
  rep.passed = rep.worst() <= threshold;
  return rep;
}

Eigen::Index minimal_ancilla(const KrausChannel& ch) {
  const auto r = static_cast<Eigen::Index>(ch.kraus.size());
  return r + (ch.in_dim + ch.out_dim - 1) / ch.out_dim;
}

DilationResult channel_dilate(const KrausChannel& ch, const ChannelDilateOptions& options, const Tolerances& tol) {
  if (!ch.trace_preserving && !options.allow_trace_decreasing) {
    throw Error(ErrorKind::NotTracePreserving, "channel is not trace preserving");
  }
  const Eigen::Index n = ch.in_dim;
  const Eigen::Index m = ch.out_dim;
  const auto r = static_cast<Eigen::Index>(ch.kraus.size());
  ComplexMatrix t(r * m, n);
  for (Eigen::Index i = 0; i < r; ++i) t.middleRows(i * m, m) = ch.kraus[i];

  DilationResult res;
  res.kind = DilationKind::Channel;
  res.freedom = resolve_freedom(options.freedom, n, r * m);
  const ComplexMatrix u = apply_freedom(julia(t, tol), res.freedom);

  const Eigen::Index min_anc = minimal_ancilla(ch);
  const Eigen::Index anc = options.pad_to_ancilla.value_or(min_anc);
  if (anc < min_anc) {
    throw Error(ErrorKind::PaddingTooSmall,
                "ancilla dimension " + std::to_string(anc) + " is below the minimum " + std::to_string(min_anc));
  }
  res.unitary = pad_identity(u, anc * m);
  res.system_offset = 0;
  res.system_dim = n;
  res.in_dim = n;
  res.out_dim = m;
  res.ancilla_dim = anc;
  res.outcome_count = r;
  res.absorbing_begin = r * m;
  res.absorbing_end = r * m + n;
  return res;
}

ComplexMatrix channel_simulate(const DilationResult& result, const ComplexMatrix& rho, bool exclude_absorbing,
                               const Tolerances& tol) {
  if (result.kind != DilationKind::Channel) {
    throw Error(ErrorKind::UnsupportedCombination, "simulation needs a channel dilation");
  }
  const Eigen::Index n = result.in_dim;
  const Eigen::Index m = result.out_dim;
  if (rho.rows() != n || rho.cols() != n) throw Error(ErrorKind::DimensionMismatch, "state does not match the input");
  if (!is_hermitian(rho, tol.psd_tol) || !is_psd(rho, tol).psd || rho.trace().real() > 1.0 + tol.psd_tol) {
    throw Error(ErrorKind::NotState, "input is not a density matrix");
  }
  // Only the input columns of U see rho, so U X U* = W rho W*.
  ComplexMatrix w = result.unitary.leftCols(n);
  if (exclude_absorbing) w.middleRows(result.absorbing_begin, result.absorbing_end - result.absorbing_begin).setZero();
  const ComplexMatrix full = w * rho * w.adjoint();
  return ptrace_first(full, result.size() / m, m);
}

}  // namespace schur_dilate
