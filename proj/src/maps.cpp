#include "schur_dilate/maps.hpp"

#include <algorithm>
#include <cmath>

#include "schur_dilate/contraction.hpp"
#include "schur_dilate/random.hpp"

namespace schur_dilate {

namespace {

ComplexMatrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix e = zeros(n, n);
  e(i, j) = 1.0;
  return e;
}

MapFlags numeric_flags(const MatrixLinearMap& phi) {
  constexpr double kTol = 1e-12;
  MapFlags f;
  const ComplexMatrix c = phi.choi();
  f.hermiticity_preserving = (c - c.adjoint()).norm() <= kTol * std::max(c.norm(), 1.0);
  if (phi.in_dim() == phi.out_dim()) {
    const ComplexMatrix id = identity(phi.in_dim());
    f.unital = (phi.apply(id) - id).norm() <= kTol * std::max<double>(1.0, double(phi.in_dim()));
  }
  // Trace preserving iff Tr Phi(E_ij) = delta_ij.
  bool tp = true;
  for (Eigen::Index j = 0; j < phi.in_dim() && tp; ++j) {
    for (Eigen::Index i = 0; i < phi.in_dim() && tp; ++i) {
      const Complex tr = phi.apply(unit(phi.in_dim(), i, j)).trace();
      tp = std::abs(tr - (i == j ? Complex(1.0) : Complex(0.0))) <= kTol;
    }
  }
  f.trace_preserving = tp;
  return f;
}

double min_eig(const ComplexMatrix& h) {
  return herm_eig(hermitian_part(h), Tolerances{1e-6}).values.minCoeff();
}

}  // namespace

MatrixLinearMap::MatrixLinearMap(Eigen::Index in_dim, Eigen::Index out_dim, ComplexMatrix action, MapFlags flags,
                                 std::string name)
    : in_dim_(in_dim), out_dim_(out_dim), action_(std::move(action)), flags_(flags), name_(std::move(name)) {
  if (in_dim <= 0 || out_dim <= 0 || action_.rows() != out_dim * out_dim || action_.cols() != in_dim * in_dim) {
    throw Error(ErrorKind::DimensionMismatch, "action matrix must be out_dim^2 x in_dim^2");
  }
}

ComplexMatrix MatrixLinearMap::apply(const ComplexMatrix& x) const {
  if (x.rows() != in_dim_ || x.cols() != in_dim_) {
    throw Error(ErrorKind::DimensionMismatch, "map input must be " + std::to_string(in_dim_) + "x" +
                                                  std::to_string(in_dim_));
  }
  const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(x.data(), x.size());
  const Eigen::VectorXcd w = action_ * v;
  return Eigen::Map<const ComplexMatrix>(w.data(), out_dim_, out_dim_);
}

ComplexMatrix MatrixLinearMap::choi() const {
  ComplexMatrix c(in_dim_ * out_dim_, in_dim_ * out_dim_);
  for (Eigen::Index j = 0; j < in_dim_; ++j) {
    for (Eigen::Index i = 0; i < in_dim_; ++i) {
      c.block(i * out_dim_, j * out_dim_, out_dim_, out_dim_) = apply(unit(in_dim_, i, j));
    }
  }
  return c;
}

MatrixLinearMap map_from_kraus_pairs(const std::vector<KrausPair>& pairs, const Tolerances& tol) {
  if (pairs.empty()) throw Error(ErrorKind::DimensionMismatch, "at least one Kraus pair is required");
  const Eigen::Index m = pairs.front().first.rows();
  const Eigen::Index n = pairs.front().first.cols();
  ComplexMatrix action = zeros(m * m, n * n);
  for (const auto& [a, b] : pairs) {
    if (a.rows() != m || a.cols() != n || b.rows() != m || b.cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "all Kraus pairs must be out_dim x in_dim");
    }
    action += kron(b.conjugate(), a);
  }
  MatrixLinearMap phi(n, m, std::move(action), {}, "kraus");
  MapFlags flags = numeric_flags(phi);
  flags.positive_declared = flags.hermiticity_preserving && is_psd(phi.choi(), tol).psd;
  return MatrixLinearMap(n, m, phi.action(), flags, "kraus");
}

MatrixLinearMap map_from_function(Eigen::Index in_dim, Eigen::Index out_dim,
                                  const std::function<ComplexMatrix(const ComplexMatrix&)>& f,
                                  bool positive_declared, std::string name) {
  ComplexMatrix action(out_dim * out_dim, in_dim * in_dim);
  for (Eigen::Index j = 0; j < in_dim; ++j) {
    for (Eigen::Index i = 0; i < in_dim; ++i) {
      const ComplexMatrix y = f(unit(in_dim, i, j));
      if (y.rows() != out_dim || y.cols() != out_dim) {
        throw Error(ErrorKind::DimensionMismatch, "map output has the wrong size");
      }
      action.col(j * in_dim + i) = Eigen::Map<const Eigen::VectorXcd>(y.data(), y.size());
    }
  }
  MatrixLinearMap phi(in_dim, out_dim, std::move(action), {}, name);
  MapFlags flags = numeric_flags(phi);
  flags.positive_declared = positive_declared;
  return MatrixLinearMap(in_dim, out_dim, phi.action(), flags, std::move(name));
}

std::vector<std::string> builtin_witness_names() { return {"transpose", "reduction", "reduction-unital", "choi3"}; }

MatrixLinearMap builtin_witness(const std::string& name, Eigen::Index dim) {
  if (name == "transpose") {
    return map_from_function(dim, dim, [](const ComplexMatrix& x) -> ComplexMatrix { return x.transpose(); }, true,
                             name);
  }
  if (name == "reduction") {
    return map_from_function(
        dim, dim, [dim](const ComplexMatrix& x) -> ComplexMatrix { return x.trace() * identity(dim) - x; }, true,
        name);
  }
  if (name == "reduction-unital") {
    if (dim < 2) throw Error(ErrorKind::UnsupportedCombination, "unital reduction map needs dimension >= 2");
    const double scale = 1.0 / static_cast<double>(dim - 1);
    return map_from_function(
        dim, dim,
        [dim, scale](const ComplexMatrix& x) -> ComplexMatrix { return scale * (x.trace() * identity(dim) - x); },
        true, name);
  }
  if (name == "choi3") {
    return map_from_function(
        3, 3,
        [](const ComplexMatrix& x) -> ComplexMatrix {
          ComplexMatrix y = -x;
          y(0, 0) = x(0, 0) + x(2, 2);
          y(1, 1) = x(1, 1) + x(0, 0);
          y(2, 2) = x(2, 2) + x(1, 1);
          return y;
        },
        true, name);
  }
  throw Error(ErrorKind::UnknownName, "unknown witness '" + name + "'");
}

ComplexMatrix apply_blockwise(const MatrixLinearMap& phi, const ComplexMatrix& a, Eigen::Index k) {
  const Eigen::Index n = phi.in_dim();
  const Eigen::Index m = phi.out_dim();
  if (k <= 0 || a.rows() != k * n || a.cols() != k * n) {
    throw Error(ErrorKind::DimensionMismatch, "input must have k x k blocks of size " + std::to_string(n));
  }
  ComplexMatrix out(k * m, k * m);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) {
      out.block(i * m, j * m, m, m) = phi.apply(a.block(i * n, j * n, n, n));
    }
  }
  return out;
}

double InequalityReport::worst() const {
  return std::min({russo_dye, kadison, normal_left, normal_right, defect_star, defect});
}

InequalityReport positivity_inequality_suite(const MatrixLinearMap& phi, std::size_t trials, std::uint64_t seed,
                                             const Tolerances& tol) {
  if (!phi.flags().unital) throw Error(ErrorKind::NotUnital, "map '" + phi.name() + "' is not unital");
  const Eigen::Index n = phi.in_dim();
  const ComplexMatrix id = identity(phi.out_dim());
  InequalityReport rep;
  rep.trials = trials;
  double worst[6] = {0, 0, 0, 0, 0, 0};
  bool first = true;
  const auto track = [&](int slot, double v) {
    worst[slot] = first ? v : std::min(worst[slot], v);
  };
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const ComplexMatrix g = random_contraction(n, n, uniform01(rng), rng);
    const ComplexMatrix pg = phi.apply(g);
    const double rd = min_eig(id - pg.adjoint() * pg);

    const ComplexMatrix s = random_hermitian(n, rng);
    const ComplexMatrix ps = phi.apply(s);
    const double kad = min_eig(phi.apply(s * s) - ps * ps);

    const ComplexMatrix a = random_normal(n, 1.0 + 2.0 * uniform01(rng), rng);
    const ComplexMatrix paa = phi.apply(a.adjoint() * a);
    const ComplexMatrix pa = phi.apply(a);
    const ComplexMatrix pa_star = phi.apply(a.adjoint());
    const double l3a = min_eig(paa - pa_star * pa);
    const double l3b = min_eig(paa - pa * pa_star);

    const ComplexMatrix gn = random_normal(n, 1.0, rng);
    const DefectPair d = defects(gn, tol);
    const ComplexMatrix pgg = phi.apply(gn.adjoint() * gn);
    const ComplexMatrix pds = phi.apply(d.d_t_star);
    const ComplexMatrix pd = phi.apply(d.d_t);
    const double l4s = min_eig(id - pgg - pds * pds);
    const double l4 = min_eig(id - pgg - pd * pd);

    track(0, rd);
    track(1, kad);
    track(2, l3a);
    track(3, l3b);
    track(4, l4s);
    track(5, l4);
    first = false;
  }
  rep.russo_dye = worst[0];
  rep.kadison = worst[1];
  rep.normal_left = worst[2];
  rep.normal_right = worst[3];
  rep.defect_star = worst[4];
  rep.defect = worst[5];
  rep.passed = rep.worst() >= -std::max(tol.psd_tol, 1e-9);
  return rep;
}

}  // namespace schur_dilate
