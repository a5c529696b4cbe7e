#include "schur_dilate/families.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "schur_dilate/contraction.hpp"
#include "schur_dilate/random.hpp"

namespace schur_dilate {

namespace {

constexpr int kArrowAttempts = 64;

ComplexMatrix sandwich(const ComplexMatrix& root, const ComplexMatrix& x) { return root * x * root; }

// T, R positive and Hermitian S_1..S_count with [[T, S],[S, R]]-type arrow
// positivity. The caller assembles and the final check is done here.
struct ArrowDraw {
  ComplexMatrix t;
  ComplexMatrix r;
  std::vector<ComplexMatrix> s;
};

ComplexMatrix assemble_arrow(const ArrowDraw& d, bool hub_last) {
  const Eigen::Index n = d.t.rows();
  const Eigen::Index k = static_cast<Eigen::Index>(d.s.size()) + 1;
  ComplexMatrix a = zeros(k * n, k * n);
  const Eigen::Index hub = hub_last ? k - 1 : 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    // The hub carries R in the first form and T in the second.
    const bool is_hub = i == hub;
    const ComplexMatrix& diag = hub_last ? (is_hub ? d.r : d.t) : (is_hub ? d.t : d.r);
    a.block(i * n, i * n, n, n) = diag;
  }
  for (Eigen::Index i = 0; i + 1 < k; ++i) {
    const Eigen::Index spoke = hub_last ? i : i + 1;
    a.block(spoke * n, hub * n, n, n) = d.s[i];
    a.block(hub * n, spoke * n, n, n) = d.s[i];
  }
  return a;
}

ArrowDraw draw_arrow(Eigen::Index n, Eigen::Index spokes, bool hub_last, Rng& rng, const Tolerances& tol) {
  ArrowDraw d;
  d.t = random_psd(n, rng);
  d.r = random_psd(n, rng);
  const ComplexMatrix t_root = sqrt_psd(d.t, tol);
  const ComplexMatrix r_root = sqrt_psd(d.r, tol);
  // The spoke blocks sit next to T (hub R in the first form), so
  // S_i = herm(T^{1/2} G_i R^{1/2}) with [G_1; ...] a column contraction.
  double scale = 1.0;
  for (int attempt = 0; attempt < kArrowAttempts; ++attempt, scale *= 0.8) {
    const ComplexMatrix stack = random_contraction(n * spokes, n, scale * uniform01(rng), rng);
    d.s.clear();
    for (Eigen::Index i = 0; i < spokes; ++i) {
      const ComplexMatrix g = stack.middleRows(i * n, n);
      d.s.push_back(make_exactly_hermitian(hermitian_part(t_root * g * r_root)));
    }
    if (is_psd(assemble_arrow(d, hub_last), Tolerances{0.0 + 1e-300}).min_eigenvalue >= 0.0) return d;
  }
  for (auto& s : d.s) s = zeros(n, n);
  return d;
}

std::array<double, 3> pattern_u(int pattern) {
  switch (pattern) {
    case 1: return {1.0, 1.0, 0.0};
    case 2: return {1.0, 0.0, 1.0};
    case 3: return {1.0, 0.0, 0.0};
  }
  throw Error(ErrorKind::UnsupportedCombination, "span3 pattern must be 1, 2 or 3");
}

std::array<double, 3> pattern_w(int pattern) {
  switch (pattern) {
    case 1: return {0.0, 0.0, 1.0};
    case 2: return {0.0, 1.0, 0.0};
    case 3: return {0.0, 1.0, 1.0};
  }
  throw Error(ErrorKind::UnsupportedCombination, "span3 pattern must be 1, 2 or 3");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::UnsupportedCombination, what);
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Toeplitz2: return "toeplitz2";
    case Family::Subnormal3I: return "subnormal3-i";
    case Family::Subnormal3II: return "subnormal3-ii";
    case Family::ArrowFirst: return "arrow-first";
    case Family::ArrowSecond: return "arrow-second";
    case Family::Span3: return "span3";
  }
  return "unknown";
}

std::optional<Family> parse_family(const std::string& name) {
  for (Family f : {Family::Toeplitz2, Family::Subnormal3I, Family::Subnormal3II, Family::ArrowFirst,
                   Family::ArrowSecond, Family::Span3}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

ComplexMatrix toeplitz2_from(const ComplexMatrix& t, const ComplexMatrix& gamma, const Tolerances& tol) {
  require_contraction(gamma, tol, "Toeplitz parameter");
  const Eigen::Index n = t.rows();
  const ComplexMatrix root = sqrt_psd(t, tol);
  const ComplexMatrix s = sandwich(root, gamma);
  ComplexMatrix a(2 * n, 2 * n);
  a.topLeftCorner(n, n) = t;
  a.bottomRightCorner(n, n) = t;
  a.topRightCorner(n, n) = s;
  a.bottomLeftCorner(n, n) = s.adjoint();
  return a;
}

ComplexMatrix subnormal3_i_from(const ComplexMatrix& t, const ComplexMatrix& gamma, const Tolerances& tol) {
  const Eigen::Index n = t.rows();
  const ComplexMatrix root = sqrt_psd(t, tol);
  const ComplexMatrix s12 = sandwich(root, gamma);
  const ComplexMatrix s13 = sandwich(root, defects(gamma, tol).d_t_star);
  ComplexMatrix a = zeros(3 * n, 3 * n);
  for (Eigen::Index i = 0; i < 3; ++i) a.block(i * n, i * n, n, n) = t;
  a.block(0, n, n, n) = s12;
  a.block(n, 0, n, n) = s12.adjoint();
  a.block(0, 2 * n, n, n) = s13;
  a.block(2 * n, 0, n, n) = s13.adjoint();
  return a;
}

ComplexMatrix subnormal3_ii_from(const ComplexMatrix& t, const ComplexMatrix& gamma, const Tolerances& tol) {
  const Eigen::Index n = t.rows();
  const ComplexMatrix root = sqrt_psd(t, tol);
  const ComplexMatrix s23 = sandwich(root, gamma);
  const ComplexMatrix s13 = sandwich(root, defects(gamma, tol).d_t);
  ComplexMatrix a = zeros(3 * n, 3 * n);
  for (Eigen::Index i = 0; i < 3; ++i) a.block(i * n, i * n, n, n) = t;
  a.block(n, 2 * n, n, n) = s23;
  a.block(2 * n, n, n, n) = s23.adjoint();
  a.block(0, 2 * n, n, n) = s13;
  a.block(2 * n, 0, n, n) = s13.adjoint();
  return a;
}

ComplexMatrix span3_embed(int pattern, const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
  const auto u = pattern_u(pattern);
  const auto w = pattern_w(pattern);
  const Eigen::Index m = a.rows();
  if (a.cols() != m || b.rows() != m || b.cols() != m || c.rows() != m || c.cols() != m) {
    throw Error(ErrorKind::DimensionMismatch, "span3 coefficient blocks must be m x m");
  }
  ComplexMatrix rho(3 * m, 3 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) {
          // u, w are 0/1 vectors, so each entry is exactly one coefficient or 0.
          Complex v = 0.0;
          if (u[p] * u[q] != 0.0) v = a(i, j);
          else if (u[p] * w[q] + w[p] * u[q] != 0.0) v = b(i, j);
          else if (w[p] * w[q] != 0.0) v = c(i, j);
          rho(3 * i + p, 3 * j + q) = v;
        }
      }
    }
  }
  return rho;
}

StateFamilySample gen_family(const FamilyRequest& req, const Tolerances& tol) {
  Rng rng(req.seed);
  StateFamilySample out;
  out.family = req.family;
  out.seed = req.seed;
  out.block_dim = req.block_dim;
  require(req.block_dim >= 1, "block_dim must be positive");
  const Eigen::Index n = req.block_dim;
  switch (req.family) {
    case Family::Toeplitz2: {
      require(req.block_count == 0 || req.block_count == 2, "toeplitz2 has exactly 2 blocks");
      out.block_count = 2;
      const ComplexMatrix t = random_psd(n, rng);
      const ComplexMatrix g = random_contraction(n, n, uniform01(rng), rng);
      out.matrix = toeplitz2_from(t, g, tol);
      break;
    }
    case Family::Subnormal3I:
    case Family::Subnormal3II: {
      require(req.block_count == 0 || req.block_count == 3, "subnormal3 families have exactly 3 blocks");
      out.block_count = 3;
      const ComplexMatrix t = random_psd(n, rng);
      const ComplexMatrix g = random_normal(n, 1.0, rng);
      out.matrix = req.family == Family::Subnormal3I ? subnormal3_i_from(t, g, tol) : subnormal3_ii_from(t, g, tol);
      break;
    }
    case Family::ArrowFirst:
    case Family::ArrowSecond: {
      const Eigen::Index k = req.block_count == 0 ? 3 : req.block_count;
      require(k >= 2, "arrow families need at least 2 blocks");
      out.block_count = k;
      const bool hub_last = req.family == Family::ArrowFirst;
      out.matrix = assemble_arrow(draw_arrow(n, k - 1, hub_last, rng, tol), hub_last);
      break;
    }
    case Family::Span3: {
      require(n == 3, "span3 acts on 3x3 blocks (block_dim 3)");
      require(req.pattern >= 1 && req.pattern <= 3, "span3 pattern must be 1, 2 or 3");
      const Eigen::Index m = req.block_count == 0 ? 2 : req.block_count;
      require(m >= 1, "span3 needs at least 1 block");
      out.block_count = m;
      out.pattern = req.pattern;
      // sigma = [[A, B], [B, C]] (A, C PSD, B Hermitian) on C^2 (x) C^m is the
      // positive cone of C^{m x m} (x) span.
      const ArrowDraw d = draw_arrow(m, 1, true, rng, tol);
      out.matrix = span3_embed(req.pattern, d.t, d.s.front(), d.r);
      break;
    }
  }
  out.matrix = make_exactly_hermitian(out.matrix);
  return out;
}

WitnessResult witness_check(const MatrixLinearMap& phi, const ComplexMatrix& matrix, Eigen::Index block_count,
                            const Tolerances& tol) {
  const ComplexMatrix image = apply_blockwise(phi, matrix, block_count);
  const PsdCheck check = is_psd(hermitian_part(image), tol);
  return {check.psd, check.min_eigenvalue};
}

WitnessResult witness_check(const MatrixLinearMap& phi, const StateFamilySample& sample, const Tolerances& tol) {
  return witness_check(phi, sample.matrix, sample.block_count, tol);
}

ComplexMatrix bell_projector() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return psi * psi.adjoint();
}

ComplexMatrix horodecki_state(double a) {
  const auto ket = [](int i, int j) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
    v(3 * i + j) = 1.0;
    return v;
  };
  Eigen::VectorXcd psi = (ket(0, 0) + ket(1, 1) + ket(2, 2)) / std::sqrt(3.0);
  ComplexMatrix plus = zeros(9, 9), minus = zeros(9, 9);
  for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {2, 0}}) plus += ket(i, j) * ket(i, j).adjoint() / 3.0;
  for (auto [i, j] : {std::pair{1, 0}, {2, 1}, {0, 2}}) minus += ket(i, j) * ket(i, j).adjoint() / 3.0;
  return 2.0 / 7.0 * psi * psi.adjoint() + a / 7.0 * plus + (5.0 - a) / 7.0 * minus;
}

}  // namespace schur_dilate
