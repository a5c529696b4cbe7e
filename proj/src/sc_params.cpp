#include "schur_dilate/sc_params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "schur_dilate/contraction.hpp"

namespace schur_dilate {

namespace {

void require_shape(const ComplexMatrix& t, const BlockShape& shape) {
  shape.validate();
  if (t.rows() != shape.rows() || t.cols() != shape.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix is " + std::to_string(t.rows()) + "x" +
                                                  std::to_string(t.cols()) + " but shape is " +
                                                  std::to_string(shape.rows()) + "x" +
                                                  std::to_string(shape.cols()));
  }
}

RowColParams adjoint_params(const RowColParams& p) {
  RowColParams out;
  out.orientation = p.orientation == Orientation::Row ? Orientation::Column : Orientation::Row;
  out.shape = {p.shape.col_dims, p.shape.row_dims};
  out.gammas.reserve(p.gammas.size());
  for (const auto& g : p.gammas) out.gammas.push_back(g.adjoint());
  return out;
}

void check_gammas(const std::vector<ComplexMatrix>& gammas, const Tolerances& tol) {
  for (const auto& g : gammas) require_contraction(g, tol, "stored parameter");
}

DefectFactors row_defect_factors(const RowColParams& p, const Tolerances& tol) {
  const std::size_t n = p.gammas.size();
  const Eigen::Index r = p.shape.rows();
  const auto& cd = p.shape.col_dims;
  std::vector<DefectPair> d;
  d.reserve(n);
  for (const auto& g : p.gammas) d.push_back(defects(g, tol));

  DefectFactors out;
  out.d_t = zeros(p.shape.cols(), p.shape.cols());
  for (std::size_t j = 0; j < n; ++j) {
    const Eigen::Index cj = offset_of(cd, j);
    out.d_t.block(cj, cj, cd[j], cd[j]) = d[j].d_t;
    // Walk down column j: middle = D_{G_{j+1}*} ... D_{G_{i-1}*}.
    ComplexMatrix middle = identity(r);
    for (std::size_t i = j + 1; i < n; ++i) {
      out.d_t.block(offset_of(cd, i), cj, cd[i], cd[j]) = -p.gammas[i].adjoint() * middle * p.gammas[j];
      middle = middle * d[i].d_t_star;
    }
  }
  out.d_t_star = identity(r);
  for (const auto& pair : d) out.d_t_star = out.d_t_star * pair.d_t_star;
  return out;
}

}  // namespace

void BlockShape::validate() const {
  if (row_dims.empty() || col_dims.empty()) throw Error(ErrorKind::DimensionMismatch, "empty block shape");
  for (auto d : row_dims)
    if (d <= 0) throw Error(ErrorKind::DimensionMismatch, "block sizes must be positive");
  for (auto d : col_dims)
    if (d <= 0) throw Error(ErrorKind::DimensionMismatch, "block sizes must be positive");
}

RowColParams PositiveSCParams::row_params(std::size_t i) const {
  RowColParams p;
  p.orientation = Orientation::Row;
  p.shape.row_dims = {shape.row_dims[i]};
  for (std::size_t j = i + 1; j < block_count(); ++j) {
    p.shape.col_dims.push_back(shape.col_dims[j]);
    p.gammas.push_back(gammas[i][j]);
  }
  return p;
}

RowColParams row_parametrize(const ComplexMatrix& t, const BlockShape& shape, const Tolerances& tol) {
  require_shape(t, shape);
  if (shape.row_dims.size() != 1) {
    throw Error(ErrorKind::ShapeUnsupported, "a row contraction has a single block row");
  }
  require_contraction(t, tol, "row contraction");
  RowColParams out;
  out.orientation = Orientation::Row;
  out.shape = shape;
  ComplexMatrix acc = identity(t.rows());  // D_{G_1*} ... D_{G_{k-1}*}
  for (std::size_t k = 0; k < shape.col_dims.size(); ++k) {
    const ComplexMatrix tk = t.middleCols(offset_of(shape.col_dims, k), shape.col_dims[k]);
    ComplexMatrix g = solve_left_contraction_factor(acc, tk, tol);
    acc = acc * defects(g, tol).d_t_star;
    out.gammas.push_back(std::move(g));
  }
  return out;
}

ComplexMatrix row_reconstruct(const RowColParams& params, const Tolerances& tol) {
  if (params.orientation != Orientation::Row) return col_reconstruct(params, tol);
  params.shape.validate();
  check_gammas(params.gammas, tol);
  const Eigen::Index r = params.shape.rows();
  ComplexMatrix t(r, params.shape.cols());
  ComplexMatrix acc = identity(r);
  for (std::size_t k = 0; k < params.gammas.size(); ++k) {
    t.middleCols(offset_of(params.shape.col_dims, k), params.shape.col_dims[k]) = acc * params.gammas[k];
    acc = acc * defects(params.gammas[k], tol).d_t_star;
  }
  return t;
}

// Column contractions are adjoints of row contractions: if T* has row
// parameters G'_k then T has column parameters G'_k*.
RowColParams col_parametrize(const ComplexMatrix& t, const BlockShape& shape, const Tolerances& tol) {
  require_shape(t, shape);
  if (shape.col_dims.size() != 1) {
    throw Error(ErrorKind::ShapeUnsupported, "a column contraction has a single block column");
  }
  return adjoint_params(row_parametrize(t.adjoint(), {shape.col_dims, shape.row_dims}, tol));
}

ComplexMatrix col_reconstruct(const RowColParams& params, const Tolerances& tol) {
  if (params.orientation != Orientation::Column) return row_reconstruct(params, tol);
  return row_reconstruct(adjoint_params(params), tol).adjoint();
}

ComplexMatrix reconstruct(const RowColParams& params, const Tolerances& tol) {
  return params.orientation == Orientation::Row ? row_reconstruct(params, tol) : col_reconstruct(params, tol);
}

DefectFactors defect_factors(const RowColParams& params, const Tolerances& tol) {
  if (params.orientation == Orientation::Row) return row_defect_factors(params, tol);
  const DefectFactors mirrored = row_defect_factors(adjoint_params(params), tol);
  return {mirrored.d_t_star, mirrored.d_t};
}

MatrixContractionParams matrix_parametrize(const ComplexMatrix& t, const BlockShape& shape,
                                           const Tolerances& tol) {
  require_shape(t, shape);
  require_contraction(t, tol, "matrix contraction");
  const std::size_t n = shape.row_dims.size();
  const std::size_t m = shape.col_dims.size();
  MatrixContractionParams out;
  out.shape = shape;
  out.gammas.assign(n, std::vector<ComplexMatrix>(m));
  ComplexMatrix acc = identity(t.rows());  // F_1 ... F_{j-1}
  for (std::size_t j = 0; j < m; ++j) {
    const ComplexMatrix yj = t.middleCols(offset_of(shape.col_dims, j), shape.col_dims[j]);
    const ComplexMatrix cj = solve_left_contraction_factor(acc, yj, tol);
    const RowColParams col = col_parametrize(cj, {shape.row_dims, {shape.col_dims[j]}}, tol);
    for (std::size_t i = 0; i < n; ++i) out.gammas[i][j] = col.gammas[i];
    acc = acc * defect_factors(col, tol).d_t_star;
  }
  return out;
}

ComplexMatrix matrix_reconstruct(const MatrixContractionParams& params, const Tolerances& tol) {
  params.shape.validate();
  const std::size_t n = params.shape.row_dims.size();
  const std::size_t m = params.shape.col_dims.size();
  if (params.gammas.size() != n) throw Error(ErrorKind::DimensionMismatch, "parameter grid row count");
  ComplexMatrix t(params.shape.rows(), params.shape.cols());
  ComplexMatrix acc = identity(params.shape.rows());
  for (std::size_t j = 0; j < m; ++j) {
    RowColParams col;
    col.orientation = Orientation::Column;
    col.shape = {params.shape.row_dims, {params.shape.col_dims[j]}};
    for (std::size_t i = 0; i < n; ++i) {
      if (params.gammas[i].size() != m) throw Error(ErrorKind::DimensionMismatch, "parameter grid column count");
      col.gammas.push_back(params.gammas[i][j]);
    }
    t.middleCols(offset_of(params.shape.col_dims, j), params.shape.col_dims[j]) = acc * col_reconstruct(col, tol);
    acc = acc * defect_factors(col, tol).d_t_star;
  }
  return t;
}

ComplexMatrix two_by_two_closed_form(const ComplexMatrix& g11, const ComplexMatrix& g12,
                                     const ComplexMatrix& g21, const ComplexMatrix& g22,
                                     const Tolerances& tol) {
  const DefectPair d11 = defects(g11, tol);
  const DefectPair d12 = defects(g12, tol);
  const DefectPair d21 = defects(g21, tol);
  defects(g22, tol);  // contraction check
  const Eigen::Index k1 = g11.rows(), k2 = g21.rows();
  const Eigen::Index h1 = g11.cols(), h2 = g12.cols();
  ComplexMatrix t(k1 + k2, h1 + h2);
  t.topLeftCorner(k1, h1) = g11;
  t.topRightCorner(k1, h2) = d11.d_t_star * g12;
  t.bottomLeftCorner(k2, h1) = g21 * d11.d_t;
  t.bottomRightCorner(k2, h2) = -g21 * g11.adjoint() * g12 + d21.d_t_star * g22 * d12.d_t;
  return t;
}

DefectFactors matrix_defects_2x2(const MatrixContractionParams& params, const Tolerances& tol) {
  if (params.shape.row_dims.size() != 2 || params.shape.col_dims.size() != 2) {
    throw Error(ErrorKind::ShapeUnsupported, "matrix_defects_2x2 needs a 2x2 block grid");
  }
  // Factor of I - T*T for parameters in positions (11, 12, 21, 22).
  const auto factor = [&tol](const ComplexMatrix& g11, const ComplexMatrix& g12, const ComplexMatrix& g21,
                             const ComplexMatrix& g22) {
    const DefectPair d11 = defects(g11, tol);
    const DefectPair d12 = defects(g12, tol);
    const DefectPair d21 = defects(g21, tol);
    const DefectPair d22 = defects(g22, tol);
    const Eigen::Index h1 = g11.cols(), h2 = g12.cols();
    ComplexMatrix f = zeros(h1 + h2, h1 + h2);
    f.topLeftCorner(h1, h1) = d11.d_t * d21.d_t;
    f.bottomLeftCorner(h2, h1) = -g12.adjoint() * g11 * d21.d_t - d12.d_t * g22.adjoint() * g21;
    f.bottomRightCorner(h2, h2) = d12.d_t * d22.d_t;
    return f;
  };
  const auto& g = params.gammas;
  DefectFactors out;
  out.d_t = factor(g[0][0], g[0][1], g[1][0], g[1][1]);
  // T* has the 2x2 parameters (G11*, G21*, G12*, G22*).
  out.d_t_star = factor(g[0][0].adjoint(), g[1][0].adjoint(), g[0][1].adjoint(), g[1][1].adjoint());
  return out;
}

UnitaryFactors unitary_factorize(const ComplexMatrix& u, const BlockShape& shape, const Tolerances& tol) {
  require_shape(u, shape);
  if (shape.row_dims.size() != 2 || shape.col_dims.size() != 2) {
    throw Error(ErrorKind::ShapeUnsupported, "unitary_factorize needs a 2x2 block shape");
  }
  const Eigen::Index k1 = shape.row_dims[0], k2 = shape.row_dims[1];
  const Eigen::Index h1 = shape.col_dims[0], h2 = shape.col_dims[1];
  if (k1 != h2 || k2 != h1) {
    throw Error(ErrorKind::ShapeUnsupported, "off-diagonal blocks must be square");
  }
  if (unitarity_defect(u) > std::max(tol.psd_tol, 1e-10) * std::max<double>(1.0, std::sqrt(double(u.rows())))) {
    throw Error(ErrorKind::NotUnitary, "input is not unitary");
  }
  const ComplexMatrix a = u.topLeftCorner(k1, h1);
  const ComplexMatrix b = u.topRightCorner(k1, h2);
  const ComplexMatrix c = u.bottomLeftCorner(k2, h1);
  const ComplexMatrix d = u.bottomRightCorner(k2, h2);

  UnitaryFactors out;
  out.gamma1 = clip_to_contraction(a, tol.contraction_slack);
  const DefectPair d1 = defects(out.gamma1, tol);
  // C = G3 D_{G1} with C*C = D_{G1}^2, so G3 is a unitary polar factor of C.
  out.gamma3 = polar_unitary(c);
  // [B; D] = W G2 with W = [D_{G1*}; -G3 G1*] an isometry.
  const ComplexMatrix g2 = d1.d_t_star * b - out.gamma1 * out.gamma3.adjoint() * d;
  out.gamma2 = polar_unitary(g2);
  return out;
}

ComplexMatrix unitary_assemble(const UnitaryFactors& f, const Tolerances& tol) {
  const ComplexMatrix j = julia(f.gamma1, tol);
  const Eigen::Index k1 = f.gamma1.rows(), h1 = f.gamma1.cols();
  ComplexMatrix left = identity(j.rows());
  left.bottomRightCorner(f.gamma3.rows(), f.gamma3.cols()) = f.gamma3;
  ComplexMatrix right = identity(j.cols());
  right.bottomRightCorner(f.gamma2.rows(), f.gamma2.cols()) = f.gamma2;
  if (f.gamma3.cols() != h1 || f.gamma2.rows() != k1) {
    throw Error(ErrorKind::DimensionMismatch, "unitary factors are not conformable");
  }
  return left * j * right;
}

namespace {

// Cholesky factor of the trailing block k..n-1 given the factor of k+1..n-1.
ComplexMatrix extend_cholesky(const ComplexMatrix& root, const RowColParams& row, const ComplexMatrix& trailing,
                              const Tolerances& tol) {
  const Eigen::Index dk = root.rows();
  const Eigen::Index rest = trailing.rows();
  ComplexMatrix l = zeros(dk + rest, dk + rest);
  l.topLeftCorner(dk, dk) = root;
  if (rest == 0) return l;
  const ComplexMatrix r = row_reconstruct(row, tol);
  l.topRightCorner(dk, rest) = r * trailing;
  // Upper factor with U*U = I - R*R: adjoint of the lower row-defect factor.
  l.bottomRightCorner(rest, rest) = row_defect_factors(row, tol).d_t.adjoint() * trailing;
  return l;
}

// Factors built by the recursion carry square-root rounding, so null
// directions show up near sqrt(eps) rather than eps. Dropping a singular
// value s of a factor moves its Gram matrix by s^2.
Tolerances factor_rank_tol(const ComplexMatrix& f, const Tolerances& tol) {
  Tolerances t = tol;
  if (t.rank_tol <= 0.0 && f.size() > 0) {
    t.rank_tol = std::sqrt(static_cast<double>(f.rows()) * std::numeric_limits<double>::epsilon()) * op_norm(f);
  }
  return t;
}

// Rank-deficient blocks make R partly isometric. Singular values a hair off
// 1 would turn into sqrt-sized defect errors, so pin them to exactly 1.
ComplexMatrix snap_to_boundary(const ComplexMatrix& r, double slack) {
  if (r.size() == 0) return r;
  Eigen::JacobiSVD<ComplexMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  RealVector s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) >= 1.0 - slack) s(i) = 1.0;
  }
  return svd.matrixU() * s.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
}

}  // namespace

PositiveSCParams psd_parametrize(const ComplexMatrix& a, const BlockShape& shape, const Tolerances& tol) {
  require_shape(a, shape);
  if (shape.row_dims != shape.col_dims) {
    throw Error(ErrorKind::ShapeUnsupported, "positive matrices need matching row and column partitions");
  }
  require_hermitian(a, tol.psd_tol, "positive matrix");
  const PsdCheck check = is_psd(a, tol);
  if (!check.psd) {
    throw Error(ErrorKind::NotPSD, "min eigenvalue " + std::to_string(check.min_eigenvalue));
  }
  const ComplexMatrix h = hermitian_part(a);
  const auto& dims = shape.row_dims;
  const std::size_t n = dims.size();

  PositiveSCParams out;
  out.shape = shape;
  out.diag_roots.resize(n);
  out.gammas.assign(n, std::vector<ComplexMatrix>(n));
  for (std::size_t i = 0; i < n; ++i) out.diag_roots[i] = sqrt_psd(block_of(h, dims, dims, i, i), tol);

  // Bottom-up over trailing principal submatrices.
  ComplexMatrix trailing = out.diag_roots[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    const Eigen::Index off = offset_of(dims, k + 1);
    const Eigen::Index rest = shape.rows() - off;
    const ComplexMatrix a_row = h.block(offset_of(dims, k), off, dims[k], rest);
    const ComplexMatrix& root = out.diag_roots[k];
    // a_row = root R trailing: solve R trailing = root^+ a_row, then R.
    // A passed the global positivity check, so a contraction R exists; any
    // norm excess here is rounding amplified by small singular values.
    const ComplexMatrix lhs = pinv(root, factor_rank_tol(root, tol)) * a_row;
    const ComplexMatrix raw = lhs * pinv(trailing, factor_rank_tol(trailing, tol));
    const ComplexMatrix r = snap_to_boundary(raw, tol.contraction_slack);
    BlockShape row_shape{{dims[k]}, {dims.begin() + static_cast<std::ptrdiff_t>(k) + 1, dims.end()}};
    const RowColParams row = row_parametrize(r, row_shape, tol);
    for (std::size_t j = k + 1; j < n; ++j) out.gammas[k][j] = row.gammas[j - k - 1];
    trailing = extend_cholesky(root, row, trailing, tol);
  }
  return out;
}

ComplexMatrix psd_cholesky(const PositiveSCParams& params, const Tolerances& tol) {
  params.shape.validate();
  const std::size_t n = params.block_count();
  if (n == 0 || params.shape.row_dims.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "parameter block count does not match shape");
  }
  ComplexMatrix trailing = params.diag_roots[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    trailing = extend_cholesky(params.diag_roots[k], params.row_params(k), trailing, tol);
  }
  return trailing;
}

ComplexMatrix psd_reconstruct(const PositiveSCParams& params, const Tolerances& tol) {
  const ComplexMatrix l = psd_cholesky(params, tol);
  return make_exactly_hermitian(l.adjoint() * l);
}

PositiveSCParams tensor_sc(const PositiveSCParams& scalar_params, const ComplexMatrix& b, const Tolerances& tol) {
  const std::size_t n = scalar_params.block_count();
  for (auto d : scalar_params.shape.row_dims) {
    if (d != 1) throw Error(ErrorKind::ShapeUnsupported, "tensor_sc needs scalar (1x1) blocks");
  }
  const Eigen::Index d = b.cols();
  const ComplexMatrix root_a = sqrt_psd(b.adjoint() * b, tol);
  PositiveSCParams out;
  out.shape = BlockShape::square(std::vector<Eigen::Index>(n, d));
  out.gammas.assign(n, std::vector<ComplexMatrix>(n));
  for (std::size_t i = 0; i < n; ++i) {
    // L_ii is the positive root of m_ii, so m_ii = L_ii^2.
    const double lii = scalar_params.diag_roots[i](0, 0).real();
    out.diag_roots.push_back(std::abs(lii) * root_a);
    for (std::size_t j = i + 1; j < n; ++j) out.gammas[i][j] = scalar_params.gammas[i][j](0, 0) * identity(d);
  }
  return out;
}

ComplexMatrix dominated_factor(const PositiveSCParams& a_params, const MatrixContractionParams& gamma_params,
                               const Tolerances& tol) {
  const ComplexMatrix l = psd_cholesky(a_params, tol);
  const ComplexMatrix g = matrix_reconstruct(gamma_params, tol);
  if (g.cols() != l.rows() || gamma_params.shape.col_dims != a_params.shape.row_dims) {
    throw Error(ErrorKind::DimensionMismatch, "contraction column blocks must match the positive matrix blocks");
  }
  return g * l;
}

}  // namespace schur_dilate
