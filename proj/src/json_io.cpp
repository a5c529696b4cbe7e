#include "schur_dilate/json_io.hpp"

#include <fstream>

namespace schur_dilate::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

Complex scalar_from_json(const Json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  parse_error("expected a number or a [re, im] pair");
}

Json scalar_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

Eigen::Index positive_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) parse_error(std::string("'") + key + "' must be a positive integer");
  return static_cast<Eigen::Index>(v.get<long long>());
}

std::vector<Eigen::Index> dims_from_json(const Json& v, const char* key) {
  if (!v.is_array() || v.empty()) parse_error(std::string("'") + key + "' must be a nonempty list");
  std::vector<Eigen::Index> out;
  for (const auto& d : v) {
    if (!d.is_number_integer() || d.get<long long>() <= 0) parse_error("block sizes must be positive integers");
    out.push_back(static_cast<Eigen::Index>(d.get<long long>()));
  }
  return out;
}

std::vector<ComplexMatrix> matrices_from_json(const Json& v, const char* key) {
  if (!v.is_array()) parse_error(std::string("'") + key + "' must be a list of matrices");
  std::vector<ComplexMatrix> out;
  for (const auto& m : v) out.push_back(matrix_from_json(m));
  return out;
}

Json matrices_to_json(const std::vector<ComplexMatrix>& ms) {
  Json arr = Json::array();
  for (const auto& m : ms) arr.push_back(matrix_to_json(m));
  return arr;
}

std::vector<std::vector<ComplexMatrix>> grid(std::size_t rows, std::size_t cols) {
  return std::vector<std::vector<ComplexMatrix>>(rows, std::vector<ComplexMatrix>(cols));
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& a) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) data.push_back(scalar_to_json(a(i, j)));
  }
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"data", data}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const Eigen::Index r = positive_int(j, "rows");
  const Eigen::Index c = positive_int(j, "cols");
  const Json& data = field(j, "data");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != r * c) {
    parse_error("matrix data must have rows * cols entries");
  }
  ComplexMatrix a(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index k = 0; k < c; ++k) a(i, k) = scalar_from_json(data[i * c + k]);
  }
  if (!is_finite(a)) parse_error("matrix entries must be finite");
  return a;
}

Json shape_to_json(const BlockShape& s) { return {{"row_dims", s.row_dims}, {"col_dims", s.col_dims}}; }

BlockShape shape_from_json(const Json& j) {
  return {dims_from_json(field(j, "row_dims"), "row_dims"), dims_from_json(field(j, "col_dims"), "col_dims")};
}

Json params_to_json(const ParamSet& p) {
  Json out{{"kind", p.kind}};
  if (p.kind == "row" || p.kind == "column") {
    out["shape"] = shape_to_json(p.rowcol.shape);
    out["gammas"] = matrices_to_json(p.rowcol.gammas);
    out["diag_roots"] = Json::array();
  } else if (p.kind == "matrix") {
    std::vector<ComplexMatrix> flat;
    const std::size_t n = p.matrix.shape.row_dims.size();
    const std::size_t m = p.matrix.shape.col_dims.size();
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < n; ++i) flat.push_back(p.matrix.gammas[i][k]);
    }
    out["shape"] = shape_to_json(p.matrix.shape);
    out["gammas"] = matrices_to_json(flat);
    out["diag_roots"] = Json::array();
  } else if (p.kind == "psd") {
    std::vector<ComplexMatrix> flat;
    const std::size_t n = p.psd.block_count();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) flat.push_back(p.psd.gammas[i][k]);
    }
    out["shape"] = shape_to_json(p.psd.shape);
    out["gammas"] = matrices_to_json(flat);
    out["diag_roots"] = matrices_to_json(p.psd.diag_roots);
  } else {
    throw Error(ErrorKind::UnknownName, "unknown parameter kind '" + p.kind + "'");
  }
  return out;
}

ParamSet params_from_json(const Json& j) {
  ParamSet p;
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) parse_error("'kind' must be a string");
  p.kind = kind.get<std::string>();
  const BlockShape shape = shape_from_json(field(j, "shape"));
  const auto gammas = matrices_from_json(field(j, "gammas"), "gammas");
  if (p.kind == "row" || p.kind == "column") {
    p.rowcol.orientation = p.kind == "row" ? Orientation::Row : Orientation::Column;
    p.rowcol.shape = shape;
    p.rowcol.gammas = gammas;
    const std::size_t expected = p.kind == "row" ? shape.col_dims.size() : shape.row_dims.size();
    if (gammas.size() != expected) parse_error("gamma count does not match the shape");
  } else if (p.kind == "matrix") {
    const std::size_t n = shape.row_dims.size();
    const std::size_t m = shape.col_dims.size();
    if (gammas.size() != n * m) parse_error("matrix parameters need one gamma per block");
    p.matrix.shape = shape;
    p.matrix.gammas = grid(n, m);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < n; ++i) p.matrix.gammas[i][k] = gammas[k * n + i];
    }
  } else if (p.kind == "psd") {
    const auto roots = matrices_from_json(field(j, "diag_roots"), "diag_roots");
    const std::size_t n = roots.size();
    if (shape.row_dims.size() != n || gammas.size() != n * (n - 1) / 2) {
      parse_error("psd parameters need one root per block and one gamma per pair i < j");
    }
    p.psd.shape = shape;
    p.psd.diag_roots = roots;
    p.psd.gammas = grid(n, n);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) p.psd.gammas[i][k] = gammas[idx++];
    }
  } else {
    throw Error(ErrorKind::UnknownName, "unknown parameter kind '" + p.kind + "'");
  }
  return p;
}

Povm povm_from_json(const Json& j, const Tolerances& tol) {
  const Eigen::Index dim = positive_int(j, "dim");
  const Json& vs = field(j, "vectors");
  if (!vs.is_array() || vs.empty()) parse_error("'vectors' must be a nonempty list");
  std::vector<Eigen::VectorXcd> vectors;
  for (const auto& v : vs) {
    if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != dim) parse_error("each vector must have 'dim' entries");
    Eigen::VectorXcd x(dim);
    for (Eigen::Index i = 0; i < dim; ++i) x(i) = scalar_from_json(v[i]);
    vectors.push_back(x);
  }
  return povm_from_vectors(vectors, tol);
}

Json povm_to_json(const Povm& p) {
  Json vs = Json::array();
  for (const auto& v : p.vectors) {
    Json x = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) x.push_back(scalar_to_json(v(i)));
    vs.push_back(x);
  }
  return {{"dim", p.dim}, {"vectors", vs}};
}

KrausChannel channel_from_json(const Json& j, const Tolerances& tol) {
  const Eigen::Index n = positive_int(j, "in_dim");
  const Eigen::Index m = positive_int(j, "out_dim");
  const auto kraus = matrices_from_json(field(j, "kraus"), "kraus");
  if (kraus.empty()) parse_error("'kraus' must be nonempty");
  for (const auto& e : kraus) {
    if (e.rows() != m || e.cols() != n) parse_error("each Kraus operator must be out_dim x in_dim");
  }
  return make_channel(kraus, tol);
}

Json channel_to_json(const KrausChannel& ch) {
  return {{"in_dim", ch.in_dim}, {"out_dim", ch.out_dim}, {"kraus", matrices_to_json(ch.kraus)}};
}

Freedom freedom_from_json(const Json& j) {
  return {matrix_from_json(field(j, "u1")), matrix_from_json(field(j, "u2"))};
}

Json dilation_to_json(const DilationResult& r) {
  Json out{{"kind", r.kind == DilationKind::Povm ? "povm" : "channel"},
           {"unitary", matrix_to_json(r.unitary)},
           {"system_embedding", {{"offset", r.system_offset}, {"size", r.system_dim}}},
           {"in_dim", r.in_dim},
           {"out_dim", r.out_dim},
           {"ancilla_dim", r.ancilla_dim},
           {"outcome_count", r.outcome_count},
           {"freedom", {{"u1", matrix_to_json(r.freedom.u1)}, {"u2", matrix_to_json(r.freedom.u2)}}}};
  if (r.kind == DilationKind::Channel) {
    out["absorbing_rows"] = {r.absorbing_begin, r.absorbing_end};
  }
  return out;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Parse, "write to '" + path + "' failed");
}

}  // namespace schur_dilate::io
