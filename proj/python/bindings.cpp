#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schur_dilate/contraction.hpp"
#include "schur_dilate/dilation.hpp"
#include "schur_dilate/families.hpp"
#include "schur_dilate/maps.hpp"
#include "schur_dilate/sc_params.hpp"

namespace py = pybind11;
using namespace schur_dilate;
using Dims = std::vector<Eigen::Index>;

namespace {

BlockShape shape_of(const ComplexMatrix& t, const Dims& rows, const Dims& cols) {
  return {rows.empty() ? Dims{t.rows()} : rows, cols.empty() ? Dims{t.cols()} : cols};
}

Family family_or_throw(const std::string& name) {
  const auto f = parse_family(name);
  if (!f) throw Error(ErrorKind::UnknownName, "unknown family '" + name + "'");
  return *f;
}

std::optional<Freedom> freedom_of(const std::optional<ComplexMatrix>& u1, const std::optional<ComplexMatrix>& u2) {
  if (!u1 && !u2) return std::nullopt;
  if (!u1 || !u2) throw Error(ErrorKind::DimensionMismatch, "pass both u1 and u2 or neither");
  return Freedom{*u1, *u2};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Schur parametrization of contractions and unitary dilations";

  static py::exception<Error> error_type(m, "SchurDilateError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<BlockShape>(m, "BlockShape")
      .def(py::init<Dims, Dims>(), py::arg("row_dims"), py::arg("col_dims"))
      .def_readwrite("row_dims", &BlockShape::row_dims)
      .def_readwrite("col_dims", &BlockShape::col_dims)
      .def("__repr__", [](const BlockShape& s) {
        return "BlockShape(" + py::repr(py::cast(s.row_dims)).cast<std::string>() + ", " +
               py::repr(py::cast(s.col_dims)).cast<std::string>() + ")";
      });

  py::class_<RowColParams>(m, "RowColParams")
      .def_property_readonly("orientation",
                             [](const RowColParams& p) { return p.orientation == Orientation::Row ? "row" : "column"; })
      .def_readonly("gammas", &RowColParams::gammas)
      .def_readonly("shape", &RowColParams::shape);
  py::class_<MatrixContractionParams>(m, "MatrixParams")
      .def_readonly("gammas", &MatrixContractionParams::gammas)
      .def_readonly("shape", &MatrixContractionParams::shape);
  py::class_<PositiveSCParams>(m, "PsdParams")
      .def_readonly("diag_roots", &PositiveSCParams::diag_roots)
      .def_readonly("gammas", &PositiveSCParams::gammas)
      .def_readonly("shape", &PositiveSCParams::shape);

  m.def("julia", [](const ComplexMatrix& t) { return julia(t); }, py::arg("t"));
  m.def(
      "defects",
      [](const ComplexMatrix& t) {
        const DefectPair d = defects(t);
        return py::make_tuple(d.d_t, d.d_t_star);
      },
      py::arg("t"), "Return (D_T, D_T*).");

  m.def(
      "row_parametrize", [](const ComplexMatrix& t, const Dims& col_dims) {
        return row_parametrize(t, shape_of(t, {}, col_dims));
      },
      py::arg("t"), py::arg("col_dims"));
  m.def(
      "col_parametrize", [](const ComplexMatrix& t, const Dims& row_dims) {
        return col_parametrize(t, shape_of(t, row_dims, {}));
      },
      py::arg("t"), py::arg("row_dims"));
  m.def("reconstruct", [](const RowColParams& p) { return reconstruct(p); }, py::arg("params"));
  m.def(
      "matrix_parametrize", [](const ComplexMatrix& t, const Dims& row_dims, const Dims& col_dims) {
        return matrix_parametrize(t, shape_of(t, row_dims, col_dims));
      },
      py::arg("t"), py::arg("row_dims"), py::arg("col_dims"));
  m.def("matrix_reconstruct", [](const MatrixContractionParams& p) { return matrix_reconstruct(p); },
        py::arg("params"));
  m.def(
      "psd_parametrize", [](const ComplexMatrix& a, const Dims& dims) {
        return psd_parametrize(a, BlockShape::square(dims));
      },
      py::arg("a"), py::arg("dims"));
  m.def("psd_reconstruct", [](const PositiveSCParams& p) { return psd_reconstruct(p); }, py::arg("params"));

  // Dilations.
  py::class_<DilationResult>(m, "Dilation")
      .def_property_readonly("kind",
                             [](const DilationResult& r) { return r.kind == DilationKind::Povm ? "povm" : "channel"; })
      .def_readonly("unitary", &DilationResult::unitary)
      .def_readonly("ancilla_dim", &DilationResult::ancilla_dim)
      .def_readonly("outcome_count", &DilationResult::outcome_count)
      .def_property_readonly("absorbing_rows",
                             [](const DilationResult& r) { return py::make_tuple(r.absorbing_begin, r.absorbing_end); })
      .def_property_readonly("size", &DilationResult::size);

  m.def(
      "povm_dilate",
      [](const std::vector<Eigen::VectorXcd>& vectors, std::optional<ComplexMatrix> u1,
         std::optional<ComplexMatrix> u2, std::optional<Eigen::Index> pad) {
        return povm_dilate(povm_from_vectors(vectors), freedom_of(u1, u2), pad);
      },
      py::arg("vectors"), py::kw_only(), py::arg("u1") = py::none(), py::arg("u2") = py::none(),
      py::arg("pad") = py::none());
  m.def(
      "povm_verify",
      [](const DilationResult& r, const std::vector<Eigen::VectorXcd>& vectors, double threshold) {
        const PovmReport rep = povm_verify(r, povm_from_vectors(vectors), threshold);
        py::dict d;
        d["unitarity"] = rep.unitarity;
        d["idempotence"] = rep.idempotence;
        d["orthogonality"] = rep.orthogonality;
        d["completeness"] = rep.completeness;
        d["compression"] = rep.compression;
        d["null_compression"] = rep.null_compression;
        d["passed"] = rep.passed;
        return d;
      },
      py::arg("dilation"), py::arg("vectors"), py::arg("threshold") = 1e-9);

  m.def(
      "channel_dilate",
      [](const std::vector<ComplexMatrix>& kraus, std::optional<ComplexMatrix> u1, std::optional<ComplexMatrix> u2,
         std::optional<Eigen::Index> pad, bool allow_trace_decreasing) {
        ChannelDilateOptions opt;
        opt.freedom = freedom_of(u1, u2);
        opt.pad_to_ancilla = pad;
        opt.allow_trace_decreasing = allow_trace_decreasing;
        return channel_dilate(make_channel(kraus), opt);
      },
      py::arg("kraus"), py::kw_only(), py::arg("u1") = py::none(), py::arg("u2") = py::none(),
      py::arg("pad") = py::none(), py::arg("allow_trace_decreasing") = false);
  m.def(
      "channel_simulate",
      [](const DilationResult& r, const ComplexMatrix& rho, bool exclude_absorbing) {
        return channel_simulate(r, rho, exclude_absorbing);
      },
      py::arg("dilation"), py::arg("rho"), py::arg("exclude_absorbing") = true);
  m.def(
      "apply_kraus", [](const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho) {
        return apply_kraus(make_channel(kraus), rho);
      },
      py::arg("kraus"), py::arg("rho"));

  // Witness harness.
  m.def("builtin_witness_names", &builtin_witness_names);
  m.def(
      "gen_family",
      [](const std::string& family, std::uint64_t seed, Eigen::Index block_dim, Eigen::Index block_count,
         int pattern) {
        FamilyRequest req;
        req.family = family_or_throw(family);
        req.seed = seed;
        req.block_dim = block_dim;
        req.block_count = block_count;
        req.pattern = pattern;
        const StateFamilySample s = gen_family(req);
        return py::make_tuple(s.matrix, s.block_count);
      },
      py::arg("family"), py::arg("seed"), py::arg("block_dim") = 2, py::arg("block_count") = 0,
      py::arg("pattern") = 1, "Return (matrix, block_count).");
  m.def(
      "witness_check",
      [](const std::string& witness, const ComplexMatrix& a, Eigen::Index block_count) {
        if (block_count <= 0 || a.rows() % block_count != 0) {
          throw Error(ErrorKind::DimensionMismatch, "block_count must divide the matrix size");
        }
        const WitnessResult w = witness_check(builtin_witness(witness, a.rows() / block_count), a, block_count);
        return py::make_tuple(w.passed, w.min_eig);
      },
      py::arg("witness"), py::arg("matrix"), py::arg("block_count"), "Return (passed, min_eig).");
  m.def("bell_projector", &bell_projector);
  m.def("horodecki_state", &horodecki_state, py::arg("a"));
}
