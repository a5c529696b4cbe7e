#pragma once

// JSON encodings shared by the CLI and the Python bindings.
//
// Matrix: {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
// A bare number is accepted wherever a [re, im] pair is expected.

#include <string>

#include <json.hpp>

#include "schur_dilate/dilation.hpp"
#include "schur_dilate/sc_params.hpp"

namespace schur_dilate::io {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const Json& j);

Json shape_to_json(const BlockShape& s);
BlockShape shape_from_json(const Json& j);

/// Tagged parameter set. Matrix gammas are listed column by column (block
/// column k holds entries k*n .. k*n + n - 1); psd gammas row by row over i < j.
struct ParamSet {
  std::string kind;  // row | column | matrix | psd
  RowColParams rowcol;
  MatrixContractionParams matrix;
  PositiveSCParams psd;
};

Json params_to_json(const ParamSet& p);
ParamSet params_from_json(const Json& j);

Povm povm_from_json(const Json& j, const Tolerances& tol = {});
Json povm_to_json(const Povm& p);
KrausChannel channel_from_json(const Json& j, const Tolerances& tol = {});
Json channel_to_json(const KrausChannel& ch);
Freedom freedom_from_json(const Json& j);
Json dilation_to_json(const DilationResult& r);

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace schur_dilate::io
