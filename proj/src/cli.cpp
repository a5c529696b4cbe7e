#include "schur_dilate/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "schur_dilate/families.hpp"
#include "schur_dilate/json_io.hpp"
#include "schur_dilate/maps.hpp"
#include "schur_dilate/random.hpp"

namespace schur_dilate::cli {

namespace {

using io::Json;

constexpr const char* kVersion = "0.1.0";

std::vector<Eigen::Index> parse_dims(const std::string& text) {
  std::vector<Eigen::Index> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '+')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size() || v <= 0) {
      throw Error(ErrorKind::Parse, "bad block size '" + part + "' in shape '" + text + "'");
    }
    out.push_back(static_cast<Eigen::Index>(v));
  }
  if (out.empty()) throw Error(ErrorKind::Parse, "empty shape");
  return out;
}

ComplexMatrix reconstruct_any(const io::ParamSet& p, const Tolerances& tol) {
  if (p.kind == "row" || p.kind == "column") return reconstruct(p.rowcol, tol);
  if (p.kind == "matrix") return matrix_reconstruct(p.matrix, tol);
  return psd_reconstruct(p.psd, tol);
}

io::ParamSet parametrize_any(const std::string& kind, const ComplexMatrix& a, const BlockShape& shape,
                             const Tolerances& tol) {
  io::ParamSet p;
  p.kind = kind;
  if (kind == "row") p.rowcol = row_parametrize(a, shape, tol);
  else if (kind == "column") p.rowcol = col_parametrize(a, shape, tol);
  else if (kind == "matrix") p.matrix = matrix_parametrize(a, shape, tol);
  else p.psd = psd_parametrize(a, shape, tol);
  return p;
}

void emit(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write '" + *path + "'");
  out << text;
}

struct ParamArgs {
  std::string kind;
  std::string shape;
  std::string in;
  std::optional<std::string> out;
  bool reconstruct = false;
};

int cmd_param(const ParamArgs& args, const Tolerances& tol) {
  const Json input = io::read_file(args.in);
  double err = 0.0;
  Json output;
  if (args.reconstruct) {
    const io::ParamSet p = io::params_from_json(input);
    if (!args.kind.empty() && args.kind != p.kind) {
      throw Error(ErrorKind::UnsupportedCombination, "--kind " + args.kind + " does not match the file's " + p.kind);
    }
    const ComplexMatrix a = reconstruct_any(p, tol);
    const BlockShape shape = p.kind == "row" || p.kind == "column" ? p.rowcol.shape
                             : p.kind == "matrix"                 ? p.matrix.shape
                                                                  : p.psd.shape;
    err = (reconstruct_any(parametrize_any(p.kind, a, shape, tol), tol) - a).norm();
    output = io::matrix_to_json(a);
  } else {
    if (args.shape.empty()) throw Error(ErrorKind::Parse, "--shape is required when parametrizing");
    const ComplexMatrix a = io::matrix_from_json(input);
    const BlockShape shape = parse_shape(args.shape, args.kind, a.rows(), a.cols());
    const io::ParamSet p = parametrize_any(args.kind, a, shape, tol);
    err = (reconstruct_any(p, tol) - a).norm();
    output = io::params_to_json(p);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "roundtrip=%.1e\n", err);
  std::cerr << buf;
  if (args.out) io::write_file(*args.out, output);
  else std::cout << output.dump(2) << '\n';
  return err <= tol.recon_tol ? kOk : kInternal;
}

struct DilateArgs {
  std::optional<std::string> povm;
  std::optional<std::string> channel;
  std::optional<std::string> freedom;
  std::optional<Eigen::Index> pad;
  std::optional<std::string> out;
  std::size_t simulate = 0;
  std::optional<std::uint64_t> seed;
  bool allow_trace_decreasing = false;
};

int cmd_dilate(const DilateArgs& args, const Tolerances& tol) {
  std::optional<Freedom> freedom;
  if (args.freedom) freedom = io::freedom_from_json(io::read_file(*args.freedom));
  Json report;
  DilationResult result;
  bool passed = false;
  if (args.povm) {
    if (args.simulate > 0) throw Error(ErrorKind::UnsupportedCombination, "--simulate applies to channels only");
    const Povm povm = io::povm_from_json(io::read_file(*args.povm), tol);
    result = povm_dilate(povm, freedom, args.pad, tol);
    const PovmReport rep = povm_verify(result, povm);
    passed = rep.passed;
    report = {{"kind", "povm"},         {"size", result.size()},
              {"outcomes", result.outcome_count},
              {"unitarity", rep.unitarity}, {"idempotence", rep.idempotence},
              {"orthogonality", rep.orthogonality}, {"completeness", rep.completeness},
              {"compression", rep.compression},     {"null_compression", rep.null_compression},
              {"passed", rep.passed}};
  } else {
    const KrausChannel ch = io::channel_from_json(io::read_file(*args.channel), tol);
    ChannelDilateOptions opt;
    opt.freedom = freedom;
    opt.pad_to_ancilla = args.pad;
    opt.allow_trace_decreasing = args.allow_trace_decreasing;
    result = channel_dilate(ch, opt, tol);
    const double unitarity = unitarity_defect(result.unitary);
    double worst = 0.0;
    if (args.simulate > 0) {
      if (!args.seed) throw Error(ErrorKind::Parse, "--simulate needs an explicit --seed");
      for (std::size_t i = 0; i < args.simulate; ++i) {
        Rng rng(derive_seed(*args.seed, i));
        const ComplexMatrix rho = random_density(ch.in_dim, rng);
        worst = std::max(worst, (channel_simulate(result, rho, true, tol) - apply_kraus(ch, rho)).norm());
      }
    }
    passed = unitarity <= 1e-10 && worst <= 1e-10;
    report = {{"kind", "channel"},
              {"size", result.size()},
              {"ancilla_dim", result.ancilla_dim},
              {"trace_preserving", ch.trace_preserving},
              {"unitarity", unitarity},
              {"simulated", args.simulate},
              {"max_deviation", worst},
              {"passed", passed}};
  }
  if (args.out) io::write_file(*args.out, io::dilation_to_json(result));
  std::cout << report.dump() << '\n';
  return passed ? kOk : kInternal;
}

struct WitnessArgs {
  std::string family;
  std::string witness;
  std::size_t trials = 0;
  std::optional<std::uint64_t> seed;
  Eigen::Index block_dim = 2;
  Eigen::Index blocks = 0;
  int pattern = 1;
  std::optional<std::string> out;
};

Json trial_line(const std::string& family, std::uint64_t seed, const std::string& witness, const WitnessResult& r) {
  return {{"family", family}, {"seed", seed}, {"witness", witness}, {"min_eig", r.min_eig}, {"passed", r.passed}};
}

int cmd_witness(const WitnessArgs& args, const Tolerances& tol) {
  if (!args.seed) throw Error(ErrorKind::Parse, "--seed is required");
  std::ostringstream lines;
  lines << Json{{"version", kVersion}, {"command", "witness"}}.dump() << '\n';
  double worst = 0.0;
  std::size_t failed = 0;
  std::size_t count = 0;
  const auto record = [&](const Json& line, const WitnessResult& r) {
    lines << line.dump() << '\n';
    worst = count == 0 ? r.min_eig : std::min(worst, r.min_eig);
    failed += r.passed ? 0 : 1;
    ++count;
  };

  if (args.family == "bell-control" || args.family == "horodecki-control") {
    const bool bell = args.family == "bell-control";
    const ComplexMatrix state = bell ? bell_projector() : horodecki_state(3.5);
    const Eigen::Index dim = bell ? 2 : 3;
    const MatrixLinearMap phi = builtin_witness(args.witness, dim);
    if (phi.in_dim() != dim) throw Error(ErrorKind::UnsupportedCombination, "witness does not act on this control");
    const WitnessResult r = witness_check(phi, state, dim, tol);
    record(trial_line(args.family, *args.seed, args.witness, r), r);
  } else {
    const auto family = parse_family(args.family);
    if (!family) throw Error(ErrorKind::UnknownName, "unknown family '" + args.family + "'");
    const MatrixLinearMap phi = builtin_witness(args.witness, args.block_dim);
    if (phi.in_dim() != args.block_dim) {
      throw Error(ErrorKind::UnsupportedCombination,
                  "witness " + args.witness + " acts on " + std::to_string(phi.in_dim()) + "x" +
                      std::to_string(phi.in_dim()) + " blocks, not " + std::to_string(args.block_dim));
    }
    for (std::size_t i = 0; i < args.trials; ++i) {
      FamilyRequest req;
      req.family = *family;
      req.block_dim = args.block_dim;
      req.block_count = args.blocks;
      req.pattern = args.pattern;
      req.seed = derive_seed(*args.seed, i);
      const StateFamilySample s = gen_family(req, tol);
      const WitnessResult r = witness_check(phi, s, tol);
      record(trial_line(args.family, req.seed, args.witness, r), r);
    }
  }
  lines << Json{{"summary", true}, {"trials", count}, {"failed", failed}, {"worst_min_eig", worst},
                {"passed", failed == 0}}
               .dump()
        << '\n';
  emit(args.out, lines.str());
  return failed == 0 ? kOk : kWitnessViolation;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return kIoError;
    case ErrorKind::NoConvergence: return kInternal;
    default: return kPrecondition;
  }
}

}  // namespace

BlockShape parse_shape(const std::string& text, const std::string& kind, Eigen::Index rows, Eigen::Index cols) {
  BlockShape s;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    s.row_dims = parse_dims(text.substr(0, colon));
    s.col_dims = parse_dims(text.substr(colon + 1));
  } else {
    const auto dims = parse_dims(text);
    if (kind == "row") s = {{rows}, dims};
    else if (kind == "column") s = {dims, {cols}};
    else s = {dims, dims};
  }
  if (s.rows() != rows || s.cols() != cols) {
    throw Error(ErrorKind::DimensionMismatch, "shape '" + text + "' does not match a " + std::to_string(rows) + "x" +
                                                  std::to_string(cols) + " matrix");
  }
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"Contraction parameters, unitary dilations and witness batches"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  ParamArgs pa;
  auto* param = app.add_subcommand("param", "Parametrize a matrix or reconstruct one from parameters");
  param->add_option("--kind", pa.kind, "row | column | matrix | psd")
      ->check(CLI::IsMember({"row", "column", "matrix", "psd"}));
  param->add_option("--shape", pa.shape, "block sizes, e.g. 2+2 or 2+1:3+3");
  param->add_option("--in", pa.in, "input JSON")->required();
  param->add_option("--out", pa.out, "output JSON (stdout if omitted)");
  param->add_flag("--reconstruct", pa.reconstruct, "input is a parameter set; write the matrix");

  DilateArgs da;
  auto* dilate = app.add_subcommand("dilate", "Unitary dilation of a POVM or a channel");
  auto* povm_opt = dilate->add_option("--povm", da.povm, "POVM JSON");
  auto* ch_opt = dilate->add_option("--channel", da.channel, "channel JSON");
  povm_opt->excludes(ch_opt);
  dilate->add_option("--freedom", da.freedom, "JSON with unitary factors u1, u2");
  dilate->add_option("--pad", da.pad, "total ancilla dimension")->check(CLI::PositiveNumber);
  dilate->add_option("--out", da.out, "write the dilation JSON here");
  dilate->add_option("--simulate", da.simulate, "compare against the Kraus sum on N random states");
  dilate->add_option("--seed", da.seed, "seed for --simulate");
  dilate->add_flag("--allow-trace-decreasing", da.allow_trace_decreasing, "route the trace deficit to an absorbing sector");

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "Run a positive map over samples of a structured family");
  witness->add_option("--family", wa.family, "family name, bell-control or horodecki-control")->required();
  witness->add_option("--witness", wa.witness, "transpose | reduction | reduction-unital | choi3")->required();
  witness->add_option("--trials", wa.trials, "number of samples")->default_val(100);
  witness->add_option("--seed", wa.seed, "base seed (required)");
  witness->add_option("--block-dim", wa.block_dim, "block size")->default_val(2)->check(CLI::PositiveNumber);
  witness->add_option("--blocks", wa.blocks, "block count (0 = family default)")->default_val(0);
  witness->add_option("--pattern", wa.pattern, "span3 pattern 1..3")->default_val(1);
  witness->add_option("--out", wa.out, "JSONL output (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kIoError;
  }

  try {
    const Tolerances tol = tolerances_from_env();
    if (param->parsed()) {
      if (pa.kind.empty() && !pa.reconstruct) throw Error(ErrorKind::Parse, "--kind is required");
      return cmd_param(pa, tol);
    }
    if (dilate->parsed()) {
      if (!da.povm && !da.channel) throw Error(ErrorKind::Parse, "one of --povm or --channel is required");
      return cmd_dilate(da, tol);
    }
    return cmd_witness(wa, tol);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace schur_dilate::cli
