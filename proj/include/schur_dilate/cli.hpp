#pragma once

#include <string>
#include <vector>

#include "schur_dilate/sc_params.hpp"

namespace schur_dilate::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kPrecondition = 2,
  kInternal = 3,
  kWitnessViolation = 4,
};

/// "2+2" or "2+1:3+3". A single list is read along the kind's blocked axis;
/// the other axis is a single block of the given total.
BlockShape parse_shape(const std::string& text, const std::string& kind, Eigen::Index rows, Eigen::Index cols);

int run(int argc, char** argv);

}  // namespace schur_dilate::cli
