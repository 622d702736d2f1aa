#pragma once

#include <complex>
#include <string>
#include <vector>

#include "semiclass/qsim/state.hpp"

namespace semiclass::algorithms {

using Complex = std::complex<double>;

enum class Readout { Exact, Shots };

const char* to_string(Readout readout);
Readout parse_readout(const std::string& name);

struct Checkpoint {
  std::string step;
  bool passed = false;
  double metric = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct TraceEstimate {
  int t = 0;
  Complex estimate;
  Complex oracle;
  double defect = 0.0;
  double bound = 0.0;
  /// Set when the target had zero overlap and the value is reported as 0.
  bool exact_zero = false;
};

/// Records the checkpoint and throws a step-labeled Pipeline error on failure.
void require(std::vector<Checkpoint>& log, const std::string& step, double metric, double tolerance,
             const std::string& detail);

/// Same, passing when value > threshold.
void require_above(std::vector<Checkpoint>& log, const std::string& step, double value, double threshold,
                   const std::string& detail);

int ceil_log2(std::uint64_t v);

}  // namespace semiclass::algorithms
