#include "semiclass/algorithms/common.hpp"

#include <sstream>

#include "semiclass/error.hpp"

namespace semiclass::algorithms {

const char* to_string(Readout readout) { return readout == Readout::Exact ? "exact" : "shots"; }

Readout parse_readout(const std::string& name) {
  if (name == "exact") return Readout::Exact;
  if (name == "shots") return Readout::Shots;
  throw Error(ErrorKind::InvalidArgument, "readout must be exact or shots, got " + name);
}

void require(std::vector<Checkpoint>& log, const std::string& step, double metric, double tolerance,
             const std::string& detail) {
  const bool ok = metric <= tolerance;
  log.push_back({step, ok, metric, tolerance, detail});
  if (!ok) {
    std::ostringstream os;
    os << "step " << step << " checkpoint failed: " << detail << " (" << metric << " > " << tolerance << ")";
    throw Error(ErrorKind::Pipeline, os.str());
  }
}

void require_above(std::vector<Checkpoint>& log, const std::string& step, double value, double threshold,
                   const std::string& detail) {
  const bool ok = value > threshold;
  log.push_back({step, ok, value, threshold, detail});
  if (!ok) {
    std::ostringstream os;
    os << "step " << step << " checkpoint failed: " << detail << " (" << value << " <= " << threshold << ")";
    throw Error(ErrorKind::Pipeline, os.str());
  }
}

int ceil_log2(std::uint64_t v) {
  int b = 0;
  while ((std::uint64_t{1} << b) < v) ++b;
  return b;
}

}  // namespace semiclass::algorithms
