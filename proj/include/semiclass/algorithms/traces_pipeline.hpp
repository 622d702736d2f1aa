#pragma once

#include "semiclass/algorithms/common.hpp"
#include "semiclass/classical/map_model.hpp"
#include "semiclass/quantum/unitary.hpp"

namespace semiclass::algorithms {

struct TracesPipelineOptions {
  int t_max = 4;
  Readout readout = Readout::Exact;
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
  int qubit_cap = 24;
};

struct TracesPipelineResult {
  int N = 0;
  int register_bits = 0;
  std::vector<TraceEstimate> estimates;  // t = 1 .. t_max - 1
  std::vector<Checkpoint> checkpoints;
  std::vector<qsim::AmplificationLog> amplifications;
  double d0_weight = 0.0;
  std::string anchor;  // "tr U" or "t=0"
};

/// Traces of U^t from the diagonal-selection circuit on registers A (length),
/// B and C (m = ceil(log2 N) qubits each) and the padding flag D.
TracesPipelineResult run_traces_from_quantum(const quantum::UnitaryMatrix& u, const TracesPipelineOptions& options);
TracesPipelineResult run_traces_from_quantum(const classical::MapModel& model, int N,
                                             const TracesPipelineOptions& options);

struct ProbeResult {
  int N = 0;
  bool integrable_like = false;
  int rounds = 0;              // floor((pi/4) sqrt(N))
  int best_round = 0;
  double best_probability = 0.0;
  double final_probability = 0.0;
  double initial_probability = 0.0;  // |tr U^2|^2 / M^2
  std::vector<double> probabilities;  // after k = 0 .. rounds
};

/// Amplifies the B = 0 trace component for t = 2 and calls the map
/// integrable-like when some round reaches success probability >= 1/2.
ProbeResult integrability_probe(const quantum::UnitaryMatrix& u, int qubit_cap = 24);
ProbeResult integrability_probe(const classical::MapModel& model, int N, int qubit_cap = 24);

}  // namespace semiclass::algorithms
