#pragma once

#include <optional>

#include "semiclass/algorithms/common.hpp"
#include "semiclass/classical/map_model.hpp"
#include "semiclass/semiclassics/trace_formula.hpp"

namespace semiclass::algorithms {

struct SpectrumPipelineConfig {
  classical::MapModel model = classical::MapModel::baker();
  int t_max = 4;
  int N = 16;
  int phase_bits = 8;
  int amplitude_bits = 8;
  /// Computed from the model when empty.
  std::optional<semiclassics::ScalingConstants> constants;
  Readout readout = Readout::Exact;
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
  int qubit_cap = 24;
};

struct PipelineResult {
  std::vector<TraceEstimate> estimates;  // t = 1 .. t_max - 1
  std::vector<Checkpoint> checkpoints;
  std::vector<qsim::AmplificationLog> amplifications;
  double residual_d_mass = 0.0;
  std::vector<std::string> warnings;
  semiclassics::ScalingConstants constants;
  int qubits = 0;
};

/// Orbit-sum pipeline on registers A (length), B (codeword) and a shared
/// workspace W holding first the phase, then the log-amplitude offset.
/// The model must be the full binary shift with a calibrated Maslov index.
PipelineResult run_spectrum_from_orbits(const SpectrumPipelineConfig& config);

}  // namespace semiclass::algorithms
