#pragma once

#include <cstdint>
#include <vector>

#include "semiclass/algorithms/common.hpp"
#include "semiclass/classical/map_model.hpp"

namespace semiclass::algorithms {

enum class InputState { Eigenvector, Random };

struct PhaseEstimationConfig {
  classical::CatMatrix M = classical::make_cat_matrix(2, 1, 3, 2);
  int N = 5;
  int bits = 10;
  InputState input = InputState::Random;
  int eigen_index = 0;
  /// Independent random inputs whose histograms are pooled.
  int random_inputs = 4;
  /// Shots per input.
  std::uint64_t shots = 4096;
  std::uint64_t seed = 1;
  int qubit_cap = 24;
};

struct PhaseEstimationResult {
  int bits = 0;
  std::vector<std::uint64_t> counts;  // pooled ancilla histogram, size 2^bits
  std::vector<double> probabilities;  // exact ancilla distribution, averaged over inputs
  double reference_phase = 0.0;       // true eigenphase for eigenvector input
};

PhaseEstimationResult phase_estimation_cat(const PhaseEstimationConfig& config);

struct PeriodEstimate {
  std::int64_t n = 0;
  double phi = 0.0;
  std::vector<double> centers;  // cluster centroids in [0, 2 pi)
  bool resolved = true;
  std::vector<std::string> warnings;
};

/// Clusters the histogram and finds the smallest n for which all centroid
/// differences lie on the 2 pi / n lattice, then phi as the circular mean of
/// n times the centroids.
PeriodEstimate period_from_phases(const std::vector<std::uint64_t>& counts, int bits);

}  // namespace semiclass::algorithms
