#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "semiclass/classical/map_model.hpp"

namespace semiclass::cli {

inline constexpr const char* kToolName = "semiclass-qc";
inline constexpr const char* kToolVersion = "0.1.0";

struct ExperimentConfig {
  std::string subcommand;

  std::string map = "cat";
  std::int64_t a = 2;
  std::int64_t b = 1;
  std::int64_t c = 3;
  std::int64_t d = 2;
  double k = 0.0;
  double T = 1.0;
  std::string potential = "cos";

  int N = 5;
  int N_to = 0;           // inclusive range end for cat-period and phase-estimation; 0 means N only
  std::vector<int> Ns;    // explicit dimension list; overrides N where supported
  int N_max = 256;
  int t = 1;
  int t_max = 4;
  int grid = 1024;
  bool half_traces = false;

  int phase_bits = 8;
  int amplitude_bits = 8;
  int compare_bits = 0;  // spectrum-from-orbits: second run at this width, 0 = off
  int bits = 10;
  std::string readout = "exact";
  std::uint64_t shots = 4096;
  std::uint64_t seed = 1;
  std::string input = "random";
  int eigen_index = 0;
  int inputs = 4;

  std::string out;
  std::string summary;

  bool operator==(const ExperimentConfig&) const = default;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
/// Missing keys keep their defaults; unknown keys raise a Config error.
ExperimentConfig from_json(const nlohmann::json& j);

/// FNV-1a 64 over the canonical dump, excluding output paths.
std::uint64_t config_hash(const ExperimentConfig& cfg);
std::string hex64(std::uint64_t v);

/// Map model described by the config (uncalibrated).
classical::MapModel build_model(const ExperimentConfig& cfg);
classical::CatMatrix build_cat_matrix(const ExperimentConfig& cfg);

}  // namespace semiclass::cli
