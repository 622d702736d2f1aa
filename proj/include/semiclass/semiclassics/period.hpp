#pragma once

#include <cstdint>
#include <iosfwd>

#include "semiclass/classical/map_model.hpp"

namespace semiclass::semiclassics {

struct PeriodRecord {
  int N = 0;
  std::int64_t g = 0;
  std::int64_t n = 0;
  double phi = 0.0;
  double lattice_residual = 0.0;
  bool eigen_checked = false;
};

struct PeriodOptions {
  std::int64_t max_period = std::int64_t{1} << 20;
  /// Check U^n against a multiple of the identity and the eigenphase lattice.
  /// Skipped for matrices without a quantization.
  bool eigen_check = true;
};

/// Smallest g >= 1 with M^g = I (mod N).
std::int64_t classical_period(const classical::CatMatrix& m, int N, std::int64_t max_period);

/// Odd N: the classical period. Even N: smallest n with diagonal = 1 (mod N)
/// and off-diagonal = 0 (mod 2N).
std::int64_t quantum_period(const classical::CatMatrix& m, int N, std::int64_t max_period);

PeriodRecord period_functions(const classical::CatMatrix& m, int N, const PeriodOptions& options = {});

/// One JSON object per line.
void write_period_jsonl(std::ostream& os, const PeriodRecord& record);

}  // namespace semiclass::semiclassics
