#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <vector>

#include "semiclass/classical/orbits.hpp"

namespace semiclass::semiclassics {

using Complex = std::complex<double>;

/// Period-t orbits with invariants bound to dimension N.
std::vector<classical::PeriodicOrbit> completed_orbits(const classical::MapModel& model, int t, int N,
                                                       const classical::EnumerationBudget& budget = {});

/// Sum of A_p exp(i phi_p); each orbit enters once.
Complex orbit_sum(const std::vector<classical::PeriodicOrbit>& completed);

Complex semiclassical_trace(const classical::MapModel& model, int t, int N,
                            const classical::EnumerationBudget& budget = {});

struct MaslovCalibration {
  int nu_per_step = 0;
  int reference_N = 0;
  double defect = 0.0;  // |tau_1 - tr U| at the reference N
};

/// Picks the per-step Maslov index in {0,1,2,3} minimizing |tau_1 - tr U| at N_ref.
MaslovCalibration calibrate_maslov(const classical::MapModel& model, int N_ref);

/// Reference dimension used by the tools: 5 for cat, 64 for baker.
int default_reference_dimension(const classical::MapModel& model);

/// Model with its Maslov index calibrated at the default reference dimension.
classical::MapModel calibrated(const classical::MapModel& model);

struct TraceReport {
  int N = 0;
  int t = 0;
  Complex exact;
  Complex semiclassical;
  std::optional<Complex> quantum_estimate;

  double abs_defect() const { return std::abs(semiclassical - exact); }
  /// abs_defect / |exact|, or abs_defect when the exact trace vanishes.
  double rel_defect() const;
};

std::vector<TraceReport> compare_traces(const classical::MapModel& model, int N, int t_max);

void write_trace_reports_csv(std::ostream& os, const std::vector<TraceReport>& reports);

struct ScalingConstants {
  double lambda = 0.0;
  double Lambda = 0.0;
  double mu = 0.0;
  double kappa = 0.0;
  /// Declared full scale of the log-amplitude register; kappa = full_scale / 2^bits.
  double full_scale = 1.0;
  int amplitude_bits = 0;
};

/// lambda from the transition matrix spectral radius; Lambda from the
/// enumerated orbits with t <= t_max; full scale covers the encoded values
/// x = -(ln(A_p / t_p) + Lambda t) for 1 <= t < t_max.
ScalingConstants scaling_constants(const classical::MapModel& model, int t_max, int amplitude_bits = 8);

/// Value written to the log-amplitude register for one codeword.
double log_amplitude_offset(const classical::PeriodicOrbit& completed, double Lambda);

}  // namespace semiclass::semiclassics
