#pragma once

#include <optional>
#include <vector>

#include "semiclass/quantum/unitary.hpp"

namespace semiclass::quantum {

struct TraceSeries {
  int N = 0;
  std::vector<Complex> values;  // values[t - 1] = tr U^t

  int t_max() const { return static_cast<int>(values.size()); }
  Complex at(int t) const;
};

struct Caps {
  int dense_diag = 512;
  int matrix_power = 4096;
};

enum class TraceMethod { Power, Eigen };

TraceSeries trace_powers(const UnitaryMatrix& u, int t_max, TraceMethod method = TraceMethod::Power,
                         const Caps& caps = {});

/// Sorted eigenphases in [0, 2 pi).
std::vector<double> eigenphases(const UnitaryMatrix& u, const Caps& caps = {});

/// det(-U): (-1)^N exp(i sum theta_k) below the diagonalization cap, LU above.
Complex det_minus_u(const UnitaryMatrix& u, const Caps& caps = {});

struct CharPoly {
  int N = 0;
  std::vector<Complex> beta;  // coefficients of det(I - x U), beta[0] = 1
  bool completed_by_resurgence = false;
  /// max_k |beta_{N-k} - det(-U) conj(beta_k)| over the k where both sides
  /// come from the recurrence; empty when det(-U) is not supplied.
  std::optional<double> resurgence_residual;
};

struct CharPolyOptions {
  std::optional<Complex> det_minus_u;
  /// Use only traces up to ceil(N/2) and complete by the symmetry relation.
  bool half_traces = false;
};

CharPoly char_poly_from_traces(const TraceSeries& traces, int N, const CharPolyOptions& options = {});

/// d(theta) = N/2pi + (1/2pi) sum_{t<=cutoff} 2 Re(exp(-i t theta) tr U^t)
std::vector<double> spectral_density(const TraceSeries& traces, const std::vector<double>& theta_grid,
                                     int t_cutoff);

}  // namespace semiclass::quantum
