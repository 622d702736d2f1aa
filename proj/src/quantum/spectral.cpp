#include "semiclass/quantum/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "semiclass/error.hpp"

namespace semiclass::quantum {

Complex TraceSeries::at(int t) const {
  if (t < 1 || t > t_max()) throw Error(ErrorKind::InsufficientData, "trace index out of range");
  return values[static_cast<std::size_t>(t - 1)];
}

std::vector<double> eigenphases(const UnitaryMatrix& u, const Caps& caps) {
  if (u.dim() > caps.dense_diag) throw Error(ErrorKind::SizeCap, "dimension exceeds dense diagonalization cap");
  Eigen::ComplexEigenSolver<CMatrix> solver(u.matrix(), false);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Inconsistency, "eigensolver did not converge");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(u.dim()));
  for (int k = 0; k < u.dim(); ++k) {
    double a = std::arg(solver.eigenvalues()(k));
    if (a < 0.0) a += two_pi;
    if (a >= two_pi) a -= two_pi;
    out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TraceSeries trace_powers(const UnitaryMatrix& u, int t_max, TraceMethod method, const Caps& caps) {
  if (t_max < 1) throw Error(ErrorKind::InvalidArgument, "t_max must be >= 1");
  TraceSeries s{u.dim(), {}};
  s.values.reserve(static_cast<std::size_t>(t_max));
  if (method == TraceMethod::Eigen) {
    const std::vector<double> th = eigenphases(u, caps);
    for (int t = 1; t <= t_max; ++t) {
      Complex acc = 0.0;
      for (double x : th) acc += std::polar(1.0, t * x);
      s.values.push_back(acc);
    }
    return s;
  }
  if (u.dim() > caps.matrix_power) throw Error(ErrorKind::SizeCap, "dimension exceeds matrix-power cap");
  CMatrix p = u.matrix();
  for (int t = 1; t <= t_max; ++t) {
    s.values.push_back(p.trace());
    if (t < t_max) p = p * u.matrix();
  }
  return s;
}

Complex det_minus_u(const UnitaryMatrix& u, const Caps& caps) {
  const int n = u.dim();
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  if (n <= caps.dense_diag) {
    double sum = 0.0;
    for (double th : eigenphases(u, caps)) sum += th;
    return sign * std::polar(1.0, std::fmod(sum, 2.0 * std::numbers::pi));
  }
  return (-u.matrix()).partialPivLu().determinant();
}

CharPoly char_poly_from_traces(const TraceSeries& traces, int N, const CharPolyOptions& options) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "degree must be >= 1");
  const int half = (N + 1) / 2;
  const bool use_half = options.half_traces || traces.t_max() < N;
  if (use_half && !options.det_minus_u) {
    throw Error(ErrorKind::InsufficientData, "need traces up to N, or det(-U) with traces up to ceil(N/2)");
  }
  const int k_direct = use_half ? half : N;
  if (traces.t_max() < k_direct) throw Error(ErrorKind::InsufficientData, "not enough traces for the recurrence");

  CharPoly cp;
  cp.N = N;
  cp.beta.assign(static_cast<std::size_t>(N) + 1, Complex(0.0));
  cp.beta[0] = 1.0;
  for (int k = 1; k <= k_direct; ++k) {
    Complex acc = 0.0;
    for (int t = 1; t <= k; ++t) acc += cp.beta[static_cast<std::size_t>(k - t)] * traces.values[static_cast<std::size_t>(t - 1)];
    cp.beta[static_cast<std::size_t>(k)] = -acc / static_cast<double>(k);
  }
  if (use_half) {
    const Complex d = *options.det_minus_u;
    for (int k = k_direct + 1; k <= N; ++k) {
      cp.beta[static_cast<std::size_t>(k)] = d * std::conj(cp.beta[static_cast<std::size_t>(N - k)]);
    }
    cp.completed_by_resurgence = true;
  }
  if (options.det_minus_u) {
    const Complex d = *options.det_minus_u;
    double res = 0.0;
    for (int k = 0; k <= N; ++k) {
      if (k > k_direct || N - k > k_direct) continue;
      res = std::max(res, std::abs(cp.beta[static_cast<std::size_t>(N - k)] - d * std::conj(cp.beta[static_cast<std::size_t>(k)])));
    }
    cp.resurgence_residual = res;
  }
  return cp;
}

std::vector<double> spectral_density(const TraceSeries& traces, const std::vector<double>& theta_grid,
                                     int t_cutoff) {
  if (t_cutoff < 0 || t_cutoff > traces.t_max()) {
    throw Error(ErrorKind::InsufficientData, "cutoff exceeds available traces");
  }
  const double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);
  std::vector<double> d(theta_grid.size());
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    double acc = static_cast<double>(traces.N);
    for (int t = 1; t <= t_cutoff; ++t) {
      const Complex tr = traces.values[static_cast<std::size_t>(t - 1)];
      const Complex e = std::polar(1.0, -t * theta_grid[i]);
      // tr U^{-t} = conj(tr U^t) for unitary U
      acc += (e * tr + std::conj(e) * std::conj(tr)).real();
    }
    d[i] = acc * inv_two_pi;
  }
  return d;
}

}  // namespace semiclass::quantum
