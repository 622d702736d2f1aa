#include "semiclass/semiclassics/trace_formula.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "semiclass/error.hpp"
#include "semiclass/quantum/quantize.hpp"
#include "semiclass/quantum/spectral.hpp"

namespace semiclass::semiclassics {

using classical::MapKind;
using classical::MapModel;
using classical::PeriodicOrbit;

std::vector<PeriodicOrbit> completed_orbits(const MapModel& model, int t, int N,
                                            const classical::EnumerationBudget& budget) {
  std::vector<PeriodicOrbit> orbits = classical::enumerate_periodic_orbits(model, t, budget);
  for (auto& o : orbits) o = classical::orbit_invariants(model, o, N);
  return orbits;
}

Complex orbit_sum(const std::vector<PeriodicOrbit>& completed) {
  Complex acc = 0.0;
  for (const auto& o : completed) {
    if (!o.completed) throw Error(ErrorKind::InvalidArgument, "orbit invariants are not filled");
    acc += std::polar(o.A_p, o.phi_p);
  }
  return acc;
}

Complex semiclassical_trace(const MapModel& model, int t, int N, const classical::EnumerationBudget& budget) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "t must be >= 1");
  return orbit_sum(completed_orbits(model, t, N, budget));
}

MaslovCalibration calibrate_maslov(const MapModel& model, int N_ref) {
  const Complex exact = quantum::trace_powers(quantum::quantize(model, N_ref), 1).at(1);
  MaslovCalibration best{0, N_ref, std::numeric_limits<double>::infinity()};
  for (int nu = 0; nu < 4; ++nu) {
    const double d = std::abs(semiclassical_trace(model.with_maslov_per_step(nu), 1, N_ref) - exact);
    if (d < best.defect) best = {nu, N_ref, d};
  }
  return best;
}

int default_reference_dimension(const MapModel& model) {
  switch (model.kind()) {
    case MapKind::Cat: return 5;
    case MapKind::Baker: return 64;
    case MapKind::Kicked: break;
  }
  throw Error(ErrorKind::Unsupported, "kicked maps have no semiclassical calibration");
}

MapModel calibrated(const MapModel& model) {
  return model.with_maslov_per_step(calibrate_maslov(model, default_reference_dimension(model)).nu_per_step);
}

double TraceReport::rel_defect() const {
  const double m = std::abs(exact);
  return m > 1e-12 ? abs_defect() / m : abs_defect();
}

std::vector<TraceReport> compare_traces(const MapModel& model, int N, int t_max) {
  const quantum::TraceSeries exact = quantum::trace_powers(quantum::quantize(model, N), t_max);
  std::vector<TraceReport> out;
  for (int t = 1; t <= t_max; ++t) {
    TraceReport r;
    r.N = N;
    r.t = t;
    r.exact = exact.at(t);
    r.semiclassical = semiclassical_trace(model, t, N);
    out.push_back(r);
  }
  return out;
}

void write_trace_reports_csv(std::ostream& os, const std::vector<TraceReport>& reports) {
  os << "N,t,exact_re,exact_im,semiclassical_re,semiclassical_im,quantum_re,quantum_im,abs_defect,rel_defect\n";
  const auto old = os.precision(17);
  for (const auto& r : reports) {
    os << r.N << ',' << r.t << ',' << r.exact.real() << ',' << r.exact.imag() << ',' << r.semiclassical.real()
       << ',' << r.semiclassical.imag() << ',';
    if (r.quantum_estimate) {
      os << r.quantum_estimate->real() << ',' << r.quantum_estimate->imag();
    } else {
      os << ',';
    }
    os << ',' << r.abs_defect() << ',' << r.rel_defect() << '\n';
  }
  os.precision(old);
}

double log_amplitude_offset(const PeriodicOrbit& completed, double Lambda) {
  const int t = completed.t_p * completed.r;
  return -(std::log(completed.A_p / completed.t_p) + Lambda * t);
}

ScalingConstants scaling_constants(const MapModel& model, int t_max, int amplitude_bits) {
  if (t_max < 1) throw Error(ErrorKind::InvalidArgument, "t_max must be >= 1");
  if (amplitude_bits < 1 || amplitude_bits > 30) throw Error(ErrorKind::InvalidArgument, "amplitude bits out of range");
  ScalingConstants c;
  c.amplitude_bits = amplitude_bits;
  if (model.kind() == MapKind::Cat) {
    const double tr = static_cast<double>(model.cat_matrix().trace());
    c.lambda = std::log((std::fabs(tr) + std::sqrt(tr * tr - 4.0)) / 2.0);
  } else if (model.kind() == MapKind::Baker) {
    const int m = model.alphabet_size();
    Eigen::MatrixXd tm(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) tm(i, j) = model.transition()[static_cast<std::size_t>(i * m + j)];
    c.lambda = std::log(tm.eigenvalues().cwiseAbs().maxCoeff());
  } else {
    throw Error(ErrorKind::Unsupported, "scaling constants need orbit enumeration");
  }

  std::vector<std::vector<PeriodicOrbit>> by_t;
  double Lambda = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= t_max; ++t) {
    by_t.push_back(completed_orbits(model, t, 1));
    for (const auto& o : by_t.back()) Lambda = std::min(Lambda, -std::log(o.A_p) / t);
  }
  if (!std::isfinite(Lambda)) throw Error(ErrorKind::InsufficientData, "no orbits enumerated");
  c.Lambda = Lambda;
  c.mu = c.Lambda - c.lambda / 2.0;

  double x_max = 0.0;
  for (int t = 1; t < t_max; ++t) {
    for (const auto& o : by_t[static_cast<std::size_t>(t - 1)]) x_max = std::max(x_max, log_amplitude_offset(o, Lambda));
  }
  c.full_scale = 1.0;
  while (c.full_scale < x_max) c.full_scale *= 2.0;
  c.kappa = std::ldexp(c.full_scale, -amplitude_bits);
  return c;
}

}  // namespace semiclass::semiclassics
