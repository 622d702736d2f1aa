#include "semiclass/semiclassics/action_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "semiclass/error.hpp"
#include "semiclass/quantum/quantize.hpp"
#include "semiclass/quantum/spectral.hpp"

namespace semiclass::semiclassics {

using Complex = std::complex<double>;

ActionSpectrum action_spectrum(const classical::MapModel& model, int t, int N_max) {
  if (N_max < 8) throw Error(ErrorKind::Resolution, "N_max must be >= 8");
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "t must be >= 1");
  ActionSpectrum s;
  s.t = t;
  s.N_max = N_max;
  s.series.assign(static_cast<std::size_t>(N_max), Complex(0.0));
  std::vector<std::uint8_t> defined(static_cast<std::size_t>(N_max), 0);

  // Each N writes only its own slot, so the assembly is order independent.
#pragma omp parallel for schedule(dynamic)
  for (int N = 1; N < N_max; ++N) {
    if (!quantum::quantization_defined(model, N)) continue;
    s.series[static_cast<std::size_t>(N)] = quantum::trace_powers(quantum::quantize(model, N), t).at(t);
    defined[static_cast<std::size_t>(N)] = 1;
  }
  s.defined_samples = static_cast<int>(std::count(defined.begin(), defined.end(), 1));
  if (s.defined_samples == 0) throw Error(ErrorKind::InsufficientData, "no quantization defined below N_max");

  s.transform.assign(static_cast<std::size_t>(N_max), Complex(0.0));
  for (int f = 0; f < N_max; ++f) {
    Complex acc = 0.0;
    for (int N = 0; N < N_max; ++N) {
      const long long idx = (static_cast<long long>(f) * N) % N_max;
      acc += s.series[static_cast<std::size_t>(N)] *
             std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(idx) / N_max);
    }
    s.transform[static_cast<std::size_t>(f)] = acc;
  }

  std::vector<double> mag(static_cast<std::size_t>(N_max));
  for (int f = 0; f < N_max; ++f) mag[static_cast<std::size_t>(f)] = std::abs(s.transform[static_cast<std::size_t>(f)]);
  std::vector<double> sorted = mag;
  std::nth_element(sorted.begin(), sorted.begin() + N_max / 2, sorted.end());
  const double threshold = 3.0 * sorted[static_cast<std::size_t>(N_max / 2)];
  for (int f = 0; f < N_max; ++f) {
    const double m = mag[static_cast<std::size_t>(f)];
    const double left = mag[static_cast<std::size_t>((f + N_max - 1) % N_max)];
    const double right = mag[static_cast<std::size_t>((f + 1) % N_max)];
    if (m > threshold && m >= left && m > right) {
      s.peaks.push_back({f, static_cast<double>(f) / N_max, m / s.defined_samples});
    }
  }
  return s;
}

double circular_distance(double x, double y) {
  double d = std::fmod(std::fabs(x - y), 1.0);
  return std::min(d, 1.0 - d);
}

void write_peaks_csv(std::ostream& os, const ActionSpectrum& spectrum) {
  os << "bin,frequency,weight\n";
  const auto old = os.precision(17);
  for (const auto& p : spectrum.peaks) os << p.bin << ',' << p.frequency << ',' << p.weight << '\n';
  os.precision(old);
}

}  // namespace semiclass::semiclassics
