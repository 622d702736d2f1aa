#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "semiclass/classical/map_model.hpp"

namespace semiclass::semiclassics {

struct SpectrumPeak {
  int bin = 0;
  double frequency = 0.0;  // action modulo 1
  double weight = 0.0;
};

struct ActionSpectrum {
  int t = 0;
  int N_max = 0;
  int defined_samples = 0;
  std::vector<std::complex<double>> series;     // tr U_N^t, zero where undefined
  std::vector<std::complex<double>> transform;  // sum_N series[N] exp(-2 pi i f N / N_max)
  std::vector<SpectrumPeak> peaks;               // sorted by frequency
};

/// Fourier transform of tr U_N^t over N = 0..N_max-1. Peaks are circular
/// local maxima above three times the median magnitude; weights are
/// magnitudes divided by the number of defined samples.
ActionSpectrum action_spectrum(const classical::MapModel& model, int t, int N_max);

/// Smallest circular distance between x and y modulo 1.
double circular_distance(double x, double y);

void write_peaks_csv(std::ostream& os, const ActionSpectrum& spectrum);

}  // namespace semiclass::semiclassics
