#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "semiclass/classical/orbits.hpp"
#include "semiclass/error.hpp"
#include "semiclass/quantum/quantize.hpp"
#include "semiclass/quantum/spectral.hpp"
#include "semiclass/semiclassics/action_spectrum.hpp"
#include "semiclass/semiclassics/period.hpp"
#include "semiclass/semiclassics/trace_formula.hpp"

using namespace semiclass;
using namespace semiclass::semiclassics;
using classical::MapModel;
using classical::make_cat_matrix;

namespace {

const MapModel& cat_model() {
  static const MapModel m = calibrated(MapModel::cat(make_cat_matrix(2, 1, 3, 2)));
  return m;
}

const MapModel& baker_model() {
  static const MapModel m = calibrated(MapModel::baker());
  return m;
}

}  // namespace

TEST(TraceFormula, CatCalibrationIsUnique) {
  const auto cal = calibrate_maslov(MapModel::cat(make_cat_matrix(2, 1, 3, 2)), 5);
  EXPECT_EQ(cal.nu_per_step, 3);
  EXPECT_LT(cal.defect, 1e-9);
}

TEST(TraceFormula, CatIsExact) {
  for (int N : {5, 8, 13, 21}) {
    for (int t = 1; t <= 3; ++t) {
      const auto u = quantum::quantize(cat_model(), N);
      const Complex exact = oracles::trace_power(u.matrix(), t);
      EXPECT_LT(std::abs(semiclassical_trace(cat_model(), t, N) - exact), 1e-6) << N << ' ' << t;
    }
  }
}

TEST(TraceFormula, BakerFixedPointBound) {
  const Complex tau = semiclassical_trace(baker_model(), 1, 16);
  EXPECT_LE(std::abs(tau), 2 * std::sqrt(2.0) + 1e-12);
  const auto orbits = completed_orbits(baker_model(), 1, 16);
  ASSERT_EQ(orbits.size(), 2u);
  Complex direct = 0.0;
  for (const auto& o : orbits) direct += std::sqrt(2.0) * std::polar(1.0, o.phi_p);
  EXPECT_NEAR(std::abs(tau - direct), 0.0, 1e-12);
}

TEST(TraceFormula, BakerDefectShrinks) {
  double prev = 1e9;
  for (int N : {8, 16, 32, 64}) {
    const auto u = quantum::quantize_baker(N);
    const double defect = std::abs(semiclassical_trace(baker_model(), 1, N) - u.matrix().trace());
    EXPECT_LE(defect, prev) << N;
    prev = defect;
  }
}

TEST(TraceFormula, OrderIndependent) {
  auto orbits = completed_orbits(baker_model(), 6, 32);
  const Complex ref = orbit_sum(orbits);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(orbits.begin(), orbits.end(), rng);
    EXPECT_NEAR(std::abs(orbit_sum(orbits) - ref), 0.0, 1e-12);
  }
}

TEST(TraceFormula, KickedUnsupported) {
  EXPECT_THROW(semiclassical_trace(MapModel::kicked({}), 1, 8), Error);
}

TEST(Scaling, BakerConstants) {
  const auto c4 = scaling_constants(baker_model(), 4);
  EXPECT_NEAR(c4.lambda, std::log(2.0), 1e-12);
  for (int t = 1; t <= 4; ++t) {
    for (const auto& o : completed_orbits(baker_model(), t, 16)) EXPECT_LE(o.A_p, std::exp(-c4.Lambda * t) + 1e-12);
  }
  const auto c1 = scaling_constants(baker_model(), 1);
  EXPECT_NEAR(c1.Lambda, -std::log(2.0) / 2, 1e-12);
  EXPECT_NEAR(c1.mu, -std::log(2.0), 1e-12);
}

TEST(ActionSpectrum, CatPeaksAtFixedPointActions) {
  const auto spectrum = action_spectrum(cat_model(), 1, 256);
  ASSERT_FALSE(spectrum.peaks.empty());
  for (const auto& o : completed_orbits(cat_model(), 1, 1)) {
    double best = 1.0;
    for (const auto& p : spectrum.peaks) best = std::min(best, oracles::circ_dist(p.frequency, o.S_p));
    EXPECT_LE(best, 1.0 / 256) << o.label();
  }
  // Frozen: the two fixed-point actions are 0 and 3/4.
  std::vector<double> f;
  for (const auto& p : spectrum.peaks) f.push_back(p.frequency);
  EXPECT_TRUE(std::any_of(f.begin(), f.end(), [](double x) { return oracles::circ_dist(x, 0.0) < 1e-12; }));
  EXPECT_TRUE(std::any_of(f.begin(), f.end(), [](double x) { return oracles::circ_dist(x, 0.75) < 1e-12; }));
}

TEST(ActionSpectrum, StableUnderDoubling) {
  const auto a = action_spectrum(cat_model(), 1, 64);
  const auto b = action_spectrum(cat_model(), 1, 128);
  for (const auto& p : a.peaks) {
    double best = 1.0;
    for (const auto& q : b.peaks) best = std::min(best, oracles::circ_dist(p.frequency, q.frequency));
    EXPECT_LE(best, 1.0 / 64 + 1e-12);
  }
}

TEST(ActionSpectrum, BakerHalfSampling) {
  const auto spectrum = action_spectrum(baker_model(), 1, 256);
  EXPECT_EQ(spectrum.defined_samples, 127);
  for (const auto& o : completed_orbits(baker_model(), 1, 2)) {
    double best = 1.0;
    for (const auto& p : spectrum.peaks) best = std::min(best, oracles::circ_dist(p.frequency, o.S_p));
    EXPECT_LE(best, 2.0 / 256) << o.label();
  }
}

TEST(ActionSpectrum, ResolutionError) {
  try {
    action_spectrum(cat_model(), 1, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Resolution);
  }
}

TEST(Period, ArnoldClassicalPeriod) {
  EXPECT_EQ(classical_period(make_cat_matrix(2, 1, 1, 1), 5, 1000), 10);
  EXPECT_EQ(oracles::order_mod({2, 1, 1, 1}, 5), 10);
}

TEST(Period, MatchesBruteForce) {
  const auto m = make_cat_matrix(2, 1, 3, 2);
  for (int N = 2; N <= 64; ++N) {
    const auto rec = period_functions(m, N);
    EXPECT_EQ(rec.g, oracles::order_mod({2, 1, 3, 2}, N)) << N;
    EXPECT_TRUE(rec.n == rec.g || 2 * rec.n == rec.g || rec.n == 2 * rec.g) << N;
    EXPECT_TRUE(rec.eigen_checked);
    EXPECT_LE(rec.lattice_residual, 1e-8) << N;
    if (N <= 32) {
      const auto u = quantum::quantize_cat(m, N);
      EXPECT_EQ(rec.n, oracles::matrix_order(u.matrix(), 4 * N + 8)) << N;
    }
  }
}

TEST(Period, PhaseMatchesMatrixPower) {
  const auto m = make_cat_matrix(2, 1, 3, 2);
  for (int N : {5, 8, 11}) {
    const auto rec = period_functions(m, N);
    const auto u = quantum::quantize_cat(m, N);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(N, N);
    for (int i = 0; i < rec.n; ++i) p = p * u.matrix();
    EXPECT_NEAR(std::abs(p(0, 0) - std::polar(1.0, rec.phi)), 0.0, 1e-8);
    for (double th : quantum::eigenphases(u)) {
      const double x = rec.n * th - rec.phi;
      EXPECT_NEAR(std::remainder(x, 2 * std::numbers::pi), 0.0, 1e-8);
    }
  }
}

TEST(Period, BudgetError) {
  try {
    classical_period(make_cat_matrix(2, 1, 3, 2), 97, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Budget);
  }
}
