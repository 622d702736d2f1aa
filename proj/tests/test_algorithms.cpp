#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "semiclass/algorithms/phase_estimation.hpp"
#include "semiclass/algorithms/spectrum_pipeline.hpp"
#include "semiclass/algorithms/traces_pipeline.hpp"
#include "semiclass/error.hpp"
#include "semiclass/quantum/quantize.hpp"
#include "semiclass/quantum/spectral.hpp"
#include "semiclass/semiclassics/period.hpp"
#include "semiclass/semiclassics/trace_formula.hpp"

using namespace semiclass;
using namespace semiclass::algorithms;
using classical::MapModel;
using classical::make_cat_matrix;

namespace {

constexpr double kPi = std::numbers::pi;

const MapModel& baker() {
  static const MapModel m = semiclassics::calibrated(MapModel::baker());
  return m;
}

void expect_all_passed(const std::vector<Checkpoint>& cps) {
  for (const auto& c : cps) EXPECT_TRUE(c.passed) << c.step << ": " << c.detail;
}

}  // namespace

TEST(SpectrumPipeline, BakerWithinQuantizationBound) {
  SpectrumPipelineConfig cfg;
  cfg.model = baker();
  const auto r = run_spectrum_from_orbits(cfg);
  ASSERT_EQ(r.estimates.size(), 3u);
  for (const auto& e : r.estimates) {
    EXPECT_NEAR(std::abs(e.oracle - semiclassics::semiclassical_trace(baker(), e.t, cfg.N)), 0.0, 1e-12);
    EXPECT_LE(e.defect, e.bound) << "t=" << e.t;
  }
  expect_all_passed(r.checkpoints);
  std::set<std::string> steps;
  for (const auto& c : r.checkpoints) steps.insert(c.step.substr(0, c.step.find(' ')));
  for (const char* s : {"I", "II", "III", "IV", "V", "VI"}) EXPECT_TRUE(steps.count(s)) << s;
  EXPECT_LE(r.qubits, 24);
  for (const auto& a : r.amplifications) EXPECT_GE(a.final_probability, a.predicted_probability - 1e-9);
}

TEST(SpectrumPipeline, SingleLengthRun) {
  // With t_max = 2 only t = 1 is estimated; at high resolution it approaches
  // the two fixed-point sum.
  SpectrumPipelineConfig cfg;
  cfg.model = baker();
  cfg.t_max = 2;
  cfg.phase_bits = 14;
  cfg.amplitude_bits = 14;
  const auto r = run_spectrum_from_orbits(cfg);
  ASSERT_EQ(r.estimates.size(), 1u);
  Complex direct = 0.0;
  for (const auto& o : semiclassics::completed_orbits(baker(), 1, cfg.N)) direct += std::sqrt(2.0) * std::polar(1.0, o.phi_p);
  EXPECT_NEAR(std::abs(r.estimates[0].estimate - direct), 0.0, 1e-2);
}

TEST(SpectrumPipeline, RejectsLooseConstants) {
  SpectrumPipelineConfig cfg;
  cfg.model = baker();
  auto c = semiclassics::scaling_constants(baker(), 4);
  c.Lambda += 0.5;
  cfg.constants = c;
  try {
    run_spectrum_from_orbits(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
  }
}

TEST(TracesPipeline, IdentityTraces) {
  const auto r = run_traces_from_quantum(quantum::UnitaryMatrix(quantum::CMatrix::Identity(4, 4)), {});
  for (const auto& e : r.estimates) EXPECT_NEAR(std::abs(e.estimate - 4.0), 0.0, 1e-9);
}

TEST(TracesPipeline, MatchesDenseTraces) {
  struct Case {
    MapModel model;
    int N;
  };
  const std::vector<Case> cases{{MapModel::baker(), 4},
                                {MapModel::baker(), 6},
                                {MapModel::baker(), 16},
                                {MapModel::cat(make_cat_matrix(2, 1, 3, 2)), 5},
                                {MapModel::cat(make_cat_matrix(2, 1, 3, 2)), 11},
                                {MapModel::kicked({1.3, 1.0, classical::Potential::Cosine}), 7}};
  for (const auto& c : cases) {
    const auto u = quantum::quantize(c.model, c.N);
    const auto r = run_traces_from_quantum(c.model, c.N, {});
    expect_all_passed(r.checkpoints);
    EXPECT_GT(r.d0_weight, 0.5);
    ASSERT_EQ(r.estimates.size(), 3u);
    for (const auto& e : r.estimates) {
      EXPECT_NEAR(std::abs(e.estimate - oracles::trace_power(u.matrix(), e.t)), 0.0, 1e-9) << c.N << ' ' << e.t;
    }
  }
}

TEST(TracesPipeline, FrozenPaddingWeights) {
  EXPECT_NEAR(run_traces_from_quantum(MapModel::baker(), 4, {}).d0_weight, 1.0, 1e-12);
  EXPECT_NEAR(run_traces_from_quantum(MapModel::cat(make_cat_matrix(2, 1, 3, 2)), 5, {}).d0_weight, 0.625, 1e-12);
}

TEST(TracesPipeline, ZeroTraceIsFlagged) {
  // tr U^t vanishes for t = 1, 2, 3 when U = diag(1, i, -1, -i).
  quantum::CMatrix d = quantum::CMatrix::Zero(4, 4);
  d(0, 0) = 1.0;
  d(1, 1) = Complex(0, 1);
  d(2, 2) = -1.0;
  d(3, 3) = Complex(0, -1);
  const auto r = run_traces_from_quantum(quantum::UnitaryMatrix(d), {});
  ASSERT_EQ(r.estimates.size(), 3u);
  for (const auto& e : r.estimates) {
    EXPECT_TRUE(e.exact_zero) << e.t;
    EXPECT_EQ(e.estimate, Complex(0.0));
  }
}

TEST(TracesPipeline, ShotsReadoutIsClose) {
  TracesPipelineOptions opt;
  opt.readout = Readout::Shots;
  opt.shots = 200000;
  opt.seed = 5;
  const auto u = quantum::quantize_baker(4);
  const auto r = run_traces_from_quantum(MapModel::baker(), 4, opt);
  for (const auto& e : r.estimates) EXPECT_LT(std::abs(e.estimate - oracles::trace_power(u.matrix(), e.t)), 0.25);
}

TEST(Probe, Verdicts) {
  const auto kicked = MapModel::kicked({0.0, 1.0, classical::Potential::Cosine});
  EXPECT_TRUE(integrability_probe(kicked, 16).integrable_like);
  EXPECT_FALSE(integrability_probe(MapModel::baker(), 16).integrable_like);
  EXPECT_TRUE(integrability_probe(quantum::UnitaryMatrix(quantum::CMatrix::Identity(9, 9))).integrable_like);
  const auto r = integrability_probe(MapModel::baker(), 16);
  EXPECT_EQ(r.rounds, static_cast<int>(std::floor(kPi / 4 * 4.0)));
  ASSERT_EQ(r.probabilities.size(), static_cast<std::size_t>(r.rounds + 1));
  const Complex tr2 = oracles::trace_power(quantum::quantize_baker(16).matrix(), 2);
  EXPECT_NEAR(r.initial_probability, std::norm(tr2) / (16.0 * 16.0), 1e-12);
}

TEST(PhaseEstimation, EigenvectorInput) {
  PhaseEstimationConfig cfg;
  cfg.N = 7;
  cfg.bits = 8;
  cfg.input = InputState::Eigenvector;
  for (int idx = 0; idx < 7; idx += 3) {
    cfg.eigen_index = idx;
    const auto r = phase_estimation_cat(cfg);
    std::size_t mode = 0;
    for (std::size_t i = 1; i < r.counts.size(); ++i)
      if (r.counts[i] > r.counts[mode]) mode = i;
    const double est = 2 * kPi * static_cast<double>(mode) / 256.0;
    EXPECT_LE(std::abs(std::remainder(est - r.reference_phase, 2 * kPi)), 2 * kPi / 256) << idx;
  }
}

TEST(PhaseEstimation, RandomInputOnLattice) {
  const auto m = make_cat_matrix(2, 1, 3, 2);
  for (int N : {4, 5, 9}) {
    PhaseEstimationConfig cfg;
    cfg.N = N;
    cfg.bits = 8;
    const auto r = phase_estimation_cat(cfg);
    const auto rec = semiclassics::period_functions(m, N);
    const auto est = period_from_phases(r.counts, 8);
    EXPECT_EQ(est.n, rec.n) << N;
    for (double c : est.centers) {
      const double x = rec.n * c - rec.phi;
      EXPECT_LE(std::abs(std::remainder(x, 2 * kPi)) / rec.n, 2 * kPi / 256) << N;
    }
  }
}

TEST(PhaseEstimation, ResolutionWarning) {
  // Sixty-four bins give a lattice of period 6 only about ten bins per step.
  std::vector<std::uint64_t> counts(64, 0);
  for (int j = 0; j < 6; ++j) counts[static_cast<std::size_t>(std::lround(64.0 * j / 6)) % 64] += 100;
  const auto est = period_from_phases(counts, 6);
  EXPECT_EQ(est.n, 6);
  EXPECT_FALSE(est.warnings.empty());
  // A single populated bin carries no lattice information beyond n = 1.
  std::vector<std::uint64_t> one(64, 0);
  one[5] = 10;
  EXPECT_TRUE(period_from_phases(one, 6).warnings.empty());
}
