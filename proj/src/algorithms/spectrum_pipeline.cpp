#include "semiclass/algorithms/spectrum_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "semiclass/error.hpp"

namespace semiclass::algorithms {

using classical::PeriodicOrbit;
using qsim::Control;
using qsim::Gate;
using qsim::QState;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Codeword {
  double amplitude = 0.0;  // A_p / t_p
  double phase = 0.0;      // phi_p
  double offset = 0.0;     // x = -(ln(A_p / t_p) + Lambda t)
  std::uint64_t phase_code = 0;
  std::uint64_t amp_code = 0;
};

std::vector<int> word_of(std::uint64_t p, int t) {
  std::vector<int> w(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) w[static_cast<std::size_t>(i)] = static_cast<int>((p >> (t - 1 - i)) & 1u);
  return w;
}

double circular_gap(double a, double b) {
  const double d = std::fmod(std::fabs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

PipelineResult run_spectrum_from_orbits(const SpectrumPipelineConfig& cfg) {
  const classical::MapModel& model = cfg.model;
  if (model.kind() != classical::MapKind::Baker || model.alphabet_size() != 2) {
    throw Error(ErrorKind::Unsupported, "orbit-sum pipeline needs the full binary shift (baker model)");
  }
  for (auto v : model.transition())
    if (!v) throw Error(ErrorKind::Unsupported, "orbit-sum pipeline needs the full shift");
  if (cfg.t_max < 2) throw Error(ErrorKind::InvalidArgument, "t_max must be >= 2");
  if (cfg.N < 1) throw Error(ErrorKind::InvalidArgument, "N must be >= 1");
  if (cfg.phase_bits < 1 || cfg.amplitude_bits < 1) throw Error(ErrorKind::InvalidArgument, "bit widths must be >= 1");

  PipelineResult res;
  res.constants = cfg.constants ? *cfg.constants : semiclassics::scaling_constants(model, cfg.t_max, cfg.amplitude_bits);
  const auto& K = res.constants;
  const int bC = cfg.phase_bits;
  const int bD = cfg.amplitude_bits;
  const double kappa = K.kappa;
  if (!(kappa > 0.0)) throw Error(ErrorKind::Config, "kappa must be positive");

  // Classical orbit data per codeword; the Lambda bound is verified on every
  // enumerated orbit with t <= t_max.
  const int t_top = cfg.t_max - 1;
  std::vector<std::vector<PeriodicOrbit>> orbits(static_cast<std::size_t>(cfg.t_max) + 1);
  for (int t = 1; t <= cfg.t_max; ++t) {
    orbits[static_cast<std::size_t>(t)] = semiclassics::completed_orbits(model, t, cfg.N);
    for (const auto& o : orbits[static_cast<std::size_t>(t)]) {
      if (o.A_p > std::exp(-K.Lambda * t) * (1.0 + 1e-12)) {
        throw Error(ErrorKind::Config, "constants violate A_p <= exp(-Lambda t) at t = " + std::to_string(t));
      }
    }
  }
  std::vector<std::vector<Codeword>> words(static_cast<std::size_t>(cfg.t_max));
  const std::uint64_t amp_max = (std::uint64_t{1} << bD) - 1;
  for (int t = 1; t <= t_top; ++t) {
    std::map<std::vector<int>, const PeriodicOrbit*> by_code;
    for (const auto& o : orbits[static_cast<std::size_t>(t)]) by_code[o.code.word] = &o;
    auto& wt = words[static_cast<std::size_t>(t)];
    wt.resize(std::size_t{1} << t);
    for (std::uint64_t p = 0; p < wt.size(); ++p) {
      const classical::SymbolCode canon = classical::canonical_rotation({t, word_of(p, t)});
      const int tp = classical::primitive_period(canon.word);
      const PeriodicOrbit* o = by_code.at(std::vector<int>(canon.word.begin(), canon.word.begin() + tp));
      Codeword& c = wt[p];
      c.amplitude = o->A_p / o->t_p;
      c.phase = o->phi_p;
      c.offset = semiclassics::log_amplitude_offset(*o, K.Lambda);
      if (c.offset < -1e-12) throw Error(ErrorKind::Config, "negative log-amplitude offset");
      c.phase_code = static_cast<std::uint64_t>(std::llround(c.phase / kTwoPi * std::ldexp(1.0, bC))) &
                     ((std::uint64_t{1} << bC) - 1);
      c.amp_code = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::llround(std::max(0.0, c.offset) / kappa)), amp_max);
    }
  }

  const int nA = std::max(1, ceil_log2(static_cast<std::uint64_t>(cfg.t_max)));
  const int nB = cfg.t_max;
  const int nW = std::max(bC, bD);
  QState st(qsim::RegisterLayout({{"A", nA}, {"B", nB}, {"W", nW}}, cfg.qubit_cap));
  res.qubits = st.layout().total_qubits();
  const auto& regA = st.layout().reg("A");
  const auto& regB = st.layout().reg("B");
  const auto& regW = st.layout().reg("W");
  auto idx = [&](std::uint64_t t, std::uint64_t p, std::uint64_t w) {
    return regW.with_value(regB.with_value(regA.with_value(0, t), p), w);
  };
  auto& amp = st.amplitudes();
  auto& cps = res.checkpoints;

  // Step I: |t> weights proportional to exp(-mu t).
  for (int k = 0; k < nA; ++k) {
    const double theta = std::acos(1.0 / std::sqrt(1.0 + std::exp(-2.0 * K.mu * std::ldexp(1.0, k))));
    qsim::apply_gate(st, Gate::ry(theta), qsim::qubit(st, "A", k));
  }
  {
    double worst = 0.0;
    const Complex a0 = amp[idx(0, 0, 0)];
    for (int t = 1; t <= t_top; ++t) {
      const double ratio = std::abs(amp[idx(static_cast<std::uint64_t>(t), 0, 0)] / a0);
      worst = std::max(worst, std::fabs(ratio / std::exp(-K.mu * t) - 1.0));
    }
    require(cps, "I", worst, 1e-10, "amplitude ratio |t>/|0> against exp(-mu t)");
  }

  // Step II: Hadamards on the low t qubits of B for A = t.
  for (int j = 0; j < nB; ++j) {
    qsim::apply_gate(st, Gate::h(), qsim::qubit(st, "B", j), Control::at_least("A", static_cast<std::uint64_t>(j + 1)));
  }
  {
    double worst = 0.0;
    const Complex a0 = amp[idx(0, 0, 0)];
    for (int t = 1; t <= t_top; ++t) {
      const double expect = std::exp(-K.mu * t) * std::pow(2.0, -0.5 * t);
      for (std::uint64_t p = 0; p < (std::uint64_t{1} << t); ++p) {
        worst = std::max(worst, std::abs(amp[idx(static_cast<std::uint64_t>(t), p, 0)] / a0 - expect) / expect);
      }
    }
    require(cps, "II", worst, 1e-10, "per-codeword amplitude against exp(-mu t) 2^(-t/2)");
  }
  const std::vector<Complex> after_two = amp;

  auto codeword = [&](std::uint64_t basis) -> const Codeword* {
    const std::uint64_t t = regA.value(basis);
    const std::uint64_t p = regB.value(basis);
    if (t < 1 || t > static_cast<std::uint64_t>(t_top) || p >= (std::uint64_t{1} << t)) return nullptr;
    return &words[static_cast<std::size_t>(t)][p];
  };
  const qsim::BasisFunction phase_oracle = [&](std::uint64_t x) {
    const Codeword* c = codeword(x);
    return c ? regW.with_value(x, regW.value(x) ^ c->phase_code) : x;
  };
  const qsim::BasisFunction amp_oracle = [&](std::uint64_t x) {
    const Codeword* c = codeword(x);
    return c ? regW.with_value(x, regW.value(x) ^ c->amp_code) : x;
  };

  // Step III: phase written into W.
  qsim::apply_basis_function(st, phase_oracle, "phase");
  {
    double moved = 0.0;
    double worst_phase = 0.0;
    for (int t = 1; t <= t_top; ++t) {
      for (std::uint64_t p = 0; p < (std::uint64_t{1} << t); ++p) {
        const Codeword& c = words[static_cast<std::size_t>(t)][p];
        moved = std::max(moved, std::abs(amp[idx(static_cast<std::uint64_t>(t), p, c.phase_code)] -
                                         after_two[idx(static_cast<std::uint64_t>(t), p, 0)]));
        const double decoded = kTwoPi * static_cast<double>(c.phase_code) / std::ldexp(1.0, bC);
        worst_phase = std::max(worst_phase, circular_gap(decoded, c.phase));
      }
    }
    require(cps, "III", moved, 0.0, "amplitude carried to the encoded phase label");
    require(cps, "III", worst_phase, kTwoPi * std::ldexp(1.0, -bC), "encoded phase within one LSB");
  }

  // Step IV: phase kicks, phase uncompute, log-amplitude write and rotations.
  for (int k = 0; k < bC; ++k) {
    qsim::apply_gate(st, Gate::pz(std::numbers::pi * std::ldexp(1.0, k - bC)), qsim::qubit(st, "W", k));
  }
  qsim::uncompute_basis_function(st, phase_oracle, "phase");
  qsim::apply_basis_function(st, amp_oracle, "log_amplitude");
  double cos_product = 1.0;
  for (int k = 0; k < bD; ++k) {
    const double c = 1.0 / std::sqrt(1.0 + std::exp(-2.0 * kappa * std::ldexp(1.0, k)));
    cos_product *= c;
    qsim::apply_gate(st, Gate::ry(-std::acos(c)), qsim::qubit(st, "W", k));
  }
  {
    double worst_exact = 0.0;
    double worst_amp_code = 0.0;
    double pz_global = 0.0;
    for (int k = 0; k < bC; ++k) pz_global += std::numbers::pi * std::ldexp(1.0, k - bC);
    const Complex g = cos_product * std::polar(1.0, -pz_global);
    for (int t = 0; t <= t_top; ++t) {
      for (std::uint64_t p = 0; p < (std::uint64_t{1} << t); ++p) {
        Complex expect = g * after_two[idx(static_cast<std::uint64_t>(t), p, 0)];
        if (t > 0) {
          const Codeword& c = words[static_cast<std::size_t>(t)][p];
          expect *= std::exp(-kappa * static_cast<double>(c.amp_code)) *
                    std::polar(1.0, kTwoPi * static_cast<double>(c.phase_code) / std::ldexp(1.0, bC));
          const double decoded = kappa * static_cast<double>(c.amp_code);
          worst_amp_code = std::max(worst_amp_code, std::fabs(decoded - c.offset));
        }
        const Complex got = amp[idx(static_cast<std::uint64_t>(t), p, 0)];
        worst_exact = std::max(worst_exact, std::abs(got - expect) / std::abs(expect));
      }
    }
    require(cps, "IV", worst_amp_code, kappa, "encoded log-amplitude within one LSB");
    require(cps, "IV", worst_exact, 1e-10, "W=0 branch carries exp(-kappa x) exp(i phi) per codeword");
    const double total = st.norm();
    double d0 = 0.0;
    for (std::uint64_t i = 0; i < amp.size(); ++i)
      if (regW.value(i) == 0) d0 += std::norm(amp[i]);
    res.residual_d_mass = 1.0 - d0 / (total * total);
    if (res.residual_d_mass >= 0.5) {
      res.warnings.push_back("residual W mass " + std::to_string(res.residual_d_mass) + " is not small");
    }
  }
  std::vector<Complex> after_four = amp;

  // Step V: QFT on the low t qubits of B for A = t.
  for (int t = 1; t <= t_top; ++t) {
    qsim::apply_qft_subregister(st, "B", t, Control::equals("A", static_cast<std::uint64_t>(t)));
  }
  {
    double worst = 0.0;
    for (int t = 1; t <= t_top; ++t) {
      Complex sum = 0.0;
      for (std::uint64_t p = 0; p < (std::uint64_t{1} << t); ++p) sum += after_four[idx(static_cast<std::uint64_t>(t), p, 0)];
      const Complex expect = sum * std::sqrt(std::ldexp(1.0, -t));
      const Complex got = amp[idx(static_cast<std::uint64_t>(t), 0, 0)];
      worst = std::max(worst, std::abs(got - expect) / std::max(std::abs(expect), 1e-300));
    }
    require(cps, "V", worst, 1e-10, "B=0 amplitude equals the normalized codeword sum");
  }

  // Step VI: amplification on B = 0 and W = 0, then readout of A.
  const qsim::BasisPredicate target = [&](std::uint64_t x) { return regB.value(x) == 0 && regW.value(x) == 0; };
  const double a = qsim::target_probability(st, target);
  const int k = qsim::plan_iterations(a);
  res.amplifications.push_back(qsim::amplitude_amplify(st, target, k));
  const auto& alog = res.amplifications.back();
  require(cps, "VI", std::max(0.0, alog.predicted_probability - alog.final_probability), 1e-9,
          "amplified success probability against sin^2((2k+1) theta0)");

  std::vector<Complex> readA = qsim::read_projected_amplitudes(st, "A", {{"B", 0}, {"W", 0}});
  if (cfg.readout == Readout::Shots) {
    // Magnitudes from sampled counts, phases from the exact amplitudes.
    std::vector<double> hits(readA.size(), 0.0);
    for (const auto& [basis, c] : qsim::sample_measurements(st, cfg.shots, cfg.seed)) {
      if (regB.value(basis) == 0 && regW.value(basis) == 0) hits[regA.value(basis)] += static_cast<double>(c);
    }
    for (std::size_t t = 0; t < readA.size(); ++t) {
      const double mag = std::sqrt(hits[t] / static_cast<double>(cfg.shots));
      readA[t] = std::abs(readA[t]) > 0.0 ? std::polar(mag, std::arg(readA[t])) : Complex(0.0);
    }
  }

  std::vector<Complex> oracle(static_cast<std::size_t>(cfg.t_max));
  for (int t = 1; t <= t_top; ++t) oracle[static_cast<std::size_t>(t)] = semiclassics::orbit_sum(orbits[static_cast<std::size_t>(t)]);
  const Complex tau1 = oracle[1];
  auto scaled = [&](int t) { return readA[static_cast<std::size_t>(t)] * std::sqrt(std::ldexp(1.0, t)); };
  const bool tau1_anchor = std::abs(tau1) > 1e-12 && std::abs(scaled(1)) > 0.0;
  for (int t = 1; t <= t_top; ++t) {
    TraceEstimate e;
    e.t = t;
    e.oracle = oracle[static_cast<std::size_t>(t)];
    e.estimate = tau1_anchor ? tau1 * scaled(t) / scaled(1) : scaled(t) / readA[0];
    e.defect = std::abs(e.estimate - e.oracle);
    double amp_sum = 0.0;
    for (const auto& o : orbits[static_cast<std::size_t>(t)]) amp_sum += o.A_p;
    e.bound = amp_sum * (kTwoPi * std::ldexp(1.0, -bC) + kappa);
    res.estimates.push_back(e);
  }
  return res;
}

}  // namespace semiclass::algorithms
