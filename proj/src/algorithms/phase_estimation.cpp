#include "semiclass/algorithms/phase_estimation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "semiclass/error.hpp"
#include "semiclass/quantum/quantize.hpp"

namespace semiclass::algorithms {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

double lattice_gap(double a) { return std::fabs(a - kTwoPi * std::round(a / kTwoPi)); }

}  // namespace

PhaseEstimationResult phase_estimation_cat(const PhaseEstimationConfig& cfg) {
  if (cfg.bits < 1) throw Error(ErrorKind::InvalidArgument, "ancilla bits must be >= 1");
  if (cfg.N < 1) throw Error(ErrorKind::InvalidArgument, "N must be >= 1");
  const quantum::UnitaryMatrix u = quantum::quantize_cat(cfg.M, cfg.N);
  const int N = cfg.N;
  const int m = std::max(1, ceil_log2(static_cast<std::uint64_t>(N)));

  PhaseEstimationResult res;
  res.bits = cfg.bits;
  res.probabilities.assign(std::size_t{1} << cfg.bits, 0.0);
  res.counts.assign(std::size_t{1} << cfg.bits, 0);

  std::vector<quantum::CVector> inputs;
  if (cfg.input == InputState::Eigenvector) {
    Eigen::ComplexEigenSolver<quantum::CMatrix> solver(u.matrix());
    if (cfg.eigen_index < 0 || cfg.eigen_index >= N) throw Error(ErrorKind::InvalidArgument, "eigenvector index out of range");
    inputs.push_back(solver.eigenvectors().col(cfg.eigen_index).normalized());
    res.reference_phase = wrap_angle(std::arg(solver.eigenvalues()(cfg.eigen_index)));
  } else {
    if (cfg.random_inputs < 1) throw Error(ErrorKind::InvalidArgument, "need at least one random input");
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int r = 0; r < cfg.random_inputs; ++r) {
      quantum::CVector psi(N);
      for (int i = 0; i < N; ++i) psi(i) = Complex(g(rng), g(rng));
      inputs.push_back(psi.normalized());
    }
  }

  // U^(2^j) by repeated squaring.
  std::vector<quantum::CMatrix> powers{u.matrix()};
  for (int j = 1; j < cfg.bits; ++j) powers.push_back(powers.back() * powers.back());

  const qsim::RegisterLayout layout({{"anc", cfg.bits}, {"sys", m}}, cfg.qubit_cap);
  const auto& sys = layout.reg("sys");
  const auto& anc = layout.reg("anc");
  for (std::size_t r = 0; r < inputs.size(); ++r) {
    qsim::QState st(layout);
    auto& amp = st.amplitudes();
    std::fill(amp.begin(), amp.end(), Complex(0.0));
    for (int i = 0; i < N; ++i) amp[sys.with_value(0, static_cast<std::uint64_t>(i))] = inputs[r](i);
    for (int j = 0; j < cfg.bits; ++j) qsim::apply_gate(st, qsim::Gate::h(), qsim::qubit(st, "anc", j));
    for (int j = 0; j < cfg.bits; ++j) {
      qsim::apply_unitary_subregister(st, "sys", powers[static_cast<std::size_t>(j)], qsim::Control::bit_set("anc", j));
    }
    qsim::apply_qft_subregister(st, "anc", cfg.bits);
    for (std::uint64_t i = 0; i < amp.size(); ++i) {
      res.probabilities[anc.value(i)] += std::norm(amp[i]) / static_cast<double>(inputs.size());
    }
    const auto c = qsim::sample_register(st, "anc", cfg.shots, cfg.seed + 0x9e3779b97f4a7c15ULL * (r + 1));
    for (std::size_t i = 0; i < c.size(); ++i) res.counts[i] += c[i];
  }
  return res;
}

PeriodEstimate period_from_phases(const std::vector<std::uint64_t>& counts, int bits) {
  const std::size_t B = std::size_t{1} << bits;
  if (counts.size() != B) throw Error(ErrorKind::InvalidArgument, "histogram size must be 2^bits");
  PeriodEstimate est;
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (!(total > 0.0)) throw Error(ErrorKind::InsufficientData, "empty phase histogram");
  const double bin = kTwoPi / static_cast<double>(B);
  const double threshold = 0.005 * total;

  std::vector<std::size_t> sig;
  for (std::size_t i = 0; i < B; ++i)
    if (static_cast<double>(counts[i]) >= threshold) sig.push_back(i);
  if (sig.empty()) {
    est.resolved = false;
    est.warnings.push_back("no significant phase bins");
    return est;
  }

  // Runs of significant bins separated by at most 3 bins, merged circularly.
  std::vector<std::pair<std::size_t, std::size_t>> runs;  // [first, last]
  for (std::size_t i : sig) {
    if (!runs.empty() && i - runs.back().second <= 3) {
      runs.back().second = i;
    } else {
      runs.push_back({i, i});
    }
  }
  if (runs.size() > 1 && runs.front().first + B - runs.back().second <= 3) {
    runs.front().first = runs.back().first;
    runs.pop_back();
  }

  std::vector<double> weights;
  for (const auto& [first, last] : runs) {
    const std::size_t span = (last + B - first) % B;
    Complex acc = 0.0;
    double w = 0.0;
    for (std::size_t d = 0; d <= span + 2; ++d) {
      const std::size_t i = (first + B - 1 + d) % B;
      acc += static_cast<double>(counts[i]) * std::polar(1.0, bin * static_cast<double>(i));
      w += static_cast<double>(counts[i]);
    }
    est.centers.push_back(wrap_angle(std::arg(acc)));
    weights.push_back(w);
  }

  const std::int64_t n_cap = static_cast<std::int64_t>(B / 8);
  for (std::int64_t n = 1; n <= n_cap && est.n == 0; ++n) {
    bool ok = true;
    for (std::size_t i = 1; i < est.centers.size() && ok; ++i) {
      ok = lattice_gap(static_cast<double>(n) * (est.centers[i] - est.centers[0])) <= 2.0 * static_cast<double>(n) * bin;
    }
    if (ok) est.n = n;
  }
  if (est.n == 0) {
    est.resolved = false;
    est.warnings.push_back("no lattice period up to 2^bits/8 fits the phase clusters; increase bits");
    return est;
  }
  if (static_cast<double>(B) / static_cast<double>(est.n) < 16.0) {
    est.warnings.push_back("lattice spacing below 16 bins; resolution is marginal");
  }
  Complex acc = 0.0;
  for (std::size_t i = 0; i < est.centers.size(); ++i) {
    acc += weights[i] * std::polar(1.0, static_cast<double>(est.n) * est.centers[i]);
  }
  est.phi = wrap_angle(std::arg(acc));
  return est;
}

}  // namespace semiclass::algorithms
