#include "semiclass/algorithms/traces_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "semiclass/error.hpp"
#include "semiclass/quantum/quantize.hpp"
#include "semiclass/quantum/spectral.hpp"

namespace semiclass::algorithms {

using qsim::Control;
using qsim::Gate;
using qsim::QState;

TracesPipelineResult run_traces_from_quantum(const quantum::UnitaryMatrix& u, const TracesPipelineOptions& opt) {
  const int N = u.dim();
  if (N < 2) throw Error(ErrorKind::InvalidArgument, "N must be >= 2");
  if (opt.t_max < 2) throw Error(ErrorKind::InvalidArgument, "t_max must be >= 2");
  const int m = ceil_log2(static_cast<std::uint64_t>(N));
  const std::uint64_t M = std::uint64_t{1} << m;
  const int nA = std::max(1, ceil_log2(static_cast<std::uint64_t>(opt.t_max)));

  TracesPipelineResult res;
  res.N = N;
  res.register_bits = m;
  QState st(qsim::RegisterLayout({{"A", nA}, {"B", m}, {"C", m}, {"D", 1}}, opt.qubit_cap));
  const auto& A = st.layout().reg("A");
  const auto& B = st.layout().reg("B");
  const auto& C = st.layout().reg("C");
  const auto& D = st.layout().reg("D");
  auto idx = [&](std::uint64_t t, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return D.with_value(C.with_value(B.with_value(A.with_value(0, t), b), c), d);
  };
  auto& amp = st.amplitudes();
  auto& cps = res.checkpoints;

  // Step I: uniform A and B, C a copy of B (sum_i |i>_B |i>_C); D flags the
  // padding of B.
  for (int k = 0; k < nA; ++k) qsim::apply_gate(st, Gate::h(), qsim::qubit(st, "A", k));
  for (int k = 0; k < m; ++k) qsim::apply_gate(st, Gate::h(), qsim::qubit(st, "B", k));
  const qsim::BasisFunction copy = [&](std::uint64_t x) { return C.with_value(x, C.value(x) ^ B.value(x)); };
  qsim::apply_basis_function(st, copy, "copy");
  const auto nN = static_cast<std::uint64_t>(N);
  qsim::apply_basis_function(
      st, [&](std::uint64_t x) { return B.value(x) >= nN ? D.with_value(x, D.value(x) ^ 1u) : x; }, "pad_flag");
  res.d0_weight = qsim::target_probability(st, [&](std::uint64_t x) { return D.value(x) == 0; });
  require(cps, "I", std::fabs(res.d0_weight - static_cast<double>(N) / static_cast<double>(M)), 1e-12,
          "D=0 weight equals N/M");
  require_above(cps, "I", res.d0_weight, 0.5, "D=0 weight exceeds 1/2");

  // Step II: U applied t times to B on the A = t branch.
  for (int s = 1; s < opt.t_max; ++s) {
    qsim::apply_unitary_subregister(st, "B", u.matrix(), Control::at_least("A", static_cast<std::uint64_t>(s)));
  }
  {
    const double K = std::pow(2.0, -0.5 * (nA + m));
    quantum::CMatrix p = quantum::CMatrix::Identity(N, N);
    double worst = 0.0;
    for (int t = 0; t < opt.t_max; ++t) {
      for (int c = 0; c < N; ++c)
        for (int j = 0; j < N; ++j) {
          const Complex got = amp[idx(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(c), 0)];
          worst = std::max(worst, std::abs(got - K * p(j, c)));
        }
      p = p * u.matrix();
    }
    require(cps, "II", worst, 1e-10, "A=t branch of B carries U^t");
  }

  // Step III: select the diagonal B = C, fold it to C = 0, Fourier transform B.
  const qsim::BasisPredicate diag = [&](std::uint64_t x) { return B.value(x) == C.value(x) && D.value(x) == 0; };
  const int k1 = qsim::plan_iterations(qsim::target_probability(st, diag));
  res.amplifications.push_back(qsim::amplitude_amplify(st, diag, k1));
  require(cps, "III", std::max(0.0, res.amplifications.back().predicted_probability - res.amplifications.back().final_probability),
          1e-9, "diagonal selection success probability");
  qsim::apply_basis_function(st, copy, "fold");
  qsim::apply_qft_subregister(st, "B", m);
  const qsim::BasisPredicate zero = [&](std::uint64_t x) {
    return B.value(x) == 0 && C.value(x) == 0 && D.value(x) == 0;
  };
  const int k2 = qsim::plan_iterations(qsim::target_probability(st, zero));
  res.amplifications.push_back(qsim::amplitude_amplify(st, zero, k2));
  require(cps, "III", std::max(0.0, res.amplifications.back().predicted_probability - res.amplifications.back().final_probability),
          1e-9, "B=0 selection success probability");

  const quantum::TraceSeries exact = quantum::trace_powers(u, opt.t_max - 1);
  std::vector<Complex> readA = qsim::read_projected_amplitudes(st, "A", {{"B", 0}, {"C", 0}, {"D", 0}});
  {
    double worst = 0.0;
    for (int t = 1; t < opt.t_max; ++t) {
      const Complex rel = static_cast<double>(N) * readA[static_cast<std::size_t>(t)] / readA[0];
      worst = std::max(worst, std::abs(rel - exact.at(t)));
    }
    require(cps, "III", worst, 1e-9 * N, "B=0 amplitude per t proportional to tr U^t");
  }

  // Step IV: readout of A, rescaled by a classically known trace.
  if (opt.readout == Readout::Shots) {
    std::vector<double> hits(readA.size(), 0.0);
    for (const auto& [basis, c] : qsim::sample_measurements(st, opt.shots, opt.seed)) {
      if (zero(basis)) hits[A.value(basis)] += static_cast<double>(c);
    }
    for (std::size_t t = 0; t < readA.size(); ++t) {
      const double mag = std::sqrt(hits[t] / static_cast<double>(opt.shots));
      readA[t] = std::abs(readA[t]) > 0.0 ? std::polar(mag, std::arg(readA[t])) : Complex(0.0);
    }
  }
  const Complex tr1 = exact.at(1);
  const bool use_tr1 = std::abs(tr1) > 1e-9 && std::abs(readA[1]) > 0.0;
  res.anchor = use_tr1 ? "tr U" : "t=0";
  const double floor_amp = 1e-13 * std::abs(readA[0]);
  for (int t = 1; t < opt.t_max; ++t) {
    TraceEstimate e;
    e.t = t;
    e.oracle = exact.at(t);
    const Complex a = readA[static_cast<std::size_t>(t)];
    if (std::abs(a) <= floor_amp) {
      e.estimate = 0.0;
      e.exact_zero = true;
    } else {
      e.estimate = use_tr1 ? tr1 * a / readA[1] : static_cast<double>(N) * a / readA[0];
    }
    e.defect = std::abs(e.estimate - e.oracle);
    res.estimates.push_back(e);
  }
  return res;
}

TracesPipelineResult run_traces_from_quantum(const classical::MapModel& model, int N,
                                             const TracesPipelineOptions& options) {
  return run_traces_from_quantum(quantum::quantize(model, N), options);
}

ProbeResult integrability_probe(const quantum::UnitaryMatrix& u, int qubit_cap) {
  const int N = u.dim();
  if (N < 2) throw Error(ErrorKind::InvalidArgument, "N must be >= 2");
  const int m = ceil_log2(static_cast<std::uint64_t>(N));
  QState st(qsim::RegisterLayout({{"B", m}, {"C", m}, {"D", 1}}, qubit_cap));
  const auto& B = st.layout().reg("B");
  const auto& C = st.layout().reg("C");
  const auto& D = st.layout().reg("D");
  const auto nN = static_cast<std::uint64_t>(N);
  const qsim::BasisFunction copy = [&](std::uint64_t x) { return C.with_value(x, C.value(x) ^ B.value(x)); };

  for (int k = 0; k < m; ++k) qsim::apply_gate(st, Gate::h(), qsim::qubit(st, "B", k));
  qsim::apply_basis_function(st, copy, "copy");
  qsim::apply_basis_function(
      st, [&](std::uint64_t x) { return B.value(x) >= nN ? D.with_value(x, D.value(x) ^ 1u) : x; }, "pad_flag");
  qsim::apply_unitary_subregister(st, "B", u.matrix());
  qsim::apply_unitary_subregister(st, "B", u.matrix());
  qsim::apply_basis_function(st, copy, "fold");
  qsim::apply_qft_subregister(st, "B", m);

  const qsim::BasisPredicate zero = [&](std::uint64_t x) {
    return B.value(x) == 0 && C.value(x) == 0 && D.value(x) == 0;
  };
  ProbeResult r;
  r.N = N;
  r.rounds = static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(N))));
  r.initial_probability = qsim::target_probability(st, zero);
  if (!(r.initial_probability > 0.0)) {
    r.probabilities.assign(static_cast<std::size_t>(r.rounds) + 1, 0.0);
    return r;
  }
  for (int k = 0; k <= r.rounds; ++k) {
    QState trial = st;
    const double p = qsim::amplitude_amplify(trial, zero, k).final_probability;
    r.probabilities.push_back(p);
    if (p > r.best_probability) {
      r.best_probability = p;
      r.best_round = k;
    }
  }
  r.final_probability = r.probabilities.back();
  r.integrable_like = r.best_probability >= 0.5;
  return r;
}

ProbeResult integrability_probe(const classical::MapModel& model, int N, int qubit_cap) {
  return integrability_probe(quantum::quantize(model, N), qubit_cap);
}

}  // namespace semiclass::algorithms
