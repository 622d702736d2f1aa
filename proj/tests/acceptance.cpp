// Acceptance gate: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "semiclass/algorithms/phase_estimation.hpp"
#include "semiclass/algorithms/spectrum_pipeline.hpp"
#include "semiclass/algorithms/traces_pipeline.hpp"
#include "semiclass/classical/orbits.hpp"
#include "semiclass/error.hpp"
#include "semiclass/qsim/state.hpp"
#include "semiclass/quantum/quantize.hpp"
#include "semiclass/quantum/spectral.hpp"
#include "semiclass/semiclassics/action_spectrum.hpp"
#include "semiclass/semiclassics/period.hpp"
#include "semiclass/semiclassics/trace_formula.hpp"

using namespace semiclass;
using classical::MapModel;
using classical::make_cat_matrix;
using Complex = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int report(int id, const char* name, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s %d %s:%s (%.2fs)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.str().c_str(), secs);
  std::fflush(stdout);
  return v.pass ? 0 : 1;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void cat_exactness(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto base = MapModel::cat(make_cat_matrix(2, 1, 3, 2));
  const auto cal = semiclassics::calibrate_maslov(base, 5);
  const auto model = base.with_maslov_per_step(cal.nu_per_step);
  double worst = 0.0;
  for (int N : {5, 8, 13, 21}) {
    const auto u = quantum::quantize(model, N);
    for (int t = 1; t <= 3; ++t) {
      worst = std::max(worst, std::abs(semiclassics::semiclassical_trace(model, t, N) - oracles::trace_power(u.matrix(), t)));
    }
  }
  v.detail << " nu=" << cal.nu_per_step << " max|tau-trU^t|=" << worst;
  v.check(worst <= 1e-6, "defect");
  v.check(seconds_since(t0) < 10.0, "runtime");
}

void orbit_counting(Verdict& v) {
  for (auto m : {make_cat_matrix(2, 1, 3, 2), make_cat_matrix(2, 1, 1, 1)}) {
    const auto model = MapModel::cat(m);
    for (int t = 1; t <= 6; ++t) {
      const auto mt = m.pow(t);
      const std::int64_t det = std::llabs((mt.t11 - 1) * (mt.t22 - 1) - mt.t12 * mt.t21);
      const auto n = classical::count_points(classical::enumerate_periodic_orbits(model, t));
      if (n != det) {
        v.check(false, "cat t=" + std::to_string(t));
      }
    }
  }
  for (int t = 1; t <= 12; ++t) {
    const auto n = classical::count_points(classical::enumerate_periodic_orbits(MapModel::baker(), t));
    if (n != (std::int64_t{1} << t)) v.check(false, "baker t=" + std::to_string(t));
  }
  v.detail << " cat t<=6 and baker t<=12 counted";
}

struct PolyCheck {
  double beta = 0.0;
  double resurgence = 0.0;
  double half = 0.0;
};

void poly_check(const quantum::UnitaryMatrix& u, PolyCheck& acc) {
  const int N = u.dim();
  const auto series = quantum::trace_powers(u, N);
  quantum::CharPolyOptions opt;
  opt.det_minus_u = quantum::det_minus_u(u);
  const auto full = quantum::char_poly_from_traces(series, N, opt);
  const auto ref = oracles::leja_char_poly(oracles::eigenvalues(u.matrix()));
  opt.half_traces = true;
  const auto half = quantum::char_poly_from_traces(series, N, opt);
  for (int k = 0; k <= N; ++k) {
    acc.beta = std::max(acc.beta, std::abs(full.beta[k] - ref[k]));
    acc.half = std::max(acc.half, std::abs(half.beta[k] - full.beta[k]));
  }
  acc.resurgence = std::max(acc.resurgence, full.resurgence_residual.value_or(1.0));
}

void newton_resurgence(Verdict& v) {
  PolyCheck acc;
  for (int N = 2; N <= 64; N += 2) poly_check(quantum::quantize_baker(N), acc);
  for (int N = 1; N <= 64; ++N) poly_check(quantum::quantize_cat(make_cat_matrix(2, 1, 3, 2), N), acc);
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> dim(2, 32);
  for (int i = 0; i < 20; ++i) poly_check(quantum::UnitaryMatrix(oracles::haar_unitary(dim(rng), rng), 1e-12), acc);
  v.detail << " beta=" << acc.beta << " resurgence=" << acc.resurgence << " half=" << acc.half;
  v.check(acc.beta <= 1e-8, "beta");
  v.check(acc.resurgence <= 1e-9, "resurgence");
  v.check(acc.half <= 1e-8, "half-trace");
}

void orbit_pipeline(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto model = semiclassics::calibrated(MapModel::baker());
  double max_defect[2] = {0.0, 0.0};
  const int bits[2] = {8, 10};
  for (int i = 0; i < 2; ++i) {
    algorithms::SpectrumPipelineConfig cfg;
    cfg.model = model;
    cfg.t_max = 4;
    cfg.N = 16;
    cfg.phase_bits = bits[i];
    cfg.amplitude_bits = bits[i];
    const auto r = algorithms::run_spectrum_from_orbits(cfg);
    v.check(r.qubits <= 24, "qubit budget");
    for (const auto& e : r.estimates) {
      max_defect[i] = std::max(max_defect[i], e.defect);
      v.check(e.defect <= e.bound, "bound at b=" + std::to_string(bits[i]) + " t=" + std::to_string(e.t));
    }
    int passed = 0;
    std::set<std::string> steps;
    for (const auto& c : r.checkpoints) {
      passed += c.passed;
      steps.insert(c.step);
    }
    v.check(passed == static_cast<int>(r.checkpoints.size()) && steps.size() == 6, "checkpoints");
  }
  const double ratio = max_defect[0] / max_defect[1];
  v.detail << " N=16 defect(b=8)=" << max_defect[0] << " defect(b=10)=" << max_defect[1] << " ratio=" << ratio;
  v.check(ratio >= 1.8, "ratio");
  v.check(seconds_since(t0) < 300.0, "runtime");
}

void quantum_pipeline(Verdict& v) {
  const MapModel models[2] = {MapModel::baker(), MapModel::cat(make_cat_matrix(2, 1, 3, 2))};
  const int dims[2] = {4, 5};
  algorithms::TracesPipelineOptions opt;
  opt.t_max = 4;
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    const auto u = quantum::quantize(models[i], dims[i]);
    const auto r = algorithms::run_traces_from_quantum(models[i], dims[i], opt);
    for (const auto& e : r.estimates) worst = std::max(worst, std::abs(e.estimate - oracles::trace_power(u.matrix(), e.t)));
    v.detail << " D0(N=" << dims[i] << ")=" << r.d0_weight;
    v.check(r.d0_weight > 0.5, "D=0 weight");
  }
  v.detail << " max defect=" << worst;
  v.check(worst <= 1e-9, "estimates");
}

void probe(Verdict& v) {
  const auto kicked = MapModel::kicked({0.0, 1.0, classical::Potential::Cosine});
  for (int N : {16, 64}) {
    const auto a = algorithms::integrability_probe(kicked, N);
    const auto b = algorithms::integrability_probe(MapModel::baker(), N);
    v.detail << " kicked" << N << "=" << a.best_probability << " baker" << N << "=" << b.best_probability;
    v.check(a.integrable_like, "kicked N=" + std::to_string(N));
    v.check(!b.integrable_like, "baker N=" + std::to_string(N));
  }
}

void action_peaks(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto model = semiclassics::calibrated(MapModel::cat(make_cat_matrix(2, 1, 3, 2)));
  const auto spectrum = semiclassics::action_spectrum(model, 1, 256);
  double worst = 0.0;
  for (const auto& o : semiclassics::completed_orbits(model, 1, 1)) {
    double best = 1.0;
    for (const auto& p : spectrum.peaks) best = std::min(best, oracles::circ_dist(p.frequency, o.S_p));
    worst = std::max(worst, best);
    v.detail << " S=" << o.S_p;
  }
  v.detail << " worst distance=" << worst;
  v.check(worst <= 1.0 / 256, "peak distance");
  v.check(seconds_since(t0) < 120.0, "runtime");
}

void periods(Verdict& v) {
  const auto m = make_cat_matrix(2, 1, 3, 2);
  double residual = 0.0;
  for (int N = 2; N <= 64; ++N) {
    const auto rec = semiclassics::period_functions(m, N);
    residual = std::max(residual, rec.lattice_residual);
    if (!(rec.n == rec.g || 2 * rec.n == rec.g || rec.n == 2 * rec.g)) v.check(false, "n/g at N=" + std::to_string(N));
    if (rec.g != oracles::order_mod({2, 1, 3, 2}, N)) v.check(false, "g at N=" + std::to_string(N));
  }
  int recovered = 0;
  for (int N = 2; N <= 32; ++N) {
    algorithms::PhaseEstimationConfig cfg;
    cfg.M = m;
    cfg.N = N;
    cfg.bits = 10;
    cfg.seed = 1000 + N;
    const auto r = algorithms::phase_estimation_cat(cfg);
    const auto est = algorithms::period_from_phases(r.counts, 10);
    const int brute = oracles::matrix_order(quantum::quantize_cat(m, N).matrix(), 8 * N);
    if (est.n == brute) {
      ++recovered;
    } else {
      v.check(false, "phase estimation N=" + std::to_string(N) + " got " + std::to_string(est.n) + " want " +
                         std::to_string(brute));
    }
  }
  v.detail << " lattice residual=" << residual << " recovered " << recovered << "/31";
  v.check(residual <= 1e-8, "residual");
}

void simulator_laws(Verdict& v) {
  using namespace qsim;
  std::mt19937_64 rng(77);
  double grover = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    QState s(RegisterLayout({{"r", 7}}));
    const auto init = oracles::random_state(128, rng);
    s.amplitudes() = init;
    std::vector<std::uint8_t> marked(128, 0);
    for (int i = 0; i <= trial % 7; ++i) marked[rng() % 128] = 1;
    double a = 0.0;
    for (int i = 0; i < 128; ++i)
      if (marked[i]) a += std::norm(init[i]);
    const double th = std::asin(std::sqrt(a));
    const int k = static_cast<int>(rng() % 8);
    amplitude_amplify(s, [&](std::uint64_t b) { return marked[b] != 0; }, k);
    Complex good = 0.0;
    for (int i = 0; i < 128; ++i)
      if (marked[i]) good += std::conj(init[i]) * s.amplitude(i);
    grover = std::max(grover, std::abs(good / std::sqrt(a) - oracles::grover_good_amplitude(th, k)));
  }
  double qft = 0.0;
  const auto f = oracles::dft_direct(8);
  for (int j = 0; j < 8; ++j) {
    QState s(RegisterLayout({{"r", 3}}));
    s.set_basis_state(j);
    apply_qft_subregister(s, "r", 3);
    for (int k = 0; k < 8; ++k) qft = std::max(qft, std::abs(s.amplitude(k) - f(k, j)));
  }
  bool identity = true;
  {
    QState s(RegisterLayout({{"x", 4}, {"y", 4}}));
    const auto init = oracles::random_state(256, rng);
    s.amplitudes() = init;
    const auto& x = s.layout().reg("x");
    const auto& y = s.layout().reg("y");
    const BasisFunction fn = [&](std::uint64_t b) { return y.with_value(b, y.value(b) ^ ((x.value(b) * 7 + 2) & 15)); };
    apply_basis_function(s, fn);
    uncompute_basis_function(s, fn);
    for (int i = 0; i < 256; ++i) identity = identity && s.amplitude(i) == init[i];
  }
  double norm = 0.0;
  {
    QState s(RegisterLayout({{"a", 3}, {"b", 4}, {"c", 4}}));
    s.amplitudes() = oracles::random_state(2048, rng);
    const auto u = oracles::haar_unitary(13, rng);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    const auto& ra = s.layout().reg("a");
    const auto& rc = s.layout().reg("c");
    const BasisFunction fn = [&](std::uint64_t b) { return rc.with_value(b, rc.value(b) ^ ra.value(b)); };
    for (int i = 0; i < 10000; ++i) {
      switch (rng() % 7) {
        case 0: apply_gate(s, Gate::h(), static_cast<int>(rng() % 11)); break;
        case 1: apply_gate(s, Gate::ry(ang(rng)), qubit(s, "b", static_cast<int>(rng() % 4)), Control::equals("a", rng() % 8)); break;
        case 2: apply_gate(s, Gate::pz(ang(rng)), qubit(s, "a", static_cast<int>(rng() % 3))); break;
        case 3: apply_qft_subregister(s, "c", 1 + static_cast<int>(rng() % 4), Control::at_least("a", rng() % 8), rng() % 2); break;
        case 4: apply_unitary_subregister(s, "b", u, Control::bit_set("a", static_cast<int>(rng() % 3))); break;
        case 5: apply_basis_function(s, fn); break;
        case 6: amplitude_amplify(s, [](std::uint64_t b) { return (b & 7) == 3; }, 1); break;
      }
      norm = std::max(norm, std::abs(s.norm() - 1.0));
    }
  }
  v.detail << " grover=" << grover << " qft=" << qft << " uncompute=" << (identity ? "exact" : "inexact")
           << " fuzz norm=" << norm;
  v.check(grover <= 1e-9, "grover");
  v.check(qft <= 1e-12, "qft");
  v.check(identity, "uncompute");
  v.check(norm <= 1e-10, "norm");
}

}  // namespace

int main() {
  int failures = 0;
  failures += report(1, "cat-map exactness", cat_exactness);
  failures += report(2, "orbit counting", orbit_counting);
  failures += report(3, "newton recurrence and resurgence", newton_resurgence);
  failures += report(4, "orbit-sum pipeline", orbit_pipeline);
  failures += report(5, "trace-selection pipeline", quantum_pipeline);
  failures += report(6, "integrability probe", probe);
  failures += report(7, "action spectrum", action_peaks);
  failures += report(8, "period functions", periods);
  failures += report(9, "simulator laws", simulator_laws);
  return failures == 0 ? 0 : 1;
}
