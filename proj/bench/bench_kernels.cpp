#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "semiclass/qsim/kernels.hpp"

using namespace semiclass::qsim::kernels;

namespace {

std::vector<Complex> random_vector(int qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(std::size_t{1} << qubits);
  for (auto& z : v) z = Complex(g(rng), g(rng));
  return v;
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(1) ? "parallel" : "serial"); }

void BM_Apply1q(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto v = random_vector(n, 1);
  const double s = std::sqrt(0.5);
  const Complex h[4] = {s, s, s, -s};
  for (auto _ : state) {
    for (int q = 0; q < n; ++q) apply_1q(v.data(), v.size(), q, h, {}, exec_of(state));
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * n * static_cast<std::int64_t>(v.size()));
  label(state);
}

void BM_ControlledFiber(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto v = random_vector(n, 2);
  std::vector<Complex> m(64, 0.0);
  for (int i = 0; i < 8; ++i) m[static_cast<std::size_t>(i * 8 + (i + 3) % 8)] = 1.0;
  ControlTable ctrl{3, 7, {0, 1, 1, 0, 1, 0, 1, 1}};
  for (auto _ : state) {
    apply_fiber(v.data(), v.size(), 6, 3, m, ctrl, exec_of(state));
    benchmark::ClobberMemory();
  }
  label(state);
}

void BM_FiberDft(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto v = random_vector(n, 3);
  for (auto _ : state) {
    apply_fiber_dft(v.data(), v.size(), 0, 8, false, {}, exec_of(state));
    benchmark::ClobberMemory();
  }
  label(state);
}

void BM_Reflect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto v = random_vector(n, 4);
  const auto ref = random_vector(n, 5);
  for (auto _ : state) {
    reflect_about(v.data(), ref.data(), v.size(), exec_of(state));
    benchmark::ClobberMemory();
  }
  label(state);
}

void BM_MarkedWeight(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto v = random_vector(n, 6);
  std::vector<std::uint8_t> flags(v.size());
  for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = (i * 2654435761u) >> 31 & 1;
  for (auto _ : state) benchmark::DoNotOptimize(marked_weight(v.data(), v.size(), flags, exec_of(state)));
  label(state);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {14, 18, 20})
    for (int p : {0, 1}) b->Args({n, p});
}

}  // namespace

BENCHMARK(BM_Apply1q)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ControlledFiber)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FiberDft)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reflect)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MarkedWeight)->Apply(sizes)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
