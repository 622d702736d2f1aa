#include "semiclass/qsim/kernels.hpp"

#include <unsupported/Eigen/FFT>
#include <cmath>

namespace semiclass::qsim::kernels {
namespace {

constexpr std::uint64_t kBlock = 4096;

inline std::uint64_t insert_zero_bits(std::uint64_t i, int offset, int width) {
  const std::uint64_t lo = i & ((std::uint64_t{1} << offset) - 1);
  return ((i >> offset) << (offset + width)) | lo;
}

inline void pair_update(Complex* amp, std::uint64_t i, int target, const Complex (&g)[4], const ControlTable& ctrl) {
  const std::uint64_t i0 = insert_zero_bits(i, target, 1);
  if (!ctrl.pass(i0)) return;
  const std::uint64_t i1 = i0 | (std::uint64_t{1} << target);
  const Complex a0 = amp[i0];
  const Complex a1 = amp[i1];
  amp[i0] = g[0] * a0 + g[1] * a1;
  amp[i1] = g[2] * a0 + g[3] * a1;
}

void fiber_update(Complex* amp, std::uint64_t o, int offset, int width, const std::vector<Complex>& m,
                  const ControlTable& ctrl, std::vector<Complex>& buf) {
  const std::uint64_t base = insert_zero_bits(o, offset, width);
  if (!ctrl.pass(base)) return;
  const std::uint64_t n = std::uint64_t{1} << width;
  for (std::uint64_t j = 0; j < n; ++j) buf[j] = amp[base | (j << offset)];
  for (std::uint64_t r = 0; r < n; ++r) {
    Complex acc = 0.0;
    const Complex* row = m.data() + r * n;
    for (std::uint64_t c = 0; c < n; ++c) acc += row[c] * buf[c];
    amp[base | (r << offset)] = acc;
  }
}

struct DftWorkspace {
  Eigen::FFT<double> fft;
  std::vector<Complex> in;
  std::vector<Complex> out;
};

void fiber_dft(Complex* amp, std::uint64_t o, int offset, int width, bool inverse, const ControlTable& ctrl,
               DftWorkspace& ws) {
  const std::uint64_t base = insert_zero_bits(o, offset, width);
  if (!ctrl.pass(base)) return;
  const std::uint64_t n = std::uint64_t{1} << width;
  for (std::uint64_t j = 0; j < n; ++j) ws.in[j] = amp[base | (j << offset)];
  double scale = 1.0 / std::sqrt(static_cast<double>(n));
  if (inverse) {
    ws.fft.inv(ws.out, ws.in);
    scale = std::sqrt(static_cast<double>(n));
  } else {
    ws.fft.fwd(ws.out, ws.in);
  }
  for (std::uint64_t j = 0; j < n; ++j) amp[base | (j << offset)] = ws.out[j] * scale;
}

}  // namespace

void apply_fiber_dft(Complex* amp, std::uint64_t dim, int offset, int width, bool inverse, const ControlTable& ctrl,
                     Exec exec) {
  const std::uint64_t outer = dim >> width;
  const std::uint64_t n = std::uint64_t{1} << width;
  if (exec == Exec::Serial) {
    DftWorkspace ws{{}, std::vector<Complex>(n), std::vector<Complex>(n)};
    for (std::uint64_t o = 0; o < outer; ++o) fiber_dft(amp, o, offset, width, inverse, ctrl, ws);
    return;
  }
#pragma omp parallel
  {
    DftWorkspace ws{{}, std::vector<Complex>(n), std::vector<Complex>(n)};
#pragma omp for schedule(static)
    for (std::uint64_t o = 0; o < outer; ++o) fiber_dft(amp, o, offset, width, inverse, ctrl, ws);
  }
}

void apply_1q(Complex* amp, std::uint64_t dim, int target, const Complex (&g)[4], const ControlTable& ctrl,
              Exec exec) {
  const std::uint64_t half = dim >> 1;
  if (exec == Exec::Serial) {
    for (std::uint64_t i = 0; i < half; ++i) pair_update(amp, i, target, g, ctrl);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::uint64_t i = 0; i < half; ++i) pair_update(amp, i, target, g, ctrl);
}

void apply_fiber(Complex* amp, std::uint64_t dim, int offset, int width, const std::vector<Complex>& m,
                 const ControlTable& ctrl, Exec exec) {
  const std::uint64_t outer = dim >> width;
  const std::uint64_t n = std::uint64_t{1} << width;
  if (exec == Exec::Serial) {
    std::vector<Complex> buf(n);
    for (std::uint64_t o = 0; o < outer; ++o) fiber_update(amp, o, offset, width, m, ctrl, buf);
    return;
  }
#pragma omp parallel
  {
    std::vector<Complex> buf(n);
#pragma omp for schedule(static)
    for (std::uint64_t o = 0; o < outer; ++o) fiber_update(amp, o, offset, width, m, ctrl, buf);
  }
}

void flip_marked(Complex* amp, std::uint64_t dim, const std::vector<std::uint8_t>& flags, Exec exec) {
  if (exec == Exec::Serial) {
    for (std::uint64_t i = 0; i < dim; ++i)
      if (flags[i]) amp[i] = -amp[i];
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::uint64_t i = 0; i < dim; ++i)
    if (flags[i]) amp[i] = -amp[i];
}

namespace {

template <typename F>
Complex blocked_sum(std::uint64_t dim, Exec exec, F term) {
  const std::uint64_t blocks = (dim + kBlock - 1) / kBlock;
  std::vector<Complex> partial(blocks);
  auto run = [&](std::uint64_t b) {
    Complex acc = 0.0;
    const std::uint64_t end = std::min(dim, (b + 1) * kBlock);
    for (std::uint64_t i = b * kBlock; i < end; ++i) acc += term(i);
    partial[b] = acc;
  };
  if (exec == Exec::Serial) {
    for (std::uint64_t b = 0; b < blocks; ++b) run(b);
  } else {
#pragma omp parallel for schedule(static)
    for (std::uint64_t b = 0; b < blocks; ++b) run(b);
  }
  Complex total = 0.0;
  for (const Complex& p : partial) total += p;
  return total;
}

}  // namespace

void reflect_about(Complex* amp, const Complex* ref, std::uint64_t dim, Exec exec) {
  const Complex overlap = blocked_sum(dim, exec, [&](std::uint64_t i) { return std::conj(ref[i]) * amp[i]; });
  const Complex two = 2.0 * overlap;
  if (exec == Exec::Serial) {
    for (std::uint64_t i = 0; i < dim; ++i) amp[i] = two * ref[i] - amp[i];
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::uint64_t i = 0; i < dim; ++i) amp[i] = two * ref[i] - amp[i];
}

double marked_weight(const Complex* amp, std::uint64_t dim, const std::vector<std::uint8_t>& flags, Exec exec) {
  const bool all = flags.empty();
  return blocked_sum(dim, exec, [&](std::uint64_t i) {
           return (all || flags[i]) ? Complex(std::norm(amp[i]), 0.0) : Complex(0.0);
         }).real();
}

}  // namespace semiclass::qsim::kernels
