#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace semiclass::qsim::kernels {

using Complex = std::complex<double>;

enum class Exec { Serial, Parallel };

/// Control on one register: the gate acts where table[(index >> offset) & mask] != 0.
/// An empty table means no control.
struct ControlTable {
  int offset = 0;
  std::uint64_t mask = 0;
  std::vector<std::uint8_t> table;

  bool active() const { return !table.empty(); }
  bool pass(std::uint64_t index) const { return table.empty() || table[(index >> offset) & mask] != 0; }
};

/// Row-major 2x2 gate on one qubit.
void apply_1q(Complex* amp, std::uint64_t dim, int target, const Complex (&g)[4], const ControlTable& ctrl,
              Exec exec);

/// Row-major (2^width)^2 matrix on qubits [offset, offset + width).
void apply_fiber(Complex* amp, std::uint64_t dim, int offset, int width, const std::vector<Complex>& m,
                 const ControlTable& ctrl, Exec exec);

/// Unitary DFT, exp(-2 pi i j k / 2^width) / sqrt(2^width), or its inverse on
/// qubits [offset, offset + width), evaluated per fiber by FFT.
void apply_fiber_dft(Complex* amp, std::uint64_t dim, int offset, int width, bool inverse, const ControlTable& ctrl,
                     Exec exec);

/// Elementwise sign flip where flags[index] != 0.
void flip_marked(Complex* amp, std::uint64_t dim, const std::vector<std::uint8_t>& flags, Exec exec);

/// amp <- 2 <ref|amp> ref - amp. Reduction over fixed blocks in index order,
/// so serial and parallel results agree bit for bit.
void reflect_about(Complex* amp, const Complex* ref, std::uint64_t dim, Exec exec);

/// sum |amp|^2 over flagged indices (all when flags is empty), blockwise in
/// index order.
double marked_weight(const Complex* amp, std::uint64_t dim, const std::vector<std::uint8_t>& flags, Exec exec);

}  // namespace semiclass::qsim::kernels
