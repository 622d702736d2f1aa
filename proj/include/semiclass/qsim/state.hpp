#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semiclass/qsim/kernels.hpp"
#include "semiclass/qsim/layout.hpp"
#include "semiclass/quantum/unitary.hpp"

namespace semiclass::qsim {

using Complex = std::complex<double>;
using kernels::Exec;

/// Predicate on the value held by one register.
struct Control {
  std::string reg;
  std::function<bool(std::uint64_t)> pred;

  static Control equals(const std::string& reg, std::uint64_t v);
  static Control at_least(const std::string& reg, std::uint64_t v);
  static Control bit_set(const std::string& reg, int bit);
};

/// Predicate on a full basis label.
using BasisPredicate = std::function<bool(std::uint64_t)>;
using BasisFunction = std::function<std::uint64_t(std::uint64_t)>;

enum class GateKind { H, Ry, Pz };

struct Gate {
  GateKind kind = GateKind::H;
  double theta = 0.0;

  static Gate h() { return {GateKind::H, 0.0}; }
  /// exp(-i theta sigma_y) = [[cos, -sin], [sin, cos]]
  static Gate ry(double theta) { return {GateKind::Ry, theta}; }
  /// exp(-i theta sigma_z) = diag(e^{-i theta}, e^{i theta})
  static Gate pz(double theta) { return {GateKind::Pz, theta}; }
};

class QState {
 public:
  explicit QState(RegisterLayout layout);

  const RegisterLayout& layout() const { return layout_; }
  std::vector<Complex>& amplitudes() { return amp_; }
  const std::vector<Complex>& amplitudes() const { return amp_; }
  Complex amplitude(std::uint64_t basis) const { return amp_.at(basis); }

  void set_basis_state(std::uint64_t basis);
  double norm() const;

  Exec exec() const { return exec_; }
  void set_exec(Exec exec) { exec_ = exec; }

  /// Ordered op log as JSON lines, recorded while enabled.
  void enable_log(bool on) { logging_ = on; }
  const std::vector<std::string>& log() const { return log_; }
  void record(const std::string& json_line);

 private:
  RegisterLayout layout_;
  std::vector<Complex> amp_;
  Exec exec_ = Exec::Parallel;
  bool logging_ = false;
  std::vector<std::string> log_;
};

/// Global qubit index of bit `bit` inside register `reg`.
int qubit(const QState& state, const std::string& reg, int bit);

void apply_gate(QState& state, const Gate& gate, int target, const std::optional<Control>& control = std::nullopt);

/// Unitary DFT (or its inverse) on the lowest `active_width` qubits of a register.
void apply_qft_subregister(QState& state, const std::string& reg, int active_width,
                           const std::optional<Control>& control = std::nullopt, bool inverse = false);

/// N x N unitary on a register of width m with N <= 2^m; identity on the padding.
void apply_unitary_subregister(QState& state, const std::string& reg, const quantum::CMatrix& u,
                               const std::optional<Control>& control = std::nullopt);

/// new[f(x)] = old[x] over the support; collisions raise Irreversible.
void apply_basis_function(QState& state, const BasisFunction& f, const std::string& name = "f");
/// Inverse of apply_basis_function for the same f.
void uncompute_basis_function(QState& state, const BasisFunction& f, const std::string& name = "f");

double target_probability(const QState& state, const BasisPredicate& target);

/// floor(pi / (4 asin sqrt(a))); a = 0 raises EmptyTarget.
int plan_iterations(double a);

struct AmplificationLog {
  int iterations = 0;
  double initial_probability = 0.0;
  double predicted_probability = 0.0;
  double final_probability = 0.0;
};

/// k rounds of (target sign flip, reflection about the entry state).
AmplificationLog amplitude_amplify(QState& state, const BasisPredicate& target, int iterations);

/// Amplitudes over `keep` with every other register pinned.
std::vector<Complex> read_projected_amplitudes(const QState& state, const std::string& keep,
                                               const std::map<std::string, std::uint64_t>& pins);

/// Multinomial draw of basis outcomes.
std::map<std::uint64_t, std::uint64_t> sample_measurements(const QState& state, std::uint64_t shots,
                                                           std::uint64_t seed);

/// Counts of one register's values, marginalizing the others.
std::vector<std::uint64_t> sample_register(const QState& state, const std::string& reg, std::uint64_t shots,
                                           std::uint64_t seed);

/// Snapshot as a 2^n x 1 matrix in the quantum-maps binary format.
void export_state(const QState& state, const std::string& path);

}  // namespace semiclass::qsim
