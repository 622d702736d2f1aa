#include "semiclass/qsim/state.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <random>

#include "semiclass/error.hpp"
#include "semiclass/quantum/matrix_io.hpp"

namespace semiclass::qsim {
namespace {

kernels::ControlTable make_table(const RegisterLayout& layout, const std::optional<Control>& control) {
  kernels::ControlTable t;
  if (!control) return t;
  const Register& r = layout.reg(control->reg);
  t.offset = r.offset;
  t.mask = r.mask();
  t.table.resize(static_cast<std::size_t>(r.mask()) + 1);
  for (std::uint64_t v = 0; v <= r.mask(); ++v) t.table[v] = control->pred(v) ? 1 : 0;
  return t;
}

bool overlaps(const Register& r, int lo, int width) {
  return lo < r.offset + r.width && r.offset < lo + width;
}

std::vector<std::uint8_t> tabulate(const QState& state, const BasisPredicate& target) {
  const std::uint64_t dim = state.layout().dim();
  std::vector<std::uint8_t> flags(dim);
#pragma omp parallel for schedule(static)
  for (std::uint64_t i = 0; i < dim; ++i) flags[i] = target(i) ? 1 : 0;
  return flags;
}

void log_op(QState& state, nlohmann::json j) { state.record(j.dump()); }

}  // namespace

Control Control::equals(const std::string& reg, std::uint64_t v) {
  return {reg, [v](std::uint64_t x) { return x == v; }};
}

Control Control::at_least(const std::string& reg, std::uint64_t v) {
  return {reg, [v](std::uint64_t x) { return x >= v; }};
}

Control Control::bit_set(const std::string& reg, int bit) {
  return {reg, [bit](std::uint64_t x) { return ((x >> bit) & 1u) != 0; }};
}

QState::QState(RegisterLayout layout) : layout_(std::move(layout)), amp_(layout_.dim(), Complex(0.0)) {
  amp_[0] = 1.0;
}

void QState::set_basis_state(std::uint64_t basis) {
  if (basis >= amp_.size()) throw Error(ErrorKind::InvalidArgument, "basis index out of range");
  std::fill(amp_.begin(), amp_.end(), Complex(0.0));
  amp_[basis] = 1.0;
}

double QState::norm() const {
  return std::sqrt(kernels::marked_weight(amp_.data(), amp_.size(), {}, exec_));
}

void QState::record(const std::string& json_line) {
  if (logging_) log_.push_back(json_line);
}

int qubit(const QState& state, const std::string& reg, int bit) {
  const Register& r = state.layout().reg(reg);
  if (bit < 0 || bit >= r.width) throw Error(ErrorKind::InvalidArgument, "bit outside register " + reg);
  return r.offset + bit;
}

void apply_gate(QState& state, const Gate& gate, int target, const std::optional<Control>& control) {
  const RegisterLayout& layout = state.layout();
  if (target < 0 || target >= layout.total_qubits()) throw Error(ErrorKind::InvalidArgument, "target qubit out of range");
  if (control && overlaps(layout.reg(control->reg), target, 1)) {
    throw Error(ErrorKind::Overlap, "target qubit lies inside control register " + control->reg);
  }
  Complex g[4];
  switch (gate.kind) {
    case GateKind::H: {
      const double s = 1.0 / std::numbers::sqrt2;
      g[0] = s; g[1] = s; g[2] = s; g[3] = -s;
      break;
    }
    case GateKind::Ry: {
      const double c = std::cos(gate.theta), s = std::sin(gate.theta);
      g[0] = c; g[1] = -s; g[2] = s; g[3] = c;
      break;
    }
    case GateKind::Pz:
      g[0] = std::polar(1.0, -gate.theta); g[1] = 0.0; g[2] = 0.0; g[3] = std::polar(1.0, gate.theta);
      break;
  }
  kernels::apply_1q(state.amplitudes().data(), layout.dim(), target, g, make_table(layout, control), state.exec());
  static const char* names[] = {"H", "Ry", "Pz"};
  log_op(state, {{"op", "gate"}, {"kind", names[static_cast<int>(gate.kind)]}, {"theta", gate.theta},
                 {"target", target}, {"control", control ? control->reg : ""}});
}

void apply_qft_subregister(QState& state, const std::string& reg, int active_width,
                           const std::optional<Control>& control, bool inverse) {
  const RegisterLayout& layout = state.layout();
  const Register& r = layout.reg(reg);
  if (active_width < 0 || active_width > r.width) throw Error(ErrorKind::InvalidArgument, "active width exceeds register");
  if (control && control->reg == reg) throw Error(ErrorKind::Overlap, "QFT control references its own register");
  if (active_width == 0) return;
  kernels::apply_fiber_dft(state.amplitudes().data(), layout.dim(), r.offset, active_width, inverse,
                           make_table(layout, control), state.exec());
  log_op(state, {{"op", inverse ? "iqft" : "qft"}, {"register", reg}, {"width", active_width},
                 {"control", control ? control->reg : ""}});
}

void apply_unitary_subregister(QState& state, const std::string& reg, const quantum::CMatrix& u,
                               const std::optional<Control>& control) {
  const RegisterLayout& layout = state.layout();
  const Register& r = layout.reg(reg);
  const std::uint64_t cap = std::uint64_t{1} << r.width;
  if (u.rows() != u.cols()) throw Error(ErrorKind::Dimension, "unitary must be square");
  if (static_cast<std::uint64_t>(u.rows()) > cap) throw Error(ErrorKind::SizeCap, "unitary exceeds register capacity");
  if (control && control->reg == reg) throw Error(ErrorKind::Overlap, "unitary control references its own register");
  const std::size_t n = static_cast<std::size_t>(cap);
  std::vector<Complex> m(n * n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i < static_cast<std::size_t>(u.rows()) && j < static_cast<std::size_t>(u.rows())) {
        m[i * n + j] = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      } else if (i == j) {
        m[i * n + j] = 1.0;
      }
    }
  }
  kernels::apply_fiber(state.amplitudes().data(), layout.dim(), r.offset, r.width, m, make_table(layout, control),
                       state.exec());
  log_op(state, {{"op", "unitary"}, {"register", reg}, {"N", u.rows()}, {"control", control ? control->reg : ""}});
}

void apply_basis_function(QState& state, const BasisFunction& f, const std::string& name) {
  auto& amp = state.amplitudes();
  const std::uint64_t dim = amp.size();
  std::vector<std::uint64_t> dest(dim, 0);
#pragma omp parallel for schedule(static)
  for (std::uint64_t x = 0; x < dim; ++x)
    if (amp[x] != Complex(0.0)) dest[x] = f(x);
  std::vector<Complex> out(dim, Complex(0.0));
  std::vector<std::uint8_t> claimed(dim, 0);
  for (std::uint64_t x = 0; x < dim; ++x) {
    if (amp[x] == Complex(0.0)) continue;
    const std::uint64_t y = dest[x];
    if (y >= dim || claimed[y]) throw Error(ErrorKind::Irreversible, "basis function " + name + " is not injective on the support");
    claimed[y] = 1;
    out[y] = amp[x];
  }
  amp.swap(out);
  log_op(state, {{"op", "basis_function"}, {"name", name}});
}

void uncompute_basis_function(QState& state, const BasisFunction& f, const std::string& name) {
  auto& amp = state.amplitudes();
  const std::uint64_t dim = amp.size();
  std::vector<std::uint64_t> src(dim, dim);
#pragma omp parallel for schedule(static)
  for (std::uint64_t x = 0; x < dim; ++x) {
    const std::uint64_t y = f(x);
    if (y < dim && amp[y] != Complex(0.0)) src[x] = y;
  }
  std::vector<Complex> out(dim, Complex(0.0));
  std::vector<std::uint8_t> claimed(dim, 0);
  for (std::uint64_t x = 0; x < dim; ++x) {
    const std::uint64_t y = src[x];
    if (y == dim) continue;
    if (claimed[y]) throw Error(ErrorKind::Irreversible, "basis function " + name + " has no unique inverse");
    claimed[y] = 1;
    out[x] = amp[y];
  }
  for (std::uint64_t y = 0; y < dim; ++y) {
    if (amp[y] != Complex(0.0) && !claimed[y]) {
      throw Error(ErrorKind::Irreversible, "basis function " + name + " does not cover the support");
    }
  }
  amp.swap(out);
  log_op(state, {{"op", "uncompute"}, {"name", name}});
}

double target_probability(const QState& state, const BasisPredicate& target) {
  const auto flags = tabulate(state, target);
  return kernels::marked_weight(state.amplitudes().data(), flags.size(), flags, state.exec());
}

int plan_iterations(double a) {
  if (!(a > 0.0)) throw Error(ErrorKind::EmptyTarget, "target has zero overlap");
  if (a >= 1.0) return 0;
  return static_cast<int>(std::floor(std::numbers::pi / (4.0 * std::asin(std::sqrt(a)))));
}

AmplificationLog amplitude_amplify(QState& state, const BasisPredicate& target, int iterations) {
  if (iterations < 0) throw Error(ErrorKind::InvalidArgument, "iterations must be >= 0");
  const auto flags = tabulate(state, target);
  auto& amp = state.amplitudes();
  const std::uint64_t dim = amp.size();
  AmplificationLog log;
  log.iterations = iterations;
  const double total = kernels::marked_weight(amp.data(), dim, {}, state.exec());
  log.initial_probability = kernels::marked_weight(amp.data(), dim, flags, state.exec()) / total;
  if (!(log.initial_probability > 0.0)) throw Error(ErrorKind::EmptyTarget, "target has zero overlap");
  const double theta0 = std::asin(std::sqrt(std::min(1.0, log.initial_probability)));
  const double s = std::sin((2 * iterations + 1) * theta0);
  log.predicted_probability = s * s;

  // Reflection axis is the normalized entry state.
  std::vector<Complex> ref(amp);
  const double inv = 1.0 / std::sqrt(total);
  for (auto& z : ref) z *= inv;
  for (int k = 0; k < iterations; ++k) {
    kernels::flip_marked(amp.data(), dim, flags, state.exec());
    kernels::reflect_about(amp.data(), ref.data(), dim, state.exec());
  }
  log.final_probability = kernels::marked_weight(amp.data(), dim, flags, state.exec()) / total;
  log_op(state, {{"op", "amplify"}, {"iterations", iterations}, {"initial", log.initial_probability},
                 {"predicted", log.predicted_probability}, {"final", log.final_probability}});
  return log;
}

std::vector<Complex> read_projected_amplitudes(const QState& state, const std::string& keep,
                                               const std::map<std::string, std::uint64_t>& pins) {
  const RegisterLayout& layout = state.layout();
  const Register& kr = layout.reg(keep);
  if (pins.count(keep)) throw Error(ErrorKind::Overlap, "kept register " + keep + " is also pinned");
  std::uint64_t base = 0;
  for (const auto& r : layout.registers()) {
    if (r.name == keep) continue;
    auto it = pins.find(r.name);
    if (it == pins.end()) throw Error(ErrorKind::InvalidArgument, "register " + r.name + " is not pinned");
    if (it->second > r.mask()) throw Error(ErrorKind::InvalidArgument, "pin value does not fit " + r.name);
    base = r.with_value(base, it->second);
  }
  for (const auto& [name, v] : pins) layout.reg(name);
  std::vector<Complex> out(static_cast<std::size_t>(kr.mask()) + 1);
  for (std::uint64_t v = 0; v <= kr.mask(); ++v) out[v] = state.amplitudes()[kr.with_value(base, v)];
  return out;
}

std::map<std::uint64_t, std::uint64_t> sample_measurements(const QState& state, std::uint64_t shots,
                                                           std::uint64_t seed) {
  const auto& amp = state.amplitudes();
  std::vector<double> cdf(amp.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i) {
    acc += std::norm(amp[i]);
    cdf[i] = acc;
  }
  if (!(acc > 0.0)) throw Error(ErrorKind::InvalidArgument, "cannot sample a zero state");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, acc);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u(rng));
    if (it == cdf.end()) --it;
    ++counts[static_cast<std::uint64_t>(it - cdf.begin())];
  }
  return counts;
}

std::vector<std::uint64_t> sample_register(const QState& state, const std::string& reg, std::uint64_t shots,
                                           std::uint64_t seed) {
  const Register& r = state.layout().reg(reg);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(r.mask()) + 1, 0);
  for (const auto& [basis, c] : sample_measurements(state, shots, seed)) counts[r.value(basis)] += c;
  return counts;
}

void export_state(const QState& state, const std::string& path) {
  const auto& amp = state.amplitudes();
  quantum::CMatrix m(static_cast<Eigen::Index>(amp.size()), 1);
  for (std::size_t i = 0; i < amp.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = amp[i];
  quantum::write_matrix_file(path, m);
}

}  // namespace semiclass::qsim
