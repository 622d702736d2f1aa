#include "semiclass/classical/map_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "semiclass/error.hpp"

namespace semiclass::classical {
namespace {

std::int64_t checked_mul_add(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const __int128 v = static_cast<__int128>(a) * b + static_cast<__int128>(c) * d;
  if (v > INT64_MAX || v < INT64_MIN) {
    throw Error(ErrorKind::Budget, "cat matrix power overflows 64-bit integers");
  }
  return static_cast<std::int64_t>(v);
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

bool CatMatrix::quantizable() const {
  return (t11 * t12) % 2 == 0 && (t21 * t22) % 2 == 0;
}

CatMatrix CatMatrix::operator*(const CatMatrix& rhs) const {
  return {checked_mul_add(t11, rhs.t11, t12, rhs.t21), checked_mul_add(t11, rhs.t12, t12, rhs.t22),
          checked_mul_add(t21, rhs.t11, t22, rhs.t21), checked_mul_add(t21, rhs.t12, t22, rhs.t22)};
}

CatMatrix CatMatrix::pow(int exponent) const {
  if (exponent < 0) throw Error(ErrorKind::InvalidArgument, "negative matrix power");
  CatMatrix result{};
  CatMatrix base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

CatMatrix CatMatrix::mod(std::int64_t modulus) const {
  return {floor_mod(t11, modulus), floor_mod(t12, modulus), floor_mod(t21, modulus),
          floor_mod(t22, modulus)};
}

CatMatrix make_cat_matrix(std::int64_t t11, std::int64_t t12, std::int64_t t21, std::int64_t t22) {
  CatMatrix m{t11, t12, t21, t22};
  if (m.det() != 1) {
    std::ostringstream os;
    os << "cat matrix must have determinant 1, got " << m.det();
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  return m;
}

const char* to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Cat: return "cat";
    case MapKind::Baker: return "baker";
    case MapKind::Kicked: return "kicked";
  }
  return "?";
}

const char* to_string(Potential potential) {
  return potential == Potential::Cosine ? "cos" : "sawtooth";
}

double potential_value(Potential potential, double q) {
  if (potential == Potential::Cosine) return std::cos(q);
  const double d = q - std::numbers::pi;
  return -0.5 * d * d;
}

double potential_derivative(Potential potential, double q) {
  if (potential == Potential::Cosine) return -std::sin(q);
  return -(q - std::numbers::pi);
}

MapModel MapModel::cat(const CatMatrix& matrix) {
  if (matrix.det() != 1) throw Error(ErrorKind::InvalidArgument, "cat matrix must have determinant 1");
  if (!matrix.hyperbolic()) {
    throw Error(ErrorKind::InvalidArgument, "cat matrix must be hyperbolic (|trace| > 2)");
  }
  MapModel m;
  m.kind_ = MapKind::Cat;
  m.cat_ = matrix;
  // Cat orbits are enumerated on the lattice, not through a Markov partition.
  m.alphabet_size_ = 0;
  return m;
}

MapModel MapModel::baker() {
  MapModel m;
  m.kind_ = MapKind::Baker;
  m.alphabet_size_ = 2;
  m.transition_ = {1, 1, 1, 1};
  return m;
}

MapModel MapModel::kicked(const KickedParams& params) {
  MapModel m;
  m.kind_ = MapKind::Kicked;
  m.kicked_ = params;
  return m;
}

const CatMatrix& MapModel::cat_matrix() const {
  if (kind_ != MapKind::Cat) throw Error(ErrorKind::InvalidArgument, "model is not a cat map");
  return cat_;
}

const KickedParams& MapModel::kicked_params() const {
  if (kind_ != MapKind::Kicked) throw Error(ErrorKind::InvalidArgument, "model is not a kicked map");
  return kicked_;
}

double MapModel::torus_period() const {
  return kind_ == MapKind::Kicked ? 2.0 * std::numbers::pi : 1.0;
}

MapModel MapModel::with_maslov_per_step(int nu) const {
  MapModel copy = *this;
  copy.maslov_per_step_ = ((nu % 4) + 4) % 4;
  return copy;
}

double wrap(double x, double period) {
  double r = x - period * std::floor(x / period);
  if (r >= period) r -= period;
  if (r < 0.0) r = 0.0;
  return r;
}

TorusPoint MapModel::step(const TorusPoint& x) const {
  switch (kind_) {
    case MapKind::Cat: {
      const double p = static_cast<double>(cat_.t11) * x.p + static_cast<double>(cat_.t12) * x.q;
      const double q = static_cast<double>(cat_.t21) * x.p + static_cast<double>(cat_.t22) * x.q;
      return {wrap(q, 1.0), wrap(p, 1.0)};
    }
    case MapKind::Baker:
      if (x.q < 0.5) return {wrap(2.0 * x.q, 1.0), wrap(0.5 * x.p, 1.0)};
      return {wrap(2.0 * x.q - 1.0, 1.0), wrap(0.5 * (x.p + 1.0), 1.0)};
    case MapKind::Kicked: {
      const double period = 2.0 * std::numbers::pi;
      const double p = x.p - kicked_.k * potential_derivative(kicked_.potential, x.q);
      const double q = x.q + kicked_.T * p;
      return {wrap(q, period), wrap(p, period)};
    }
  }
  return x;
}

std::string MapModel::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (kind_ == MapKind::Cat) {
    os << "[[" << cat_.t11 << "," << cat_.t12 << "],[" << cat_.t21 << "," << cat_.t22 << "]]";
  } else if (kind_ == MapKind::Kicked) {
    os << "(k=" << kicked_.k << ",T=" << kicked_.T << ",V=" << to_string(kicked_.potential) << ")";
  }
  return os.str();
}

std::vector<TorusPoint> iterate_map(const MapModel& model, const TorusPoint& start, int steps) {
  if (steps < 0) throw Error(ErrorKind::InvalidArgument, "steps must be non-negative");
  const double period = model.torus_period();
  if (!(start.q >= 0.0 && start.q < period && start.p >= 0.0 && start.p < period)) {
    throw Error(ErrorKind::InvalidArgument, "start point outside the torus");
  }
  std::vector<TorusPoint> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(start);
  for (int i = 0; i < steps; ++i) out.push_back(model.step(out.back()));
  return out;
}

}  // namespace semiclass::classical
