#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace semiclass::classical {

/// Phase-space point. Cat and baker maps live on the unit torus, kicked maps
/// on the 2*pi torus; the owning MapModel declares which.
struct TorusPoint {
  double q = 0.0;
  double p = 0.0;
};

/// Integer 2x2 matrix of SL(2,Z). Acts on the column (p, q).
struct CatMatrix {
  std::int64_t t11 = 1;
  std::int64_t t12 = 0;
  std::int64_t t21 = 0;
  std::int64_t t22 = 1;

  std::int64_t det() const { return t11 * t22 - t12 * t21; }
  std::int64_t trace() const { return t11 + t22; }
  bool hyperbolic() const { return trace() > 2 || trace() < -2; }
  /// Checkerboard condition: t11*t12 and t21*t22 both even.
  bool quantizable() const;

  CatMatrix operator*(const CatMatrix& rhs) const;
  /// Throws Budget on int64 overflow.
  CatMatrix pow(int exponent) const;
  /// Entrywise reduction into [0, modulus).
  CatMatrix mod(std::int64_t modulus) const;
  bool operator==(const CatMatrix&) const = default;
};

/// Validates det == 1.
CatMatrix make_cat_matrix(std::int64_t t11, std::int64_t t12, std::int64_t t21, std::int64_t t22);

enum class MapKind { Cat, Baker, Kicked };
enum class Potential { Cosine, Sawtooth };

const char* to_string(MapKind kind);
const char* to_string(Potential potential);

double potential_value(Potential potential, double q);
double potential_derivative(Potential potential, double q);

struct KickedParams {
  double k = 0.0;
  double T = 1.0;
  Potential potential = Potential::Cosine;
};

class MapModel {
 public:
  /// Rejects det != 1 and non-hyperbolic matrices.
  static MapModel cat(const CatMatrix& matrix);
  static MapModel baker();
  static MapModel kicked(const KickedParams& params);

  MapKind kind() const { return kind_; }
  const CatMatrix& cat_matrix() const;
  const KickedParams& kicked_params() const;

  double torus_period() const;
  int alphabet_size() const { return alphabet_size_; }
  /// Row-major m x m boolean transition matrix of the symbolic dynamics.
  const std::vector<std::uint8_t>& transition() const { return transition_; }
  bool supports_orbit_enumeration() const { return kind_ != MapKind::Kicked; }

  /// Uniform Maslov index per iteration; an orbit of primitive period t_p
  /// carries nu_p = t_p * maslov_per_step(). Set by calibration.
  int maslov_per_step() const { return maslov_per_step_; }
  MapModel with_maslov_per_step(int nu) const;

  TorusPoint step(const TorusPoint& x) const;
  std::string describe() const;

 private:
  MapModel() = default;

  MapKind kind_ = MapKind::Baker;
  CatMatrix cat_{};
  KickedParams kicked_{};
  int alphabet_size_ = 0;
  std::vector<std::uint8_t> transition_;
  int maslov_per_step_ = 0;
};

/// Reduces x into [0, period).
double wrap(double x, double period);

/// Forward trajectory of length steps+1, start included.
std::vector<TorusPoint> iterate_map(const MapModel& model, const TorusPoint& start, int steps);

}  // namespace semiclass::classical
