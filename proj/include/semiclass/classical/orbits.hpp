#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "semiclass/classical/map_model.hpp"

namespace semiclass::classical {

/// Exact rational num/den with den > 0.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Fraction&) const = default;
};

/// Word over the symbolic alphabet; cyclic rotations denote the same orbit.
struct SymbolCode {
  int t = 0;
  std::vector<int> word;

  std::string str() const;
};

/// Minimal rotation of a word and its primitive period.
SymbolCode canonical_rotation(const SymbolCode& code);
int primitive_period(const std::vector<int>& word);

/// Canonical words of length t (cyclically admissible under the row-major
/// m x m transition matrix), one per rotation class, ascending.
std::vector<SymbolCode> enumerate_cycles(const std::vector<std::uint8_t>& transition, int m, int t,
                                         std::int64_t budget);

/// Cat periodic point (p_num/den, q_num/den).
struct LatticePoint {
  std::int64_t p_num = 0;
  std::int64_t q_num = 0;
  std::int64_t den = 1;

  auto operator<=>(const LatticePoint&) const = default;
};

struct PeriodicOrbit {
  int t = 0;
  int t_p = 0;
  int r = 0;
  std::vector<TorusPoint> points;
  SymbolCode code;                      // baker: primitive word
  std::optional<LatticePoint> lattice;  // cat: canonical representative

  // Invariants, filled by orbit_invariants.
  bool completed = false;
  Fraction action_exact;  // S_p reduced to [0, 1)
  double S_p = 0.0;
  Eigen::Matrix2d M_p = Eigen::Matrix2d::Identity();
  double stability_det = 0.0;  // |det(I - M_p^r)|
  int nu_p = 0;
  double A_p = 0.0;
  int N = 0;
  double phi_p = 0.0;  // r (2 pi N S_p - nu_p pi / 2), reduced mod 2 pi

  /// Human-readable code or lattice index for tables.
  std::string label() const;
};

struct EnumerationBudget {
  std::int64_t max_points = std::int64_t{1} << 22;
};

/// One orbit per distinct phase-space orbit of period dividing t, sorted by
/// (t_p, canonical representative).
std::vector<PeriodicOrbit> enumerate_periodic_orbits(const MapModel& model, int t,
                                                     const EnumerationBudget& budget = {});

/// Total number of period-t points represented by an orbit set.
std::int64_t count_points(const std::vector<PeriodicOrbit>& orbits);

PeriodicOrbit orbit_invariants(const MapModel& model, const PeriodicOrbit& orbit, int N);

/// Cat lattice points solving (M^t - I) x in Z^2, in sweep order.
std::vector<LatticePoint> cat_periodic_points(const CatMatrix& m, int t, std::int64_t budget);

/// Action of a primitive cat orbit starting at x0, exact mod 1.
Fraction cat_orbit_action(const CatMatrix& m, const LatticePoint& x0, int t_p);

/// Action of a primitive baker orbit with the given binary word, exact mod 1.
Fraction baker_orbit_action(const std::vector<int>& word);

/// Point on the baker orbit for a binary word: q from the word, p from the
/// reversed word, both over 2^t - 1.
TorusPoint baker_point(const std::vector<int>& word);

void write_orbit_csv(std::ostream& os, const std::vector<PeriodicOrbit>& orbits);

}  // namespace semiclass::classical
