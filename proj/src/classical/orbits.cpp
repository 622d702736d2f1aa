#include "semiclass/classical/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "semiclass/error.hpp"

namespace semiclass::classical {
namespace {

using i128 = __int128;

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

i128 floor_mod(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// Reduces num/den (den != 0) into [0, 1) in lowest terms.
Fraction reduce_mod1(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num = floor_mod(num, den);
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den > INT64_MAX) throw Error(ErrorKind::Budget, "action denominator overflows 64-bit integers");
  return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

// Integers k with 0 <= c*k + e <= hi.
std::pair<i128, i128> solve_band(i128 c, i128 e, i128 hi) {
  if (c == 0) {
    if (e >= 0 && e <= hi) return {INT64_MIN / 4, INT64_MAX / 4};
    return {1, 0};
  }
  if (c > 0) return {ceil_div(-e, c), floor_div(hi - e, c)};
  return {ceil_div(hi - e, c), floor_div(-e, c)};
}

std::int64_t ipow2(int t) { return std::int64_t{1} << t; }

std::int64_t word_value(const std::vector<int>& word, int m) {
  std::int64_t v = 0;
  for (int s : word) v = v * m + s;
  return v;
}

}  // namespace

std::string SymbolCode::str() const {
  std::string s;
  for (int c : word) s += std::to_string(c);
  return s;
}

int primitive_period(const std::vector<int>& word) {
  const int t = static_cast<int>(word.size());
  for (int d = 1; d < t; ++d) {
    if (t % d != 0) continue;
    bool ok = true;
    for (int i = d; i < t && ok; ++i) ok = word[i] == word[i - d];
    if (ok) return d;
  }
  return t;
}

SymbolCode canonical_rotation(const SymbolCode& code) {
  SymbolCode best = code;
  std::vector<int> rot = code.word;
  for (int i = 1; i < code.t; ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best.word) best.word = rot;
  }
  return best;
}

std::vector<SymbolCode> enumerate_cycles(const std::vector<std::uint8_t>& transition, int m, int t,
                                         std::int64_t budget) {
  if (m < 1 || transition.size() != static_cast<std::size_t>(m) * m) {
    throw Error(ErrorKind::InvalidArgument, "transition matrix must be m x m");
  }
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "orbit length must be >= 1");
  i128 total = 1;
  for (int i = 0; i < t; ++i) {
    total *= m;
    if (total > budget) throw Error(ErrorKind::Budget, "symbol word count exceeds enumeration budget");
  }
  const std::int64_t count = static_cast<std::int64_t>(total);
  std::vector<std::uint8_t> keep(static_cast<std::size_t>(count), 0);

#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < count; ++c) {
    std::vector<int> word(t);
    std::int64_t v = c;
    for (int i = t - 1; i >= 0; --i) {
      word[i] = static_cast<int>(v % m);
      v /= m;
    }
    bool admissible = true;
    for (int i = 0; i < t && admissible; ++i) {
      admissible = transition[word[i] * m + word[(i + 1) % t]] != 0;
    }
    if (!admissible) continue;
    bool minimal = true;
    std::vector<int> rot = word;
    for (int i = 1; i < t && minimal; ++i) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      minimal = !(rot < word);
    }
    keep[static_cast<std::size_t>(c)] = minimal ? 1 : 0;
  }

  std::vector<SymbolCode> out;
  for (std::int64_t c = 0; c < count; ++c) {
    if (!keep[static_cast<std::size_t>(c)]) continue;
    SymbolCode code{t, std::vector<int>(t)};
    std::int64_t v = c;
    for (int i = t - 1; i >= 0; --i) {
      code.word[i] = static_cast<int>(v % m);
      v /= m;
    }
    out.push_back(std::move(code));
  }
  return out;
}

std::string PeriodicOrbit::label() const {
  if (lattice) {
    std::ostringstream os;
    os << lattice->p_num << ":" << lattice->q_num << "/" << lattice->den;
    return os.str();
  }
  return code.str();
}

std::vector<LatticePoint> cat_periodic_points(const CatMatrix& m, int t, std::int64_t budget) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "orbit length must be >= 1");
  CatMatrix a = m.pow(t);
  a.t11 -= 1;
  a.t22 -= 1;
  const i128 det = static_cast<i128>(a.t11) * a.t22 - static_cast<i128>(a.t12) * a.t21;
  if (det == 0) throw Error(ErrorKind::InvalidArgument, "M^t - I is singular; matrix is not hyperbolic");
  const i128 abs_det = det < 0 ? -det : det;
  if (abs_det > budget) throw Error(ErrorKind::Budget, "periodic point count exceeds enumeration budget");
  const i128 s = det < 0 ? -1 : 1;
  const std::int64_t den = static_cast<std::int64_t>(abs_det);

  // k = A y with y in [0,1)^2, so k1 ranges over the row's sign pattern.
  const std::int64_t lo1 = std::min<std::int64_t>(0, a.t11) + std::min<std::int64_t>(0, a.t12);
  const std::int64_t hi1 = std::max<std::int64_t>(0, a.t11) + std::max<std::int64_t>(0, a.t12);
  const std::int64_t rows = hi1 - lo1 + 1;
  std::vector<std::vector<LatticePoint>> per_row(static_cast<std::size_t>(rows));

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t row = 0; row < rows; ++row) {
    const i128 k1 = lo1 + row;
    // y1 * den = s (A22 k1 - A12 k2), y2 * den = s (A11 k2 - A21 k1)
    auto [lo_a, hi_a] = solve_band(-s * a.t12, s * a.t22 * k1, abs_det - 1);
    auto [lo_b, hi_b] = solve_band(s * a.t11, -s * a.t21 * k1, abs_det - 1);
    const i128 lo = std::max(lo_a, lo_b);
    const i128 hi = std::min(hi_a, hi_b);
    auto& out = per_row[static_cast<std::size_t>(row)];
    for (i128 k2 = lo; k2 <= hi; ++k2) {
      const i128 y1 = s * (static_cast<i128>(a.t22) * k1 - static_cast<i128>(a.t12) * k2);
      const i128 y2 = s * (static_cast<i128>(a.t11) * k2 - static_cast<i128>(a.t21) * k1);
      out.push_back({static_cast<std::int64_t>(y1), static_cast<std::int64_t>(y2), den});
    }
  }

  std::vector<LatticePoint> points;
  points.reserve(static_cast<std::size_t>(den));
  for (auto& r : per_row) points.insert(points.end(), r.begin(), r.end());
  if (static_cast<i128>(points.size()) != abs_det) {
    throw Error(ErrorKind::Inconsistency, "lattice sweep did not produce |det(M^t - I)| points");
  }
  return points;
}

Fraction cat_orbit_action(const CatMatrix& m, const LatticePoint& x0, int t_p) {
  if (m.t12 == 0) {
    throw Error(ErrorKind::SingularGeneratingFunction, "generating function needs t12 != 0");
  }
  const i128 den = x0.den;
  i128 a = x0.p_num;
  i128 b = x0.q_num;
  i128 num = 0;
  for (int j = 0; j < t_p; ++j) {
    const i128 a2 = m.t11 * a + m.t12 * b;
    const i128 b2 = m.t21 * a + m.t22 * b;
    num += m.t11 * a * a - 2 * a * a2 + m.t22 * a2 * a2;
    a = a2;
    b = b2;
  }
  if ((a - x0.p_num) % den != 0 || (b - x0.q_num) % den != 0) {
    throw Error(ErrorKind::Inconsistency, "cat orbit does not close on the lattice");
  }
  const i128 k2 = (b - x0.q_num) / den;
  num -= 2 * static_cast<i128>(m.t12) * k2 * x0.p_num * den;
  return reduce_mod1(num, 2 * static_cast<i128>(m.t12) * den * den);
}

Fraction baker_orbit_action(const std::vector<int>& word) {
  const int t = static_cast<int>(word.size());
  if (t < 1 || t > 30) throw Error(ErrorKind::InvalidArgument, "baker word length must be in [1, 30]");
  const i128 d = ipow2(t) - 1;
  i128 a = word_value(word, 2);
  i128 b = 0;
  for (int i = t - 1; i >= 0; --i) b = 2 * b + word[i];
  i128 num = 0;
  for (int j = 0; j < t; ++j) {
    const i128 eps = word[j];
    const i128 a2 = 2 * a - eps * d;
    const i128 b2 = (b + eps * d) / 2;
    num += 2 * b2 * a - eps * (a * d + b2 * d) - b2 * a2;
    a = a2;
    b = b2;
  }
  return reduce_mod1(num, d * d);
}

TorusPoint baker_point(const std::vector<int>& word) {
  const int t = static_cast<int>(word.size());
  const double d = static_cast<double>(ipow2(t) - 1);
  std::int64_t rev = 0;
  for (int i = t - 1; i >= 0; --i) rev = 2 * rev + word[i];
  return {wrap(static_cast<double>(word_value(word, 2)) / d, 1.0), wrap(static_cast<double>(rev) / d, 1.0)};
}

std::vector<PeriodicOrbit> enumerate_periodic_orbits(const MapModel& model, int t,
                                                     const EnumerationBudget& budget) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "orbit length must be >= 1");
  std::vector<PeriodicOrbit> orbits;
  if (model.kind() == MapKind::Kicked) {
    throw Error(ErrorKind::Unsupported, "orbit enumeration is not available for kicked maps");
  }
  if (model.kind() == MapKind::Baker) {
    if (t > 30) throw Error(ErrorKind::Budget, "baker word length exceeds enumeration budget");
    for (const SymbolCode& c : enumerate_cycles(model.transition(), model.alphabet_size(), t, budget.max_points)) {
      PeriodicOrbit o;
      o.t = t;
      o.t_p = primitive_period(c.word);
      o.r = t / o.t_p;
      o.code = SymbolCode{o.t_p, std::vector<int>(c.word.begin(), c.word.begin() + o.t_p)};
      std::vector<int> rot = o.code.word;
      for (int j = 0; j < o.t_p; ++j) {
        o.points.push_back(baker_point(rot));
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      }
      orbits.push_back(std::move(o));
    }
  } else {
    const CatMatrix& m = model.cat_matrix();
    std::vector<LatticePoint> pts = cat_periodic_points(m, t, budget.max_points);
    std::sort(pts.begin(), pts.end());
    std::vector<std::uint8_t> seen(pts.size(), 0);
    const i128 den = pts.empty() ? 1 : pts.front().den;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (seen[i]) continue;
      PeriodicOrbit o;
      o.t = t;
      o.lattice = pts[i];
      LatticePoint x = pts[i];
      int len = 0;
      do {
        auto it = std::lower_bound(pts.begin(), pts.end(), x);
        if (it == pts.end() || *it != x) {
          throw Error(ErrorKind::Inconsistency, "cat image left the periodic point set");
        }
        seen[static_cast<std::size_t>(it - pts.begin())] = 1;
        o.points.push_back({static_cast<double>(x.q_num) / static_cast<double>(den),
                            static_cast<double>(x.p_num) / static_cast<double>(den)});
        ++len;
        const i128 p2 = floor_mod(m.t11 * static_cast<i128>(x.p_num) + m.t12 * static_cast<i128>(x.q_num), den);
        const i128 q2 = floor_mod(m.t21 * static_cast<i128>(x.p_num) + m.t22 * static_cast<i128>(x.q_num), den);
        x = {static_cast<std::int64_t>(p2), static_cast<std::int64_t>(q2), x.den};
      } while (x != pts[i]);
      if (t % len != 0) throw Error(ErrorKind::Inconsistency, "cat orbit period does not divide t");
      o.t_p = len;
      o.r = t / len;
      orbits.push_back(std::move(o));
    }
  }
  std::stable_sort(orbits.begin(), orbits.end(),
                   [](const PeriodicOrbit& x, const PeriodicOrbit& y) { return x.t_p < y.t_p; });
  return orbits;
}

std::int64_t count_points(const std::vector<PeriodicOrbit>& orbits) {
  std::int64_t n = 0;
  for (const auto& o : orbits) n += o.t_p;
  return n;
}

PeriodicOrbit orbit_invariants(const MapModel& model, const PeriodicOrbit& orbit, int N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "Hilbert dimension must be >= 1");
  if (orbit.t_p < 1 || orbit.r < 1 || orbit.points.empty()) {
    throw Error(ErrorKind::InvalidArgument, "orbit points are not populated");
  }
  PeriodicOrbit o = orbit;
  const int t = o.t_p * o.r;
  switch (model.kind()) {
    case MapKind::Kicked:
      throw Error(ErrorKind::Unsupported, "orbit invariants are not available for kicked maps");
    case MapKind::Cat: {
      if (!o.lattice) throw Error(ErrorKind::InvalidArgument, "cat orbit needs a lattice representative");
      const CatMatrix& m = model.cat_matrix();
      o.action_exact = cat_orbit_action(m, *o.lattice, o.t_p);
      const CatMatrix mp = m.pow(o.t_p);
      o.M_p << static_cast<double>(mp.t11), static_cast<double>(mp.t12), static_cast<double>(mp.t21),
          static_cast<double>(mp.t22);
      o.stability_det = std::fabs(static_cast<double>(2 - m.pow(t).trace()));
      break;
    }
    case MapKind::Baker: {
      if (static_cast<int>(o.code.word.size()) != o.t_p) {
        throw Error(ErrorKind::InvalidArgument, "baker orbit needs its primitive code");
      }
      o.action_exact = baker_orbit_action(o.code.word);
      o.M_p = Eigen::Matrix2d::Zero();
      o.M_p(0, 0) = std::ldexp(1.0, o.t_p);
      o.M_p(1, 1) = std::ldexp(1.0, -o.t_p);
      o.stability_det = (std::ldexp(1.0, t) - 1.0) * (1.0 - std::ldexp(1.0, -t));
      break;
    }
  }
  o.S_p = o.action_exact.value();
  o.nu_p = model.maslov_per_step() * o.t_p;
  o.A_p = static_cast<double>(o.t_p) / std::sqrt(o.stability_det);
  o.N = N;
  // frac(N * S_p) exactly, so large N does not lose phase digits.
  const i128 den = o.action_exact.den;
  const i128 frac_num = floor_mod(static_cast<i128>(N % den) * o.action_exact.num, den);
  const double frac = static_cast<double>(frac_num) / static_cast<double>(den);
  const double two_pi = 2.0 * std::numbers::pi;
  o.phi_p = wrap(o.r * (two_pi * frac - o.nu_p * std::numbers::pi / 2.0), two_pi);
  o.completed = true;
  return o;
}

void write_orbit_csv(std::ostream& os, const std::vector<PeriodicOrbit>& orbits) {
  os << "t,t_p,r,code,q0,p0,S_p,det_abs,A_p,nu_p\n";
  const auto old = os.precision(17);
  for (const auto& o : orbits) {
    os << o.t << ',' << o.t_p << ',' << o.r << ',' << o.label() << ',' << o.points.front().q << ','
       << o.points.front().p << ',' << o.S_p << ',' << o.stability_det << ',' << o.A_p << ',' << o.nu_p
       << '\n';
  }
  os.precision(old);
}

}  // namespace semiclass::classical
