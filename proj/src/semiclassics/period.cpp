#include "semiclass/semiclassics/period.hpp"

#include <cmath>
#include <json.hpp>
#include <numbers>
#include <ostream>

#include "semiclass/error.hpp"
#include "semiclass/quantum/quantize.hpp"
#include "semiclass/quantum/spectral.hpp"

namespace semiclass::semiclassics {

using classical::CatMatrix;

namespace {

CatMatrix mul_mod(const CatMatrix& a, const CatMatrix& b, std::int64_t mod) {
  auto f = [mod](std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w) {
    const __int128 v = static_cast<__int128>(x) * y + static_cast<__int128>(z) * w;
    std::int64_t r = static_cast<std::int64_t>(v % mod);
    return r < 0 ? r + mod : r;
  };
  return {f(a.t11, b.t11, a.t12, b.t21), f(a.t11, b.t12, a.t12, b.t22), f(a.t21, b.t11, a.t22, b.t21),
          f(a.t21, b.t12, a.t22, b.t22)};
}

template <typename Done>
std::int64_t first_power(const CatMatrix& m, std::int64_t mod, std::int64_t max_period, Done done) {
  const CatMatrix base = m.mod(mod);
  CatMatrix p = base;
  for (std::int64_t k = 1; k <= max_period; ++k) {
    if (done(p)) return k;
    p = mul_mod(p, base, mod);
  }
  throw Error(ErrorKind::Budget, "period not found within budget");
}

quantum::CMatrix matrix_power(const quantum::CMatrix& u, std::int64_t n) {
  quantum::CMatrix result = quantum::CMatrix::Identity(u.rows(), u.cols());
  quantum::CMatrix base = u;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

double dist_to_2pi_lattice(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double r = x - two_pi * std::round(x / two_pi);
  return std::fabs(r);
}

}  // namespace

std::int64_t classical_period(const CatMatrix& m, int N, std::int64_t max_period) {
  if (N < 2) throw Error(ErrorKind::InvalidArgument, "N must be >= 2");
  return first_power(m, N, max_period, [](const CatMatrix& p) {
    return p.t11 == 1 && p.t22 == 1 && p.t12 == 0 && p.t21 == 0;
  });
}

std::int64_t quantum_period(const CatMatrix& m, int N, std::int64_t max_period) {
  if (N < 2) throw Error(ErrorKind::InvalidArgument, "N must be >= 2");
  if (N % 2 == 1) return classical_period(m, N, max_period);
  const std::int64_t n = N;
  return first_power(m, 2 * n, max_period, [n](const CatMatrix& p) {
    return p.t11 % n == 1 % n && p.t22 % n == 1 % n && p.t12 == 0 && p.t21 == 0;
  });
}

PeriodRecord period_functions(const CatMatrix& m, int N, const PeriodOptions& options) {
  PeriodRecord rec;
  rec.N = N;
  rec.g = classical_period(m, N, options.max_period);
  rec.n = quantum_period(m, N, options.max_period);
  if (!options.eigen_check || !m.quantizable() || m.t12 == 0) return rec;

  const quantum::UnitaryMatrix u = quantum::quantize_cat(m, N);
  const quantum::CMatrix un = matrix_power(u.matrix(), rec.n);
  const quantum::Complex c = un(0, 0);
  const double off = (un - c * quantum::CMatrix::Identity(N, N)).cwiseAbs().maxCoeff();
  if (!(off <= 1e-8) || std::fabs(std::abs(c) - 1.0) > 1e-8) {
    throw Error(ErrorKind::Inconsistency, "U^n is not proportional to the identity");
  }
  double phi = std::arg(c);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  rec.phi = phi;
  double residual = 0.0;
  for (double th : quantum::eigenphases(u)) {
    residual = std::max(residual, dist_to_2pi_lattice(static_cast<double>(rec.n) * th - phi));
  }
  rec.lattice_residual = residual;
  rec.eigen_checked = true;
  return rec;
}

void write_period_jsonl(std::ostream& os, const PeriodRecord& r) {
  const nlohmann::json j = {{"N", r.N},
                            {"g", r.g},
                            {"n", r.n},
                            {"phi", r.phi},
                            {"lattice_residual", r.lattice_residual},
                            {"eigen_checked", r.eigen_checked}};
  os << j.dump() << '\n';
}

}  // namespace semiclass::semiclassics
