#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "semiclass/classical/map_model.hpp"
#include "semiclass/classical/orbits.hpp"
#include "semiclass/error.hpp"

using namespace semiclass;
using namespace semiclass::classical;

namespace {

double torus_dist(const TorusPoint& a, const TorusPoint& b, double period) {
  auto d = [period](double x, double y) {
    double r = std::fmod(std::abs(x - y), period);
    return std::min(r, period - r);
  };
  return std::hypot(d(a.q, b.q), d(a.p, b.p));
}

}  // namespace

TEST(MapModel, CatOriginIsFixed) {
  const auto m = MapModel::cat(make_cat_matrix(2, 1, 1, 1));
  for (const auto& x : iterate_map(m, {0.0, 0.0}, 3)) {
    EXPECT_EQ(x.q, 0.0);
    EXPECT_EQ(x.p, 0.0);
  }
}

TEST(MapModel, CatHalfPoint) {
  const auto m = MapModel::cat(make_cat_matrix(2, 1, 1, 1));
  const auto traj = iterate_map(m, {0.5, 0.5}, 1);
  ASSERT_EQ(traj.size(), 2u);
  EXPECT_NEAR(traj[1].p, 0.5, 1e-15);
  EXPECT_NEAR(traj[1].q, 0.0, 1e-15);
}

TEST(MapModel, BakerLeftBranch) {
  const auto traj = iterate_map(MapModel::baker(), {0.25, 0.5}, 1);
  EXPECT_NEAR(traj[1].q, 0.5, 1e-15);
  EXPECT_NEAR(traj[1].p, 0.25, 1e-15);
}

TEST(MapModel, TrajectoryFollowsStepRule) {
  const auto m = MapModel::kicked({0.7, 1.0, Potential::Cosine});
  const auto traj = iterate_map(m, {1.0, 2.0}, 20);
  ASSERT_EQ(traj.size(), 21u);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    EXPECT_LT(torus_dist(m.step(traj[i - 1]), traj[i], m.torus_period()), 1e-12);
  }
}

TEST(MapModel, RejectsBadMatrices) {
  EXPECT_THROW(make_cat_matrix(2, 1, 1, 2), Error);
  try {
    MapModel::cat(CatMatrix{1, 1, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(MapModel, RejectsOutOfTorusStart) {
  EXPECT_THROW(iterate_map(MapModel::baker(), {1.5, 0.0}, 1), Error);
  EXPECT_THROW(iterate_map(MapModel::baker(), {0.5, 0.0}, -1), Error);
}

TEST(Orbits, BakerPeriodTwo) {
  const auto orbits = enumerate_periodic_orbits(MapModel::baker(), 2);
  ASSERT_EQ(orbits.size(), 3u);
  EXPECT_EQ(count_points(orbits), 4);
  std::multiset<int> tps;
  for (const auto& o : orbits) tps.insert(o.t_p);
  EXPECT_EQ(tps, (std::multiset<int>{1, 1, 2}));
}

TEST(Orbits, CatCountsMatchLatticeScan) {
  const oracles::IntMat om{2, 1, 3, 2};
  const auto model = MapModel::cat(make_cat_matrix(2, 1, 3, 2));
  for (int t = 1; t <= 4; ++t) {
    std::int64_t D = 0;
    const auto scan = oracles::cat_points_by_scan(om, t, D);
    const auto orbits = enumerate_periodic_orbits(model, t);
    EXPECT_EQ(count_points(orbits), static_cast<std::int64_t>(scan.size())) << "t=" << t;
    // Every library point lies on the oracle grid.
    for (const auto& o : orbits) {
      for (const auto& x : o.points) {
        const double px = x.p * D;
        const double qx = x.q * D;
        EXPECT_NEAR(px, std::round(px), 1e-6);
        EXPECT_TRUE(scan.count({static_cast<std::int64_t>(std::llround(px)) % D,
                                static_cast<std::int64_t>(std::llround(qx)) % D}) == 1);
      }
    }
  }
}

TEST(Orbits, FrozenCatCounts) {
  // Frozen from the lattice scan oracle.
  const auto model = MapModel::cat(make_cat_matrix(2, 1, 3, 2));
  EXPECT_EQ(count_points(enumerate_periodic_orbits(model, 1)), 2);
  EXPECT_EQ(count_points(enumerate_periodic_orbits(model, 2)), 12);
}

TEST(Orbits, CatCountIsDeterminant) {
  for (auto m : {make_cat_matrix(2, 1, 3, 2), make_cat_matrix(2, 1, 1, 1), make_cat_matrix(1, 2, 2, 5)}) {
    const auto model = MapModel::cat(m);
    for (int t = 1; t <= 5; ++t) {
      const auto mt = m.pow(t);
      const std::int64_t det = std::llabs((mt.t11 - 1) * (mt.t22 - 1) - mt.t12 * mt.t21);
      EXPECT_EQ(count_points(enumerate_periodic_orbits(model, t)), det);
    }
  }
}

TEST(Orbits, BakerDivisorSums) {
  for (int t = 1; t <= 12; ++t) {
    const auto orbits = enumerate_periodic_orbits(MapModel::baker(), t);
    std::int64_t total = 0;
    for (const auto& o : orbits) {
      EXPECT_EQ(t % o.t_p, 0);
      EXPECT_EQ(o.r * o.t_p, t);
      total += o.t_p;
    }
    EXPECT_EQ(total, std::int64_t{1} << t);
  }
}

TEST(Orbits, OrbitsClose) {
  for (const auto& model : {MapModel::baker(), MapModel::cat(make_cat_matrix(2, 1, 3, 2))}) {
    for (int t = 1; t <= 4; ++t) {
      for (const auto& o : enumerate_periodic_orbits(model, t)) {
        ASSERT_FALSE(o.points.empty());
        const auto traj = iterate_map(model, o.points.front(), o.t_p);
        EXPECT_LT(torus_dist(traj.back(), traj.front(), 1.0), 1e-10);
      }
    }
  }
}

TEST(Orbits, CatLatticePointsAreExact) {
  const auto m = make_cat_matrix(2, 1, 3, 2);
  for (int t = 1; t <= 4; ++t) {
    const auto mt = m.pow(t);
    for (const auto& x : cat_periodic_points(m, t, 1 << 20)) {
      const std::int64_t p = mt.t11 * x.p_num + mt.t12 * x.q_num - x.p_num;
      const std::int64_t q = mt.t21 * x.p_num + mt.t22 * x.q_num - x.q_num;
      EXPECT_EQ(p % x.den, 0);
      EXPECT_EQ(q % x.den, 0);
    }
  }
}

TEST(Orbits, KickedIsUnsupported) {
  try {
    enumerate_periodic_orbits(MapModel::kicked({}), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}

TEST(Orbits, BudgetEnforced) {
  const auto model = MapModel::cat(make_cat_matrix(2, 1, 3, 2));
  try {
    enumerate_periodic_orbits(model, 8, EnumerationBudget{1000});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Budget);
  }
}

TEST(Invariants, BakerAmplitudes) {
  const auto model = MapModel::baker();
  for (const auto& o : enumerate_periodic_orbits(model, 2)) {
    const auto c = orbit_invariants(model, o, 16);
    if (o.t_p == 1) {
      // Repeated fixed point: |det(I - diag(4, 1/4))| = 9/4, A_p = 1 / (3/2).
      EXPECT_NEAR(c.A_p, 2.0 / 3.0, 1e-12);
    }
    if (o.t_p == 2) {
      EXPECT_NEAR(c.stability_det, 9.0 / 4.0, 1e-12);
      EXPECT_NEAR(c.A_p, 4.0 / 3.0, 1e-12);
    }
  }
  const auto fixed = enumerate_periodic_orbits(model, 1);
  const auto c0 = orbit_invariants(model, fixed.front(), 16);
  EXPECT_NEAR(c0.stability_det, 0.5, 1e-12);
  EXPECT_NEAR(c0.A_p, std::sqrt(2.0), 1e-12);
}

TEST(Invariants, BakerPrimitiveClosedForm) {
  const auto model = MapModel::baker();
  for (int t = 1; t <= 8; ++t) {
    for (const auto& o : enumerate_periodic_orbits(model, t)) {
      if (o.r != 1) continue;
      const auto c = orbit_invariants(model, o, 8);
      EXPECT_GT(c.A_p, 0.0);
      EXPECT_NEAR(c.A_p, oracles::baker_amplitude(o.t_p), 1e-12);
    }
  }
}

TEST(Invariants, CatOriginHasZeroAction) {
  const auto model = MapModel::cat(make_cat_matrix(2, 1, 3, 2)).with_maslov_per_step(3);
  for (const auto& o : enumerate_periodic_orbits(model, 1)) {
    const auto c = orbit_invariants(model, o, 5);
    EXPECT_GT(c.A_p, 0.0);
    if (o.lattice && o.lattice->p_num == 0 && o.lattice->q_num == 0) {
      EXPECT_EQ(c.action_exact.num, 0);
      const double expect = std::fmod(c.r * (-c.nu_p * std::numbers::pi / 2.0) + 8.0 * std::numbers::pi,
                                      2.0 * std::numbers::pi);
      EXPECT_NEAR(c.phi_p, expect, 1e-12);
    }
  }
}

TEST(Invariants, BakerActionRotationInvariant) {
  for (int t = 2; t <= 8; ++t) {
    for (const auto& code : enumerate_cycles({1, 1, 1, 1}, 2, t, 1 << 20)) {
      const Fraction s = baker_orbit_action(code.word);
      std::vector<int> w = code.word;
      for (int k = 1; k < t; ++k) {
        std::rotate(w.begin(), w.begin() + 1, w.end());
        EXPECT_EQ(baker_orbit_action(w), s) << code.str();
      }
    }
  }
}

TEST(Invariants, CatActionRotationInvariant) {
  const auto m = make_cat_matrix(2, 1, 3, 2);
  const auto model = MapModel::cat(m);
  for (int t = 1; t <= 4; ++t) {
    for (const auto& o : enumerate_periodic_orbits(model, t)) {
      if (o.r != 1) continue;
      LatticePoint x = *o.lattice;
      const Fraction s = cat_orbit_action(m, x, o.t_p);
      for (int k = 1; k < o.t_p; ++k) {
        x = {oracles::mod(m.t11 * x.p_num + m.t12 * x.q_num, x.den), oracles::mod(m.t21 * x.p_num + m.t22 * x.q_num, x.den),
             x.den};
        EXPECT_EQ(cat_orbit_action(m, x, o.t_p), s) << o.label();
      }
    }
  }
}

TEST(Invariants, SingularGeneratingFunction) {
  try {
    cat_orbit_action(CatMatrix{1, 0, 1, 1}, LatticePoint{0, 0, 1}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularGeneratingFunction);
  }
}

TEST(Symbols, CanonicalRotation) {
  const SymbolCode c = canonical_rotation({4, {1, 0, 1, 1}});
  EXPECT_EQ(c.str(), "0111");
  EXPECT_EQ(primitive_period({0, 1, 0, 1}), 2);
  EXPECT_EQ(primitive_period({0, 1, 1}), 3);
}
