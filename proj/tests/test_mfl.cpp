#include <doctest.h>

#include <cmath>
#include <vector>

#include "jumpsync/errors.hpp"
#include "jumpsync/mfl.hpp"
#include "jumpsync/rng.hpp"

using namespace jumpsync;
using namespace jumpsync::mfl;
using particles::BoundarySpec;

namespace {
const JumpLaw kExp = JumpLaw::exponential_mean_one();

GridCdf logistic_state(double h, double xl, double xr, double v, double c) {
  return make_from_function(h, xl, xr,
                            [v, c](double x) { return 1.0 / (1.0 + std::exp(-(x + c) / v)); });
}
}  // namespace

TEST_CASE("grid construction and quantiles") {
  const auto dirac = make_dirac(0.02, -2.0, 3.0);
  for (double nu : {0.1, 0.5, 0.9}) CHECK(std::abs(quantile(dirac, nu)) <= 0.02);

  const auto ramp = make_from_function(0.01, -1.0, 2.0,
                                       [](double x) { return std::clamp(x, 0.0, 1.0); });
  CHECK(quantile(ramp, 0.25) == doctest::Approx(0.25).epsilon(1e-9));

  const auto psi = logistic_state(0.02, -40.0, 40.0, 2.0, 0.0);
  CHECK(std::abs(quantile(psi, 0.5)) <= 1e-9);  // node sits exactly at 0
}

TEST_CASE("grid validation") {
  auto f = make_dirac(0.1, -1.0, 1.0);
  f.values[5] = 2.0;
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  auto g = make_dirac(0.1, -1.0, 1.0);
  g.values.back() = 0.9;  // right edge loses mass
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("rhs on reference states") {
  SUBCASE("fully advanced state is stationary") {
    auto f = make_grid(0.02, -1.0, 1.0);
    for (auto& v : f.values) v = 1.0;
    for (double d : rhs(f, kExp, 1.0, 1.0, BoundarySpec::none())) CHECK(d == 0.0);
  }
  SUBCASE("hand evaluation on the Dirac step, exponential law") {
    const double h = 0.005;
    const auto f = make_dirac(h, -1.0, 3.0);
    const auto d = rhs(f, kExp, 1.0, 1.0, BoundarySpec::none());
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double x = f.node_local(k);
      if (x > 0.1) {
        // -e^{-x} up to the O(h) cell-spreading error at the seed atom
        CHECK(std::abs(d[k] + std::exp(-x)) <= 0.6 * h * std::exp(-x) + 1e-14);
      }
      if (x < -1e-12) CHECK(d[k] == 0.0);
    }
  }
  SUBCASE("lambda = 0 reduces to the logistic term") {
    const auto f = logistic_state(0.05, -16.0, 16.0, 1.0, 0.0);
    const auto d = rhs(f, kExp, 0.0, 0.7, BoundarySpec::none());
    for (std::size_t k = 0; k < f.size(); ++k) {
      CHECK(d[k] == doctest::Approx(-0.7 * f.values[k] * (1.0 - f.values[k])).epsilon(1e-12));
    }
  }
  SUBCASE("rhs values stay in [-(lambda+mu), 0]") {
    Rng rng(55);
    for (int trial = 0; trial < 5; ++trial) {
      auto f = make_grid(0.05, -3.0, 8.0);
      double run = 0.0;
      for (auto& v : f.values) {
        run = std::min(1.0, run + 0.1 * rng.uniform01());
        v = run;
      }
      for (std::size_t k = f.size() - 5; k < f.size(); ++k) f.values[k] = 1.0;
      const double lambda = 0.8, mu = 0.9;
      for (double d : rhs(f, kExp, lambda, mu, BoundarySpec::none())) {
        CHECK(d <= 1e-12);
        CHECK(d >= -(lambda + mu) - 1e-12);
      }
    }
  }
  SUBCASE("invariant-violating input is rejected") {
    auto f = make_dirac(0.05, -1.0, 1.0);
    f.values[3] = 0.9;  // breaks monotonicity ahead of the step
    CHECK_THROWS_AS(rhs(f, kExp, 1.0, 1.0, BoundarySpec::none()), std::invalid_argument);
  }
}

TEST_CASE("integration basics") {
  SUBCASE("stability precondition") {
    IntegrateOptions opt;
    opt.dt = 0.3;
    CHECK_THROWS_AS(
        integrate(make_dirac(0.1, -2.0, 10.0), kExp, 1.0, 1.0, BoundarySpec::none(), 1.0, opt),
        std::invalid_argument);
  }
  SUBCASE("all-ones state stays put") {
    auto f = make_grid(0.05, -1.0, 1.0);
    for (auto& v : f.values) v = 1.0;
    const auto traj = integrate(f, kExp, 1.0, 1.0, BoundarySpec::none(), 0.5, {});
    for (double v : traj.snapshots.back().values) CHECK(v == 1.0);
  }
  SUBCASE("mass leak aborts the run") {
    CHECK_THROWS_AS(mfl::bmfl(kExp, 1.0, 1.0, 3.0, 0.05, -3.0, 4.0, {}), MassLeak);
  }
  SUBCASE("lambda = 0 keeps the Dirac step frozen") {
    const auto traj = mfl::bmfl(kExp, 0.0, 1.0, 3.0, 0.05, -2.0, 2.0, {});
    const auto& last = traj.snapshots.back();
    const auto first = make_dirac(0.05, -2.0, 2.0);
    CHECK(last.values == first.values);
  }
  SUBCASE("Lipschitz bound per step") {
    IntegrateOptions opt;
    opt.dt = 0.01;
    opt.snapshot_dt = 0.01;  // snapshot every step
    const double lambda = 1.0, mu = 1.0;
    const auto traj = mfl::bmfl(kExp, lambda, mu, 0.3, 0.02, -2.0, 16.0, opt);
    for (std::size_t s = 1; s < traj.snapshots.size(); ++s) {
      const auto& a = traj.snapshots[s - 1];
      const auto& b = traj.snapshots[s];
      const double dt = b.time - a.time;
      for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(b.values[k] <= a.values[k] + 1e-12);  // pointwise decrease
        CHECK(a.values[k] - b.values[k] <= (lambda + mu) * dt + 1e-9);
      }
    }
  }
}

TEST_CASE("logistic wave translates rigidly when lambda = 0") {
  IntegrateOptions opt;
  opt.dt = 0.01;
  opt.snapshot_dt = 1.0;
  const double v = 2.0;
  const auto f0 = logistic_state(0.02, -32.0, 44.0, v, 0.0);
  const auto traj = integrate(f0, kExp, 0.0, 1.0, BoundarySpec::none(), 5.0, opt);
  double worst = 0.0;
  for (const auto& snap : traj.snapshots) {
    for (std::size_t k = 0; k < snap.size(); ++k) {
      const double want = 1.0 / (1.0 + std::exp(-(snap.node_abs(k) - v * snap.time) / v));
      worst = std::max(worst, std::abs(snap.values[k] - want));
    }
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("average speed from tracked quantiles") {
  SUBCASE("stationary state has zero speed") {
    auto f = make_grid(0.05, -1.0, 1.0);
    for (auto& v : f.values) v = 1.0;
    const auto traj = integrate(f, kExp, 1.0, 1.0, BoundarySpec::none(), 2.0, {});
    CHECK(std::abs(avg_speed(traj, 0.5, 0.5, 2.0)) <= 1e-12);
  }
  SUBCASE("logistic wave speed") {
    IntegrateOptions opt;
    opt.dt = 0.01;
    const double v = 1.5;
    const auto f0 = logistic_state(0.02, -26.0, 36.0, v, 0.0);
    const auto traj = integrate(f0, kExp, 0.0, 1.0, BoundarySpec::none(), 4.0, opt);
    CHECK(std::abs(avg_speed(traj, 0.5, 1.0, 4.0) - v) <= 0.02 / 3.0 + 1e-6);
  }
  SUBCASE("asks for an untracked quantile") {
    const auto traj = mfl::bmfl(kExp, 0.0, 1.0, 0.5, 0.05, -2.0, 2.0, {});
    CHECK_THROWS_AS(avg_speed(traj, 0.25, 0.0, 0.5), std::invalid_argument);
  }
}

TEST_CASE("freeze transform") {
  const auto f = make_dirac(0.05, -2.0, 2.0);
  SUBCASE("nu = 0 is the identity") {
    CHECK(freeze_transform(f, 0.0).values == f.values);
  }
  SUBCASE("affine map of the Dirac step") {
    const auto g = freeze_transform(f, 0.3);
    for (std::size_t k = 0; k < f.size(); ++k) {
      CHECK(g.values[k] == doctest::Approx(0.3 + 0.7 * f.values[k]).epsilon(1e-12));
    }
  }
  SUBCASE("monotone in the argument") {
    auto lo = make_from_function(0.05, -2.0, 6.0, [](double x) { return std::clamp(x / 4.0, 0.0, 1.0); });
    auto hi = make_from_function(0.05, -2.0, 6.0, [](double x) { return std::clamp(x / 2.0, 0.0, 1.0); });
    const auto tlo = freeze_transform(lo, 0.4);
    const auto thi = freeze_transform(hi, 0.4);
    for (std::size_t k = 0; k < tlo.size(); ++k) CHECK(thi.values[k] >= tlo.values[k]);
  }
  SUBCASE("frozen-fraction trajectory lower-bounds the true dynamics") {
    // Integrating the reduced-sync system and mapping through nu + (1-nu) f
    // must stay behind (pointwise above) the true MFL started from the
    // transformed step.
    const double nu = 0.3, mu = 1.0;
    IntegrateOptions opt;
    opt.dt = 0.01;
    opt.snapshot_dt = 1.0;
    const auto reduced = mfl::bmfl(kExp, 1.0, mu * (1.0 - nu), 2.0, 0.02, -4.0, 26.0, opt);
    const auto full = integrate(freeze_transform(make_dirac(0.02, -4.0, 26.0), nu), kExp, 1.0,
                                mu, BoundarySpec::none(), 2.0, opt);
    REQUIRE(reduced.snapshots.size() == full.snapshots.size());
    for (std::size_t s = 0; s < full.snapshots.size(); ++s) {
      const auto frozen = freeze_transform(reduced.snapshots[s], nu);
      for (std::size_t k = 0; k < frozen.size(); ++k) {
        CHECK(frozen.values[k] >= full.snapshots[s].values[k] - 1e-6);
      }
    }
  }
}

TEST_CASE("boundary dynamics") {
  SUBCASE("fixed right boundary keeps f = 1 at and past B") {
    const double B = 1.5;
    auto f0 = make_from_function(0.05, -4.0, 4.0, [B](double x) {
      return x >= B ? 1.0 : std::clamp((x + 3.0) / 5.0, 0.0, 1.0);
    });
    IntegrateOptions opt;
    opt.dt = 0.02;
    opt.snapshot_dt = 0.5;
    const auto traj =
        integrate(f0, kExp, 1.0, 1.0, BoundarySpec::fixed_right(B), 3.0, opt);
    for (const auto& snap : traj.snapshots) {
      for (std::size_t k = 0; k < snap.size(); ++k) {
        if (snap.node_abs(k) >= B - 1e-12) CHECK(snap.values[k] == 1.0);
      }
    }
    // mass below B keeps flowing toward the boundary
    const auto& last = traj.snapshots.back();
    CHECK(last.value_at_abs(1.0) < f0.value_at_abs(1.0));
  }
  SUBCASE("rejects a state not pinned at the boundary") {
    const auto f0 = make_dirac(0.05, -1.0, 3.0);  // f < 1 between -1 and 0
    CHECK_THROWS_AS(
        integrate(f0, kExp, 1.0, 1.0, BoundarySpec::fixed_right(-0.5), 1.0, {}),
        std::invalid_argument);
  }
  SUBCASE("moving left boundary splits the dynamics at A") {
    // At t = 0 the boundary sits at A = 0.6 (between nodes).
    auto f = make_from_function(0.1, -2.0, 8.0, [](double x) {
      return std::clamp((x + 2.0) / 4.0, 0.0, 1.0);
    });
    const double lambda = 0.8, mu = 0.6, A = 0.6;
    const auto d = rhs(f, kExp, lambda, mu, BoundarySpec::moving_left(A, 2.0));
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double x = f.node_local(k);
      const double fx = f.values[k];
      if (x <= A + 1e-12) {
        CHECK(d[k] == doctest::Approx(-lambda * fx - mu * fx * (1.0 - fx)).epsilon(1e-12));
      } else {
        // boundary atom: lambda f_A (1 - J(x - A)) enters the outflow
        const double fa = f.value_at_local(A);
        CHECK(d[k] <= -lambda * fa * std::exp(-(x - A)) - mu * fx * (1.0 - fx) + 1e-9);
        CHECK(d[k] >= -(lambda + mu));
      }
    }
  }
}

TEST_CASE("comparison principle on ordered initial states") {
  Rng rng(66);
  for (int trial = 0; trial < 3; ++trial) {
    const double h = 0.05;
    auto behind = make_from_function(h, -4.0, 28.0, [&](double x) {
      return std::clamp((x + 2.0) / (2.0 + trial), 0.0, 1.0);
    });
    auto ahead = behind;
    for (auto& v : ahead.values) v = v * v;
    IntegrateOptions opt;
    opt.dt = 0.02;
    opt.snapshot_dt = 0.5;
    const auto t1 = integrate(behind, kExp, 1.0, 1.0, BoundarySpec::none(), 1.0, opt);
    const auto t2 = integrate(ahead, kExp, 1.0, 1.0, BoundarySpec::none(), 1.0, opt);
    for (std::size_t s = 0; s < t1.snapshots.size(); ++s) {
      for (std::size_t k = 0; k < t1.snapshots[s].size(); ++k) {
        CHECK(t2.snapshots[s].values[k] <= t1.snapshots[s].values[k] + 1e-9);
      }
    }
  }
}

TEST_CASE("window recentering preserves absolute positions") {
  // Rigid logistic wave at speed 1. The window must be wide enough that the
  // 0.2-width lead margin over the watched quantile keeps the right edge
  // inside the mass tolerance.
  const auto f_small = logistic_state(0.02, -30.0, 30.0, 1.0, 0.0);
  const auto f_wide = logistic_state(0.02, -30.0, 50.0, 1.0, 0.0);
  IntegrateOptions moving;
  moving.dt = 0.01;
  moving.recenter.enabled = true;
  const auto small = integrate(f_small, kExp, 0.0, 1.0, BoundarySpec::none(), 16.0, moving);

  IntegrateOptions fixed;
  fixed.dt = 0.01;
  const auto wide = integrate(f_wide, kExp, 0.0, 1.0, BoundarySpec::none(), 16.0, fixed);

  CHECK(small.snapshots.back().offset > 0.0);  // the window did shift
  REQUIRE(small.times.size() == wide.times.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < small.times.size(); ++i)
    worst = std::max(worst, std::abs(small.quantiles[0][i] - wide.quantiles[0][i]));
  CHECK(worst <= 1e-3);
  // quantile track is continuous across shifts
  for (std::size_t i = 1; i < small.times.size(); ++i)
    CHECK(std::abs(small.quantiles[0][i] - small.quantiles[0][i - 1]) < 0.3);
}
