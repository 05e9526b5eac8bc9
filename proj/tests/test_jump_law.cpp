#include <doctest.h>

#include <cmath>
#include <vector>

#include "jumpsync/jump_law.hpp"
#include "oracles.hpp"

using namespace jumpsync;

namespace {

// Piecewise-linear law with mean exactly 1; density 0.8 / 0.2 / 0.8 on
// [0, 0.5] / [0.5, 1.5] / [1.5, 2].
JumpLaw tent_law() {
  return JumpLaw::empirical({{0.0, 0.0}, {0.5, 0.4}, {1.5, 0.6}, {2.0, 1.0}});
}

std::vector<double> draw(const JumpLaw& law, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& x : out) x = law.sample(rng);
  return out;
}

std::vector<JumpLaw> all_laws() {
  return {JumpLaw::exponential_mean_one(), JumpLaw::uniform_zero_two(),
          JumpLaw::deterministic_one(), tent_law()};
}

}  // namespace

TEST_CASE("cdf values") {
  const auto exp = JumpLaw::exponential_mean_one();
  CHECK(exp.cdf(0.0) == 0.0);
  CHECK(exp.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(JumpLaw::uniform_zero_two().cdf(0.5) == doctest::Approx(0.25));
  CHECK(JumpLaw::deterministic_one().cdf(0.999) == 0.0);
  CHECK(JumpLaw::deterministic_one().cdf(1.0) == 1.0);
}

TEST_CASE("laplace transforms") {
  const auto exp = JumpLaw::exponential_mean_one();
  CHECK(exp.laplace(0.5) == doctest::Approx(1.0 / 1.5).epsilon(1e-12));
  CHECK(exp.laplace(-0.5) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::isinf(exp.laplace(-1.0)));
  CHECK(std::isinf(exp.laplace(-2.0)));

  const auto uni = JumpLaw::uniform_zero_two();
  CHECK(uni.laplace(0.0) == 1.0);
  CHECK(uni.laplace(0.7) == doctest::Approx((1.0 - std::exp(-1.4)) / 1.4).epsilon(1e-12));

  CHECK(JumpLaw::deterministic_one().laplace(-2.0) ==
        doctest::Approx(std::exp(2.0)).epsilon(1e-12));
}

TEST_CASE("tail exponents") {
  CHECK(JumpLaw::exponential_mean_one().tail_exponent() == 1.0);
  CHECK(std::isinf(JumpLaw::uniform_zero_two().tail_exponent()));
  CHECK(std::isinf(JumpLaw::deterministic_one().tail_exponent()));
  CHECK(std::isinf(tent_law().tail_exponent()));
}

TEST_CASE("unit mean: analytic for built-ins, numeric for empirical") {
  CHECK(std::abs(JumpLaw::exponential_mean_one().mean() - 1.0) < 1e-9);
  CHECK(std::abs(JumpLaw::uniform_zero_two().mean() - 1.0) < 1e-9);
  CHECK(std::abs(JumpLaw::deterministic_one().mean() - 1.0) < 1e-9);
  CHECK(std::abs(tent_law().mean() - 1.0) < 1e-6);
}

TEST_CASE("L is nonincreasing and convex, L(0)=1, L'(0)=-1") {
  for (const auto& law : all_laws()) {
    CAPTURE(law.name());
    CHECK(law.laplace(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(law.laplace_deriv(0.0) == doctest::Approx(-1.0).epsilon(1e-6));
    const double lo = law.kind() == JumpLawKind::ExponentialMeanOne ? -0.95 : -3.0;
    const int pts = 100;
    for (int i = 0; i + 2 < pts; ++i) {
      const double s0 = lo + (4.0 - lo) * i / (pts - 1);
      const double s1 = lo + (4.0 - lo) * (i + 1) / (pts - 1);
      const double s2 = lo + (4.0 - lo) * (i + 2) / (pts - 1);
      CHECK(law.laplace(s0) >= law.laplace(s1) - 1e-12);
      // midpoint convexity: L(s1) <= (L(s0)+L(s2))/2 on the uniform grid
      CHECK(law.laplace(s1) <= 0.5 * (law.laplace(s0) + law.laplace(s2)) + 1e-12);
    }
  }
}

TEST_CASE("sampling matches the analytic CDF") {
  SUBCASE("point mass draws are exactly 1") {
    Rng rng(5);
    for (int i = 0; i < 10; ++i) CHECK(JumpLaw::deterministic_one().sample(rng) == 1.0);
  }
  SUBCASE("law of large numbers for the exponential mean") {
    const auto xs = draw(JumpLaw::exponential_mean_one(), 1'000'000, 42);
    double sum = 0.0;
    for (double x : xs) sum += x;
    CHECK(std::abs(sum / xs.size() - 1.0) < 0.005);
  }
  SUBCASE("KS distance, uniform at a million draws") {
    const auto law = JumpLaw::uniform_zero_two();
    const double d =
        oracles::ks_distance(draw(law, 1'000'000, 43), [&](double x) { return law.cdf(x); });
    CHECK(d < 0.002);
  }
  SUBCASE("KS distance under 0.01 for every variant") {
    for (const auto& law : all_laws()) {
      CAPTURE(law.name());
      const double d =
          oracles::ks_distance(draw(law, 100'000, 44), [&](double x) { return law.cdf(x); });
      CHECK(d < 0.01);
    }
  }
  SUBCASE("identical seeds give identical draw sequences") {
    const auto a = draw(JumpLaw::exponential_mean_one(), 1000, 7);
    const auto b = draw(JumpLaw::exponential_mean_one(), 1000, 7);
    CHECK(a == b);
  }
}

TEST_CASE("empirical law against quadrature and closed forms") {
  const auto law = tent_law();
  SUBCASE("laplace vs quadrature of the density") {
    for (double s : {-1.5, -0.3, 0.2, 1.0, 3.0}) {
      const double want = oracles::simpson_piecewise(
          [&](double x) {
            const double dens = (x < 0.5 || x > 1.5) ? 0.8 : 0.2;
            return std::exp(-s * x) * dens;
          },
          0.0, 2.0, {0.5, 1.5});
      CHECK(law.laplace(s) == doctest::Approx(want).epsilon(1e-9));
    }
  }
  SUBCASE("ccdf_integral vs quadrature of the complementary CDF") {
    for (const auto& l : all_laws()) {
      CAPTURE(l.name());
      for (double x : {0.3, 1.0, 1.7, 2.5}) {
        const double want = oracles::simpson_piecewise(
            [&](double u) { return 1.0 - l.cdf(u); }, 0.0, x, {0.5, 1.0, 1.5, 2.0});
        CHECK(l.ccdf_integral(x) == doctest::Approx(want).epsilon(1e-9));
      }
    }
  }
  SUBCASE("an atom-only empirical law reproduces the point mass") {
    const auto atom = JumpLaw::empirical({{1.0, 1.0}});
    CHECK(atom.cdf(0.999) == 0.0);
    CHECK(atom.cdf(1.0) == 1.0);
    CHECK(atom.laplace(-2.0) == doctest::Approx(std::exp(2.0)));
    Rng rng(9);
    CHECK(atom.sample(rng) == 1.0);
  }
}

TEST_CASE("empirical law construction rejects bad inputs") {
  CHECK_THROWS_AS(JumpLaw::empirical({{0.0, 0.0}, {2.0, 0.9}}), std::invalid_argument);
  CHECK_THROWS_AS(JumpLaw::empirical({{0.0, 0.5}, {1.0, 0.2}, {2.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(JumpLaw::empirical({{-0.5, 0.0}, {2.0, 1.0}}), std::invalid_argument);
  // mean far from 1
  CHECK_THROWS_AS(JumpLaw::empirical({{0.0, 0.0}, {4.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("law parsing") {
  CHECK(JumpLaw::parse("exp").kind() == JumpLawKind::ExponentialMeanOne);
  CHECK(JumpLaw::parse("uniform02").kind() == JumpLawKind::UniformZeroTwo);
  CHECK(JumpLaw::parse("det1").kind() == JumpLawKind::DeterministicOne);
  CHECK_THROWS_AS(JumpLaw::parse("cauchy"), std::invalid_argument);
}
