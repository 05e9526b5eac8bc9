#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "jumpsync/jump_law.hpp"

namespace jumpsync::particles {

// Reflecting boundaries for the modified systems. Moving variants advance at
// constant speed from their initial position.
struct BoundarySpec {
  enum class Kind { None, FixedRight, MovingRight, MovingLeft };
  Kind kind = Kind::None;
  double position = 0.0;  // B, B0, or A0
  double speed = 0.0;     // > 0 for the moving variants

  static BoundarySpec none() { return {}; }
  static BoundarySpec fixed_right(double b) { return {Kind::FixedRight, b, 0.0}; }
  static BoundarySpec moving_right(double b0, double v);
  static BoundarySpec moving_left(double a0, double v);

  double at(double t) const {
    return kind == Kind::FixedRight ? position : position + speed * t;
  }
};

// The finite-n empirical state. Locations are unordered; for a MovingLeft
// boundary they follow the equivalent view in which a particle may lag behind
// the boundary but makes its independent jumps from max(location, A).
struct ParticleState {
  std::vector<double> locations;
  double offset = 0.0;  // cumulative re-centering shift
  double time = 0.0;
  std::uint64_t event_count = 0;
};

enum class SpeedStatistic { MeanDisplacement, QuantileDisplacement, LeadingParticle };

struct SpeedEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  SpeedStatistic statistic = SpeedStatistic::MeanDisplacement;
  double quantile_nu = 0.5;
};

// Deterministic pieces of one event, separated from the random draws so the
// join-if-ahead and clipping rules are unit-testable in isolation.
void apply_jump(ParticleState& state, std::size_t i, double z, const BoundarySpec& boundary);
void apply_sync(ParticleState& state, std::size_t i, std::size_t target);

// One event of the aggregate-clock chain: advance time by Exp(n(lambda+mu)),
// pick a particle uniformly, then jump with probability lambda/(lambda+mu) or
// synchronize with a uniformly chosen other particle (no-op for n = 1).
void step(ParticleState& state, const JumpLaw& law, double lambda, double mu,
          const BoundarySpec& boundary, Rng& rng);

struct SimulateOptions {
  SpeedStatistic statistic = SpeedStatistic::MeanDisplacement;
  double quantile_nu = 0.5;
  int batches = 10;  // batch-means standard error
  BoundarySpec boundary{};
  double init_spread = 0.0;  // particles start uniform on [0, init_spread); 0 = co-located
  // When set, (time, statistic) is appended here at ~series_points instants.
  std::vector<std::pair<double, double>>* series = nullptr;
  int series_points = 0;
};

// Steady-state speed over the post-warmup window: displacement of the chosen
// statistic divided by elapsed simulated time, with a batch-means standard
// error. Runs jumps_per_particle * n events total; deterministic per seed.
SpeedEstimate simulate_speed(const JumpLaw& law, double lambda, double mu, std::size_t n,
                             std::uint64_t jumps_per_particle, double warmup_fraction,
                             std::uint64_t seed, const SimulateOptions& options = {});

// Locations minus the nu-th empirical quantile (order statistic of rank
// ceil(nu * n)); the result's nu-quantile is 0.
std::vector<double> centered_snapshot(const ParticleState& state, double nu);

// Couples two systems on one event stream (same particle index, jump sizes
// and sync targets, particles matched by sorted rank at the start) and
// reports whether rank-wise dominance held after every event. Requires equal
// counts and sorted(lower)[i] <= sorted(upper)[i].
bool coupled_dominance_run(std::vector<double> init_lower, std::vector<double> init_upper,
                           const JumpLaw& law, double lambda, double mu,
                           std::uint64_t events, std::uint64_t seed);

}  // namespace jumpsync::particles
