#pragma once

#include <cstdint>
#include <vector>

#include "jumpsync/jump_law.hpp"

namespace jumpsync::brw {

struct BrwSample {
  double time;
  std::size_t population;  // N(t)
  double leader;           // D(t) = max location
};

struct BrwResult {
  std::vector<BrwSample> trajectory;  // at sample_dt cadence, plus the endpoint
  std::vector<double> final_locations;
  double time = 0.0;        // time actually reached
  bool cap_exceeded = false;
};

struct BrwOptions {
  std::size_t cap = 1'000'000;  // population cap; exceeding it flags, not throws
  double sample_dt = 0.0;       // 0 = record endpoint only
};

// The associated branching random walk: starts with one particle at 0; under
// the aggregate clock of rate N(lambda+mu) a uniformly chosen particle either
// jumps (probability lambda/(lambda+mu)) or splits in place. Stops at t_end,
// or earlier with cap_exceeded set once the population would pass the cap.
BrwResult simulate_brw(const JumpLaw& law, double lambda, double mu, double t_end,
                       std::uint64_t seed, const BrwOptions& options = {});

struct LeadingCdf {
  std::vector<double> grid;
  std::vector<double> prob;  // Monte-Carlo estimate of P{D(t) <= x}
  bool biased = false;       // some replica hit the population cap
};

// Empirical law of the leading particle at time t over independent replicas,
// each started from a single particle at 0. Grid must be sorted.
LeadingCdf leading_cdf(const JumpLaw& law, double lambda, double mu, double t,
                       std::size_t replicas, std::vector<double> grid, std::uint64_t seed,
                       std::size_t cap = 1'000'000);

}  // namespace jumpsync::brw
