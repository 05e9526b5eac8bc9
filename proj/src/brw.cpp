#include "jumpsync/brw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jumpsync::brw {

namespace {

// Core replica loop writing into a reusable population buffer. Returns the
// leading location at the stop time.
double run_replica(const JumpLaw& law, double lambda, double mu, double t_end,
                   std::size_t cap, Rng& rng, std::vector<double>& pop, double& t_out,
                   bool& truncated, BrwResult* record, double sample_dt) {
  pop.clear();
  pop.push_back(0.0);
  double t = 0.0;
  double leader = 0.0;
  double next_sample = 0.0;
  truncated = false;
  while (true) {
    const double rate = static_cast<double>(pop.size()) * (lambda + mu);
    const double dt = rng.exponential(rate);
    if (t + dt >= t_end) {
      if (record && sample_dt > 0.0) {
        while (next_sample < t_end) {
          record->trajectory.push_back({next_sample, pop.size(), leader});
          next_sample += sample_dt;
        }
      }
      t = t_end;
      break;
    }
    if (record && sample_dt > 0.0) {
      while (next_sample <= t + dt) {
        record->trajectory.push_back({next_sample, pop.size(), leader});
        next_sample += sample_dt;
      }
    }
    t += dt;
    const std::size_t i = rng.below(pop.size());
    if (rng.uniform01() * (lambda + mu) < lambda) {
      pop[i] += law.sample(rng);
      leader = std::max(leader, pop[i]);
    } else {
      if (pop.size() + 1 > cap) {
        truncated = true;
        break;
      }
      pop.push_back(pop[i]);
    }
  }
  t_out = t;
  return leader;
}

}  // namespace

BrwResult simulate_brw(const JumpLaw& law, double lambda, double mu, double t_end,
                       std::uint64_t seed, const BrwOptions& options) {
  if (!(t_end > 0.0)) throw std::invalid_argument("simulate_brw: t_end must be > 0");
  if (options.cap < 1) throw std::invalid_argument("simulate_brw: cap must be >= 1");
  if (!(lambda >= 0.0) || !(mu > 0.0))
    throw std::invalid_argument("simulate_brw: need lambda >= 0, mu > 0");

  BrwResult result;
  Rng rng(seed);
  std::vector<double> pop;
  bool truncated = false;
  double t = 0.0;
  const double leader = run_replica(law, lambda, mu, t_end, options.cap, rng, pop, t,
                                    truncated, &result, options.sample_dt);
  result.trajectory.push_back({t, pop.size(), leader});
  result.final_locations = std::move(pop);
  result.time = t;
  result.cap_exceeded = truncated;
  return result;
}

LeadingCdf leading_cdf(const JumpLaw& law, double lambda, double mu, double t,
                       std::size_t replicas, std::vector<double> grid, std::uint64_t seed,
                       std::size_t cap) {
  if (replicas < 1) throw std::invalid_argument("leading_cdf: replicas must be >= 1");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("leading_cdf: grid must be sorted");

  LeadingCdf out;
  out.grid = std::move(grid);
  std::vector<double> leaders;
  leaders.reserve(replicas);
  std::vector<double> pop;
  for (std::size_t r = 0; r < replicas; ++r) {
    Rng rng(seed, r);
    bool truncated = false;
    double t_reached = 0.0;
    leaders.push_back(
        run_replica(law, lambda, mu, t, cap, rng, pop, t_reached, truncated, nullptr, 0.0));
    out.biased = out.biased || truncated;
  }
  std::sort(leaders.begin(), leaders.end());
  out.prob.resize(out.grid.size());
  for (std::size_t g = 0; g < out.grid.size(); ++g) {
    const auto it = std::upper_bound(leaders.begin(), leaders.end(), out.grid[g]);
    out.prob[g] = static_cast<double>(it - leaders.begin()) / static_cast<double>(replicas);
  }
  return out;
}

}  // namespace jumpsync::brw
