#include "jumpsync/particles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jumpsync::particles {

BoundarySpec BoundarySpec::moving_right(double b0, double v) {
  if (!(v > 0.0)) throw std::invalid_argument("moving boundary needs v > 0");
  return {Kind::MovingRight, b0, v};
}

BoundarySpec BoundarySpec::moving_left(double a0, double v) {
  if (!(v > 0.0)) throw std::invalid_argument("moving boundary needs v > 0");
  return {Kind::MovingLeft, a0, v};
}

void apply_jump(ParticleState& state, std::size_t i, double z, const BoundarySpec& boundary) {
  double& x = state.locations[i];
  switch (boundary.kind) {
    case BoundarySpec::Kind::None:
      x += z;
      break;
    case BoundarySpec::Kind::FixedRight:
    case BoundarySpec::Kind::MovingRight:
      // Jumps past the boundary land exactly on it.
      x = std::min(x + z, boundary.at(state.time));
      break;
    case BoundarySpec::Kind::MovingLeft:
      // Equivalent view: the jump originates from max(x, A).
      x = std::max(x, boundary.at(state.time)) + z;
      break;
  }
}

void apply_sync(ParticleState& state, std::size_t i, std::size_t target) {
  double& x = state.locations[i];
  x = std::max(x, state.locations[target]);
}

void step(ParticleState& state, const JumpLaw& law, double lambda, double mu,
          const BoundarySpec& boundary, Rng& rng) {
  const std::size_t n = state.locations.size();
  if (n == 0) throw std::invalid_argument("step: empty state");
  if (!(lambda >= 0.0) || !(mu > 0.0)) throw std::invalid_argument("step: need lambda >= 0, mu > 0");

  state.time += rng.exponential(static_cast<double>(n) * (lambda + mu));
  const std::size_t i = rng.below(n);
  if (rng.uniform01() * (lambda + mu) < lambda) {
    apply_jump(state, i, law.sample(rng), boundary);
  } else if (n > 1) {
    std::size_t k = rng.below(n - 1);
    apply_sync(state, i, k + (k >= i ? 1 : 0));
  }
  ++state.event_count;
}

namespace {

double statistic_value(const ParticleState& state, SpeedStatistic stat, double nu,
                       std::vector<double>& scratch) {
  switch (stat) {
    case SpeedStatistic::MeanDisplacement:
      return std::accumulate(state.locations.begin(), state.locations.end(), 0.0) /
             static_cast<double>(state.locations.size());
    case SpeedStatistic::LeadingParticle:
      return *std::max_element(state.locations.begin(), state.locations.end());
    case SpeedStatistic::QuantileDisplacement: {
      const std::size_t n = state.locations.size();
      scratch = state.locations;
      const std::size_t rank =
          static_cast<std::size_t>(std::ceil(nu * static_cast<double>(n)));
      const std::size_t idx = (rank == 0 ? 0 : rank - 1);
      std::nth_element(scratch.begin(), scratch.begin() + idx, scratch.end());
      return scratch[idx];
    }
  }
  return 0.0;
}

}  // namespace

SpeedEstimate simulate_speed(const JumpLaw& law, double lambda, double mu, std::size_t n,
                             std::uint64_t jumps_per_particle, double warmup_fraction,
                             std::uint64_t seed, const SimulateOptions& options) {
  if (n < 1) throw std::invalid_argument("simulate_speed: n must be >= 1");
  if (jumps_per_particle < 2) throw std::invalid_argument("simulate_speed: need >= 2 jumps per particle");
  if (!(warmup_fraction > 0.0 && warmup_fraction < 1.0))
    throw std::invalid_argument("simulate_speed: warmup_fraction must be in (0,1)");
  if (!(lambda >= 0.0) || !(mu > 0.0))
    throw std::invalid_argument("simulate_speed: need lambda >= 0, mu > 0");
  const int batches = options.batches;
  if (batches < 2) throw std::invalid_argument("simulate_speed: need >= 2 batches");

  Rng rng(seed);
  ParticleState state;
  state.locations.assign(n, 0.0);
  if (options.init_spread > 0.0) {
    for (auto& x : state.locations) x = options.init_spread * rng.uniform01();
  }

  const std::uint64_t total = jumps_per_particle * static_cast<std::uint64_t>(n);
  const std::uint64_t warm = static_cast<std::uint64_t>(
      std::llround(warmup_fraction * static_cast<double>(total)));
  std::vector<std::uint64_t> marks;  // event counts at measurement instants
  marks.push_back(warm);
  for (int b = 1; b <= batches; ++b) {
    marks.push_back(warm + (total - warm) * static_cast<std::uint64_t>(b) /
                               static_cast<std::uint64_t>(batches));
  }
  std::uint64_t series_stride = 0;
  if (options.series && options.series_points > 0)
    series_stride = std::max<std::uint64_t>(1, total / options.series_points);

  std::vector<double> scratch;
  std::vector<double> mark_t, mark_s;
  std::size_t next_mark = 0;
  for (std::uint64_t e = 0; e <= total; ++e) {
    while (next_mark < marks.size() && e == marks[next_mark]) {
      mark_t.push_back(state.time);
      mark_s.push_back(statistic_value(state, options.statistic, options.quantile_nu, scratch));
      ++next_mark;
    }
    if (series_stride && e % series_stride == 0) {
      options.series->emplace_back(
          state.time, statistic_value(state, options.statistic, options.quantile_nu, scratch));
    }
    if (e == total) break;
    step(state, law, lambda, mu, options.boundary, rng);
  }

  SpeedEstimate est;
  est.statistic = options.statistic;
  est.quantile_nu = options.quantile_nu;
  est.t_start = mark_t.front();
  est.t_end = mark_t.back();
  est.value = (mark_s.back() - mark_s.front()) / (mark_t.back() - mark_t.front());

  double mean_b = 0.0;
  std::vector<double> batch_speed(batches);
  for (int b = 0; b < batches; ++b) {
    batch_speed[b] = (mark_s[b + 1] - mark_s[b]) / (mark_t[b + 1] - mark_t[b]);
    mean_b += batch_speed[b];
  }
  mean_b /= batches;
  double ss = 0.0;
  for (double bs : batch_speed) ss += (bs - mean_b) * (bs - mean_b);
  est.std_error = std::sqrt(ss / (batches - 1)) / std::sqrt(static_cast<double>(batches));
  return est;
}

std::vector<double> centered_snapshot(const ParticleState& state, double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("centered_snapshot: nu in (0,1)");
  const std::size_t n = state.locations.size();
  std::vector<double> scratch = state.locations;
  const std::size_t rank = static_cast<std::size_t>(std::ceil(nu * static_cast<double>(n)));
  const std::size_t idx = (rank == 0 ? 0 : rank - 1);
  std::nth_element(scratch.begin(), scratch.begin() + idx, scratch.end());
  const double q = scratch[idx];
  std::vector<double> out = state.locations;
  for (auto& x : out) x -= q;
  return out;
}

bool coupled_dominance_run(std::vector<double> init_lower, std::vector<double> init_upper,
                           const JumpLaw& law, double lambda, double mu,
                           std::uint64_t events, std::uint64_t seed) {
  if (init_lower.size() != init_upper.size())
    throw std::invalid_argument("coupled run: particle counts differ");
  const std::size_t n = init_lower.size();
  if (n == 0) throw std::invalid_argument("coupled run: empty states");
  std::sort(init_lower.begin(), init_lower.end());
  std::sort(init_upper.begin(), init_upper.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (init_lower[i] > init_upper[i])
      throw std::invalid_argument("coupled run: initial states not rank-dominated");
  }

  // Rank-matched labels persist; only the touched label can break dominance,
  // and label-wise dominance implies rank-wise dominance of the multisets.
  Rng rng(seed);
  std::vector<double>&lower = init_lower, &upper = init_upper;
  for (std::uint64_t e = 0; e < events; ++e) {
    const std::size_t i = rng.below(n);
    if (rng.uniform01() * (lambda + mu) < lambda) {
      const double z = law.sample(rng);
      lower[i] += z;
      upper[i] += z;
    } else if (n > 1) {
      std::size_t k = rng.below(n - 1);
      const std::size_t j = k + (k >= i ? 1 : 0);
      lower[i] = std::max(lower[i], lower[j]);
      upper[i] = std::max(upper[i], upper[j]);
    }
    if (lower[i] > upper[i]) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (lower[i] > upper[i]) return false;
  }
  return true;
}

}  // namespace jumpsync::particles
