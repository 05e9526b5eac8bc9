#pragma once

#include <string>
#include <vector>

#include "jumpsync/grid_cdf.hpp"
#include "jumpsync/jump_law.hpp"
#include "jumpsync/particles.hpp"

namespace jumpsync::mfl {

using particles::BoundarySpec;

struct RecenterPolicy {
  bool enabled = false;
  double watch_quantile = 0.99;   // shift when this quantile passes ...
  double trigger_fraction = 0.8;  // ... this fraction of the window,
  double shift_fraction = 0.25;   // ... moving right by this fraction.
};

struct IntegrateOptions {
  double dt = 0.01;
  double snapshot_dt = 0.0;  // 0 = keep only the first and last snapshot
  std::vector<double> track_quantiles = {0.5};
  RecenterPolicy recenter{};
  double mass_tolerance = 1e-6;
  double projection_tolerance = 1e-9;  // per-step clamp + monotone budget
};

struct MflParamsRecord {
  std::string law;
  double lambda = 0.0;
  double mu = 0.0;
  BoundarySpec boundary{};
  double dt = 0.0;
  double h = 0.0;
};

struct MflTrajectory {
  std::vector<double> times;                      // one entry per step, t=0 first
  std::vector<double> tracked_nu;
  std::vector<std::vector<double>> quantiles;     // [nu index][step], absolute
  std::vector<GridCdf> snapshots;                 // t=0, cadence points, t_end
  MflParamsRecord params;
};

// Time derivative of the windowed CDF under the mean-field dynamics
//   df_x/dt = -lambda \int_{-inf}^{x} (1-J(x-y)) d f_y - mu f_x (1 - f_x),
// with the boundary variants: fixed/moving right boundary pins df/dt = 0 at
// and past B; a moving left boundary at A replaces the dynamics by
// -lambda f - mu f(1-f) for x <= A and routes the mass at or below A through
// a boundary atom term lambda f_A (1-J(x-A)) for x > A. The convolution reads
// each cell's increment as mass spread uniformly over the cell, which keeps
// the scheme second order away from atoms; mass at or below the first node is
// an atom there. Values are validated on entry.
std::vector<double> rhs(const GridCdf& f, const JumpLaw& law, double lambda, double mu,
                        const BoundarySpec& boundary);

// Classical RK4 stepping of rhs with per-step projection back onto monotone
// [0,1] profiles. Requires dt (lambda + mu) < 0.5. Throws StabilityViolation
// when a projection exceeds its budget and MassLeak when the right edge stops
// capturing the mass.
MflTrajectory integrate(const GridCdf& f0, const JumpLaw& law, double lambda, double mu,
                        const BoundarySpec& boundary, double t_end,
                        const IntegrateOptions& options = {});

// The benchmark trajectory: integrate from the Dirac step at 0 on a window
// [x_left, x_right] that the caller sizes from a speed upper bound.
MflTrajectory bmfl(const JumpLaw& law, double lambda, double mu, double t_end, double h,
                   double x_left, double x_right, const IntegrateOptions& options = {});

// Quantile displacement speed (q_nu(t2) - q_nu(t1)) / (t2 - t1); nu must be
// one of the tracked quantiles of the trajectory.
double avg_speed(const MflTrajectory& traj, double nu, double t1, double t2);

}  // namespace jumpsync::mfl
