#include "jumpsync/mfl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jumpsync/errors.hpp"

namespace jumpsync::mfl {

namespace {

// Convolution + reaction terms for one stage state, in window-local
// coordinates. Mass at or below the first node is inert (it has fallen out of
// the window and can no longer reach it), so a constant-1 state has zero
// derivative. A moving left boundary at `a_local` instead routes everything
// at or below A through the boundary atom: those particles jump from A
// itself. `b_local` is +inf unless a right boundary pins nodes.
class RhsKernel {
 public:
  RhsKernel(const JumpLaw& law, double lambda, double mu, double h, std::size_t n)
      : law_(law), lambda_(lambda), mu_(mu), h_(h) {
    exp_fast_ = law.kind() == JumpLawKind::ExponentialMeanOne;
    if (!exp_fast_) {
      const double support = law.support_upper();
      const std::size_t kmax =
          std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(support / h)) + 2);
      weights_.resize(kmax);
      for (std::size_t d = 0; d < kmax; ++d) {
        weights_[d] = (law.ccdf_integral(static_cast<double>(d + 1) * h) -
                       law.ccdf_integral(static_cast<double>(d) * h)) /
                      h;
      }
    }
    inc_.resize(n);
  }

  void operator()(const std::vector<double>& v, double x0, bool has_left_boundary,
                  double a_local, double b_local, std::vector<double>& out) {
    const std::size_t n = v.size();
    for (std::size_t k = 1; k < n; ++k) inc_[k] = v[k] - v[k - 1];

    std::size_t ja = 1;     // first node the cell sum starts from
    double atom0 = 0.0;     // boundary-atom weight at zero node distance
    double jump_rate0 = 0.0;  // lambda coefficient on nodes at or left of A
    if (has_left_boundary) {
      // First node strictly right of A; the clamp keeps A inside the window.
      const double a = std::clamp(a_local, x0, x0 + static_cast<double>(n - 2) * h_);
      ja = static_cast<std::size_t>(std::floor((a - x0) / h_ + 1e-12)) + 1;
      const double w = x0 + static_cast<double>(ja) * h_ - a;  // in (0, h]
      const double fa = interp(v, x0, a);
      const double pm = std::max(0.0, v[ja] - fa);  // mass in (A, x_ja]
      if (exp_fast_) {
        atom0 = fa * std::exp(-w) + pm * (-std::expm1(-w) / w);
      } else {
        atom_fa_ = fa;
        atom_w_ = w;
        atom_pm_ = pm;
      }
      jump_rate0 = lambda_;
    }

    for (std::size_t k = 0; k < ja; ++k) {
      // At or left of a dragging boundary every independent jump starts from
      // A and exits (-inf, x]; without one this mass cannot move at all.
      out[k] = -(jump_rate0 + mu_ * (1.0 - v[k])) * v[k];
    }

    if (exp_fast_) {
      const double eh = std::exp(-h_);
      const double c0 = -std::expm1(-h_) / h_;
      double decay = 1.0;  // e^{-(k-ja) h}
      double cells = 0.0;  // cell increments with exponential weights
      for (std::size_t k = ja; k < n; ++k) {
        if (k > ja) {
          decay *= eh;
          cells = eh * cells + inc_[k];
        } else if (!has_left_boundary) {
          cells = inc_[k];  // ja = 1: own cell enters the sum
        }
        const double conv = atom0 * decay + c0 * cells;
        out[k] = -lambda_ * conv - mu_ * v[k] * (1.0 - v[k]);
      }
    } else {
      const std::size_t kmax = weights_.size();
      for (std::size_t k = ja; k < n; ++k) {
        double conv = 0.0;
        if (has_left_boundary) {
          const double d = static_cast<double>(k - ja) * h_;
          conv = atom_fa_ * law_.ccdf(d + atom_w_) +
                 atom_pm_ * (law_.ccdf_integral(d + atom_w_) - law_.ccdf_integral(d)) /
                     atom_w_;
        }
        const std::size_t jfirst = has_left_boundary ? ja + 1 : 1;
        const std::size_t jlo = (k >= jfirst + kmax) ? k - kmax + 1 : jfirst;
        for (std::size_t j = jlo; j <= k; ++j) conv += inc_[j] * weights_[k - j];
        out[k] = -lambda_ * conv - mu_ * v[k] * (1.0 - v[k]);
      }
    }

    if (std::isfinite(b_local)) {
      for (std::size_t k = n; k-- > 0;) {
        if (x0 + static_cast<double>(k) * h_ < b_local - 1e-12) break;
        out[k] = 0.0;
      }
    }
  }

 private:
  double interp(const std::vector<double>& v, double x0, double x) const {
    const double u = (x - x0) / h_;
    if (u <= 0.0) return v.front();
    const auto k = static_cast<std::size_t>(u);
    if (k + 1 >= v.size()) return v.back();
    const double frac = u - static_cast<double>(k);
    return v[k] + frac * (v[k + 1] - v[k]);
  }

  const JumpLaw& law_;
  double lambda_, mu_, h_;
  bool exp_fast_ = false;
  double atom_fa_ = 0.0, atom_w_ = 0.0, atom_pm_ = 0.0;
  std::vector<double> weights_;
  std::vector<double> inc_;
};

}  // namespace

std::vector<double> rhs(const GridCdf& f, const JumpLaw& law, double lambda, double mu,
                        const BoundarySpec& boundary) {
  f.validate();
  if (!(lambda >= 0.0) || !(mu > 0.0)) throw std::invalid_argument("rhs: need lambda >= 0, mu > 0");
  RhsKernel kernel(law, lambda, mu, f.h, f.size());
  std::vector<double> out(f.size());
  const bool left = boundary.kind == BoundarySpec::Kind::MovingLeft;
  double b_local = kInf;
  const double bpos = boundary.at(f.time) - f.offset;
  if (boundary.kind == BoundarySpec::Kind::FixedRight ||
      boundary.kind == BoundarySpec::Kind::MovingRight)
    b_local = bpos;
  kernel(f.values, f.x0, left, left ? bpos : f.x0, b_local, out);
  return out;
}

MflTrajectory integrate(const GridCdf& f0, const JumpLaw& law, double lambda, double mu,
                        const BoundarySpec& boundary, double t_end,
                        const IntegrateOptions& options) {
  f0.validate(options.mass_tolerance);
  if (!(lambda >= 0.0) || !(mu > 0.0))
    throw std::invalid_argument("integrate: need lambda >= 0, mu > 0");
  const double dt = options.dt;
  if (!(dt > 0.0) || dt * (lambda + mu) >= 0.5)
    throw std::invalid_argument("integrate: stability requires dt (lambda + mu) < 0.5");

  GridCdf f = f0;
  const std::size_t n = f.size();
  if (boundary.kind == BoundarySpec::Kind::FixedRight ||
      boundary.kind == BoundarySpec::Kind::MovingRight) {
    const double b_local = boundary.at(f.time) - f.offset;
    for (std::size_t k = 0; k < n; ++k) {
      if (f.node_local(k) >= b_local - 1e-12 && f.values[k] < 1.0 - 1e-9)
        throw std::invalid_argument("integrate: state must equal 1 at and past the right boundary");
    }
  }
  RhsKernel kernel(law, lambda, mu, f.h, n);

  MflTrajectory traj;
  traj.params = {law.name(), lambda, mu, boundary, dt, f.h};
  traj.tracked_nu = options.track_quantiles;
  traj.quantiles.resize(traj.tracked_nu.size());

  auto record = [&](const GridCdf& g) {
    traj.times.push_back(g.time);
    for (std::size_t i = 0; i < traj.tracked_nu.size(); ++i)
      traj.quantiles[i].push_back(quantile(g, traj.tracked_nu[i]));
  };
  record(f);
  traj.snapshots.push_back(f);
  double next_snapshot = options.snapshot_dt > 0.0 ? options.snapshot_dt : kInf;

  const bool left_boundary = boundary.kind == BoundarySpec::Kind::MovingLeft;
  auto boundary_locals = [&](double t, double& a_local, double& b_local) {
    b_local = kInf;
    const double bpos = boundary.at(t) - f.offset;
    a_local = left_boundary ? bpos : f.x0;
    if (boundary.kind == BoundarySpec::Kind::FixedRight ||
        boundary.kind == BoundarySpec::Kind::MovingRight)
      b_local = bpos;
  };

  std::vector<double> k1(n), k2(n), k3(n), k4(n), stage(n);
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  for (std::size_t s = 0; s < steps; ++s) {
    const double step_dt = std::min(dt, t_end - f.time);
    double a_local, b_local;

    boundary_locals(f.time, a_local, b_local);
    kernel(f.values, f.x0, left_boundary, a_local, b_local, k1);

    boundary_locals(f.time + 0.5 * step_dt, a_local, b_local);
    for (std::size_t k = 0; k < n; ++k) stage[k] = f.values[k] + 0.5 * step_dt * k1[k];
    kernel(stage, f.x0, left_boundary, a_local, b_local, k2);
    for (std::size_t k = 0; k < n; ++k) stage[k] = f.values[k] + 0.5 * step_dt * k2[k];
    kernel(stage, f.x0, left_boundary, a_local, b_local, k3);

    boundary_locals(f.time + step_dt, a_local, b_local);
    for (std::size_t k = 0; k < n; ++k) stage[k] = f.values[k] + step_dt * k3[k];
    kernel(stage, f.x0, left_boundary, a_local, b_local, k4);

    double worst = 0.0;
    double run = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double raw = f.values[k] +
                         step_dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
      run = std::max(run, std::clamp(raw, 0.0, 1.0));
      worst = std::max(worst, std::abs(run - raw));
      f.values[k] = run;
    }
    if (worst > options.projection_tolerance)
      throw StabilityViolation("integrate: projection moved a value by " +
                               std::to_string(worst) + " at t = " + std::to_string(f.time));
    if (f.values.back() < 1.0 - options.mass_tolerance)
      throw MassLeak("integrate: right edge lost mass at t = " + std::to_string(f.time));
    f.time += step_dt;

    if (options.recenter.enabled) {
      const double watch =
          quantile(f, options.recenter.watch_quantile) - f.offset;  // local coords
      const double width = static_cast<double>(n - 1) * f.h;
      if (watch > f.x0 + options.recenter.trigger_fraction * width) {
        const auto m = static_cast<std::size_t>(options.recenter.shift_fraction *
                                                static_cast<double>(n));
        if (m > 0 && m < n) {
          const double last = f.values.back();
          for (std::size_t k = 0; k + m < n; ++k) f.values[k] = f.values[k + m];
          for (std::size_t k = n - m; k < n; ++k) f.values[k] = last;
          f.offset += static_cast<double>(m) * f.h;
        }
      }
    }

    record(f);
    if (f.time >= next_snapshot - 1e-12 && s + 1 < steps) {
      traj.snapshots.push_back(f);
      next_snapshot =
          (std::floor(f.time / options.snapshot_dt + 1e-9) + 1.0) * options.snapshot_dt;
    }
  }
  traj.snapshots.push_back(f);
  return traj;
}

MflTrajectory bmfl(const JumpLaw& law, double lambda, double mu, double t_end, double h,
                   double x_left, double x_right, const IntegrateOptions& options) {
  return integrate(make_dirac(h, x_left, x_right), law, lambda, mu, BoundarySpec::none(),
                   t_end, options);
}

double avg_speed(const MflTrajectory& traj, double nu, double t1, double t2) {
  if (!(t1 < t2)) throw std::invalid_argument("avg_speed: need t1 < t2");
  if (traj.times.empty() || t1 < traj.times.front() - 1e-9 || t2 > traj.times.back() + 1e-9)
    throw std::invalid_argument("avg_speed: window outside trajectory");
  std::size_t which = traj.tracked_nu.size();
  for (std::size_t i = 0; i < traj.tracked_nu.size(); ++i) {
    if (std::abs(traj.tracked_nu[i] - nu) < 1e-12) which = i;
  }
  if (which == traj.tracked_nu.size())
    throw std::invalid_argument("avg_speed: quantile was not tracked");

  auto q_at = [&](double t) {
    const auto& ts = traj.times;
    const auto it = std::lower_bound(ts.begin(), ts.end(), t);
    std::size_t k = static_cast<std::size_t>(it - ts.begin());
    if (k == 0) return traj.quantiles[which].front();
    if (k >= ts.size()) return traj.quantiles[which].back();
    const double frac = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
    return traj.quantiles[which][k - 1] +
           frac * (traj.quantiles[which][k] - traj.quantiles[which][k - 1]);
  };
  return (q_at(t2) - q_at(t1)) / (t2 - t1);
}

}  // namespace jumpsync::mfl
