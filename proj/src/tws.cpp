#include "jumpsync/tws.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jumpsync/errors.hpp"

namespace jumpsync::tws {

namespace {

double v_star_normalized(double lambda) {
  return (1.0 + std::sqrt(lambda)) * (1.0 + std::sqrt(lambda));
}

// Positive root of v g^2 + (v - 1 - lambda) g - 1 = 0; the unstable direction
// at the saddle (0,0). Defined for every v > 0.
double launch_slope(double lambda, double v) {
  const double p = v - 1.0 - lambda;
  return (-p + std::sqrt(p * p + 4.0 * v)) / (2.0 * v);
}

struct Point {
  double phi;
  double z;
};

Point field(Point p, double lambda, double v) {
  return {p.z, -p.z + (1.0 + lambda - 2.0 * p.phi) / v * p.z + p.phi / v * (1.0 - p.phi)};
}

Point rk4_x(Point p, double dx, double lambda, double v) {
  const Point k1 = field(p, lambda, v);
  const Point p2{p.phi + 0.5 * dx * k1.phi, p.z + 0.5 * dx * k1.z};
  const Point k2 = field(p2, lambda, v);
  const Point p3{p.phi + 0.5 * dx * k2.phi, p.z + 0.5 * dx * k2.z};
  const Point k3 = field(p3, lambda, v);
  const Point p4{p.phi + dx * k3.phi, p.z + dx * k3.z};
  const Point k4 = field(p4, lambda, v);
  return {p.phi + dx / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi),
          p.z + dx / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z)};
}

}  // namespace

double WaveSolution::phi_at_x(double xq) const {
  if (xq <= x.front()) return phi.front();
  if (xq >= x.back()) return phi.back();
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  const double t = (xq - x[i - 1]) / (x[i] - x[i - 1]);
  return phi[i - 1] + t * (phi[i] - phi[i - 1]);
}

double WaveSolution::x_at_phi(double phiq) const {
  if (phiq <= phi.front()) return x.front();
  if (phiq >= phi.back()) return x.back();
  const auto it = std::upper_bound(phi.begin(), phi.end(), phiq);
  const std::size_t i = static_cast<std::size_t>(it - phi.begin());
  const double t = (phiq - phi[i - 1]) / (phi[i] - phi[i - 1]);
  return x[i - 1] + t * (x[i] - x[i - 1]);
}

std::pair<double, double> phase_rhs(double phi, double z, double lambda, double v) {
  return {z, -z + (1.0 + lambda - 2.0 * phi) / v * z + phi / v * (1.0 - phi)};
}

double origin_eigen(double lambda, double v) {
  if (!(v > 1.0 + lambda))
    throw std::invalid_argument("origin_eigen: requires v > 1 + lambda");
  return launch_slope(lambda, v);
}

EndpointEigen endpoint_eigen(double lambda, double v) {
  if (!(v > 0.0)) throw std::invalid_argument("endpoint_eigen: v must be > 0");
  const double p = 1.0 + v - lambda;
  const double disc = p * p - 4.0 * v;
  if (disc < 0.0) {
    EndpointEigen e;
    e.complex_pair = true;
    return e;
  }
  const double r = std::sqrt(disc);
  return {(p - r) / (2.0 * v), (p + r) / (2.0 * v), false};
}

WaveSolution shoot(double lambda, double v, std::optional<std::pair<double, double>> start,
                   const ShootOptions& options) {
  if (!(v > 0.0)) throw std::invalid_argument("shoot: v must be > 0");
  if (!(lambda >= 0.0)) throw std::invalid_argument("shoot: lambda must be >= 0");

  Point p;
  if (start && !(start->first == 0.0 && start->second == 0.0)) {
    p = {start->first, start->second};
    if (!(p.phi >= 0.0 && p.phi < 1.0) || !(p.z > 0.0))
      throw std::invalid_argument("shoot: interior start needs phi in [0,1), z > 0");
  } else {
    p = {options.epsilon, launch_slope(lambda, v) * options.epsilon};
  }

  WaveSolution wave;
  wave.v = v;
  wave.lambda = lambda;
  wave.mu = 1.0;

  // Near (1,0) a proper trajectory settles onto an eigendirection, so its
  // slope ratio z/(1-phi) stays of eigenvalue size; a spiral (complex pair)
  // sweeps past phi = 1 instead. The band only has to hold at 1-phi =
  // delta_end, far below any resolvable crossing height z1.
  const EndpointEigen end = endpoint_eigen(lambda, v);
  const double proper_band = 5.0 * std::max(1.0, end.complex_pair ? 1.0 : end.zeta2);

  double x = 0.0;
  wave.x.push_back(x);
  wave.phi.push_back(p.phi);
  wave.z.push_back(p.z);

  double dx = 1e-3;
  const std::size_t max_steps = 2'000'000;
  for (std::size_t it = 0; it < max_steps; ++it) {
    dx = std::min(dx, options.max_dx);
    const Point full = rk4_x(p, dx, lambda, v);
    const Point half = rk4_x(p, 0.5 * dx, lambda, v);
    const Point fine = rk4_x(half, 0.5 * dx, lambda, v);
    const double err = std::max(std::abs(fine.phi - full.phi), std::abs(fine.z - full.z)) / 15.0;
    const double tol =
        options.atol + options.rtol * std::max(std::abs(fine.phi), std::abs(fine.z));
    if (err > tol) {
      dx *= std::max(0.2, 0.9 * std::pow(tol / err, 0.2));
      continue;
    }

    if (fine.phi >= 1.0) {
      // Crossed the line phi = 1: interpolate the crossing point.
      const double frac = (1.0 - p.phi) / (fine.phi - p.phi);
      const double zc = p.z + frac * (fine.z - p.z);
      wave.x.push_back(x + frac * dx);
      wave.phi.push_back(1.0);
      wave.z.push_back(zc);
      wave.classification = WaveClass::HitsOneAbove;
      wave.z1 = zc;
      return wave;
    }

    x += dx;
    p = fine;
    wave.x.push_back(x);
    wave.phi.push_back(p.phi);
    wave.z.push_back(p.z);
    if (err > 0.0) dx *= std::min(5.0, 0.9 * std::pow(tol / err, 0.2));

    if (1.0 - p.phi <= options.delta_end && p.z <= proper_band * (1.0 - p.phi)) {
      wave.classification = WaveClass::Proper;
      return wave;
    }
    if (p.z <= options.z_min) {
      if (!end.complex_pair && 1.0 - p.phi <= 1e-4) {
        wave.classification = WaveClass::Proper;
        return wave;
      }
      wave.classification = WaveClass::FellToAxis;
      wave.phi_hit = p.phi;
      return wave;
    }
  }
  throw NonConvergence("shoot: step budget exhausted");
}

namespace {

// Classification with the launch-offset agreement check (epsilon and
// epsilon/10 must classify alike).
WaveSolution shoot_from_origin_checked(double lambda, double v) {
  ShootOptions opt;
  WaveSolution wave = shoot(lambda, v, std::nullopt, opt);
  ShootOptions finer = opt;
  finer.epsilon = opt.epsilon / 10.0;
  const WaveSolution check = shoot(lambda, v, std::nullopt, finer);
  if (check.classification != wave.classification)
    throw NonConvergence("shoot: classification sensitive to launch offset");
  return wave;
}

void anchor_x(WaveSolution& wave, double x_zero) {
  for (auto& xi : wave.x) xi -= x_zero;
}

}  // namespace

std::optional<WaveSolution> tws_original(double lambda, double mu, double v) {
  if (!(lambda > 0.0)) throw std::invalid_argument("tws_original: lambda must be > 0");
  if (!(mu > 0.0) || !(v > 0.0)) throw std::invalid_argument("tws_original: mu, v must be > 0");
  WaveSolution wave = shoot_from_origin_checked(lambda / mu, v / mu);
  if (wave.classification != WaveClass::Proper) return std::nullopt;
  wave.v = v;
  wave.lambda = lambda;
  wave.mu = mu;
  anchor_x(wave, wave.x_at_phi(0.5));
  return wave;
}

WaveSolution tws_left_boundary(double lambda, double mu, double v, double phi0) {
  if (!(lambda > 0.0)) throw std::invalid_argument("tws_left_boundary: lambda must be > 0");
  if (!(mu > 0.0)) throw std::invalid_argument("tws_left_boundary: mu must be > 0");
  const double lt = lambda / mu;
  const double vt = v / mu;
  if (!(vt > v_star_normalized(lt)))
    throw std::invalid_argument("tws_left_boundary: requires v > v*");
  if (!(phi0 > 0.0 && phi0 < 1.0))
    throw std::invalid_argument("tws_left_boundary: phi0 in (0,1)");
  const double z0 = phi0 * (1.0 - phi0 + lt) / vt;
  WaveSolution wave = shoot(lt, vt, std::make_pair(phi0, z0));
  if (wave.classification != WaveClass::Proper)
    throw Phi0TooLarge("tws_left_boundary: shoot from phi0 is not proper");
  wave.v = v;
  wave.lambda = lambda;
  wave.mu = mu;
  return wave;  // x already starts at the boundary point
}

double phi0_max_left_boundary(double lambda, double mu, double v) {
  const double lt = lambda / mu;
  const double vt = v / mu;
  if (!(vt > v_star_normalized(lt)))
    throw std::invalid_argument("phi0_max_left_boundary: requires v > v*");
  auto proper_from = [&](double phi0) {
    const double z0 = phi0 * (1.0 - phi0 + lt) / vt;
    return shoot(lt, vt, std::make_pair(phi0, z0)).classification == WaveClass::Proper;
  };
  double lo = 1e-6;
  if (!proper_from(lo)) throw NonConvergence("phi0_max_left_boundary: no proper seed");
  double hi = 1.0 - 1e-9;
  if (proper_from(hi)) return hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (proper_from(mid) ? lo : hi) = mid;
  }
  return lo;
}

WaveSolution tws_right_boundary(double lambda, double mu, double v) {
  if (!(lambda > 0.0)) throw std::invalid_argument("tws_right_boundary: lambda must be > 0");
  if (!(mu > 0.0)) throw std::invalid_argument("tws_right_boundary: mu must be > 0");
  const double lt = lambda / mu;
  const double vt = v / mu;
  if (!(vt < v_star_normalized(lt)))
    throw std::invalid_argument("tws_right_boundary: requires v < v*");
  WaveSolution wave = shoot_from_origin_checked(lt, vt);
  if (wave.classification != WaveClass::HitsOneAbove)
    throw NonConvergence("tws_right_boundary: origin shoot did not hit phi = 1");
  wave.v = v;
  wave.lambda = lambda;
  wave.mu = mu;
  anchor_x(wave, wave.x.back());
  return wave;
}

WaveSolution logistic_tws(double v, double c) {
  if (!(v > 0.0)) throw std::invalid_argument("logistic_tws: v must be > 0");
  WaveSolution wave;
  wave.v = v;
  wave.lambda = 0.0;
  wave.mu = 1.0;
  wave.classification = WaveClass::Proper;
  const double half_width = 16.0 * v;
  const std::size_t n = 4001;
  wave.x.resize(n);
  wave.phi.resize(n);
  wave.z.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -c - half_width + 2.0 * half_width * static_cast<double>(i) /
                                           static_cast<double>(n - 1);
    const double psi = 1.0 / (1.0 + std::exp(-(x + c) / v));
    wave.x[i] = x;
    wave.phi[i] = psi;
    wave.z[i] = psi * (1.0 - psi) / v;
  }
  return wave;
}

double tail_exponent_of_shape(const WaveSolution& wave) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < wave.phi.size(); ++i) {
    const double tail = 1.0 - wave.phi[i];
    if (tail < 1e-6 || tail > 1e-3) continue;
    const double y = -std::log(tail);
    sx += wave.x[i];
    sy += y;
    sxx += wave.x[i] * wave.x[i];
    sxy += wave.x[i] * y;
    ++count;
  }
  if (count < 50) throw WindowTooShort("tail fit: fewer than 50 samples in [1e-6, 1e-3]");
  const double nd = static_cast<double>(count);
  return (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
}

}  // namespace jumpsync::tws
