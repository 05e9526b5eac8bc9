#pragma once

#include <optional>
#include <vector>

namespace jumpsync::tws {

enum class WaveClass { Proper, HitsOneAbove, FellToAxis };

// A phase-plane trajectory of the exponential-jump wave ODE, sampled along
// increasing phi with its x-parameterization (defined up to shift; the
// anchoring convention depends on the producing operation). z = dphi/dx.
struct WaveSolution {
  std::vector<double> x;
  std::vector<double> phi;
  std::vector<double> z;
  WaveClass classification = WaveClass::Proper;
  double z1 = 0.0;       // terminal z for HitsOneAbove
  double phi_hit = 0.0;  // phi where the trajectory fell to the axis
  double v = 0.0;
  double lambda = 0.0;
  double mu = 1.0;

  // phi (resp. x) at a given x (resp. phi), linear between samples.
  double phi_at_x(double xq) const;
  double x_at_phi(double phiq) const;
};

struct EndpointEigen {
  double zeta1 = 0.0;  // decay rates at (1,0); 0 < zeta1 <= zeta2 when real
  double zeta2 = 0.0;
  bool complex_pair = false;
};

// Right-hand side of the phase system phi' = z,
// z' = -z + ((1 + lambda - 2 phi)/v) z + (phi/v)(1 - phi), mu = 1 form.
std::pair<double, double> phase_rhs(double phi, double z, double lambda, double v);

// Outgoing eigen-slope gamma at (0,0); requires v > 1 + lambda.
double origin_eigen(double lambda, double v);

// Decay rates at (1,0): roots of v zeta^2 - (1 + v - lambda) zeta + 1 = 0,
// the complex pair exactly when v < v* = (1 + sqrt(lambda))^2.
EndpointEigen endpoint_eigen(double lambda, double v);

struct ShootOptions {
  double epsilon = 1e-6;     // launch offset from (0,0) along the eigen-slope
  double delta_end = 1e-11;  // endpoint band at phi = 1
  double z_min = 1e-13;      // axis threshold
  double rtol = 1e-10;
  double atol = 1e-16;
  double max_dx = 0.1;       // keeps the sampled shape dense for tail fits
};

// Integrates the phase flow adaptively in x from (0,0) (launched at
// (eps, gamma eps)) or from an explicit interior start, classifying the
// trajectory by its endpoint approach. Parameters are already mu-normalized.
WaveSolution shoot(double lambda, double v,
                   std::optional<std::pair<double, double>> start = std::nullopt,
                   const ShootOptions& options = {});

// TWS of the original system: the Proper shoot from the origin, which exists
// iff v >= v* = (sqrt(lambda) + sqrt(mu))^2; absent otherwise. x is anchored
// at phi = 1/2.
std::optional<WaveSolution> tws_original(double lambda, double mu, double v);

// TWS with a moving left boundary (v > v*): launched from
// (phi0, phi0 (1 - phi0 + lambda)/v), x = 0 at the boundary point. Throws
// Phi0TooLarge when the shoot is not Proper.
WaveSolution tws_left_boundary(double lambda, double mu, double v, double phi0);

// Largest usable phi0 for the left-boundary wave, by bisection on the
// Proper/non-Proper classification edge.
double phi0_max_left_boundary(double lambda, double mu, double v);

// TWS with a moving right boundary (v < v*): the origin shoot that hits
// phi = 1 at z1 > 0; x = 0 at the boundary (terminal) point.
WaveSolution tws_right_boundary(double lambda, double mu, double v);

// The lambda = 0 logistic wave psi_x = 1 / (1 + e^{-(x + c)/v}) on a grid
// wide enough for tail fits; satisfies v psi' = psi (1 - psi) exactly.
WaveSolution logistic_tws(double v, double c);

// Least-squares slope of -log(1 - phi) against x over the window where
// 1 - phi is in [1e-6, 1e-3]; throws WindowTooShort below 50 samples.
double tail_exponent_of_shape(const WaveSolution& wave);

}  // namespace jumpsync::tws
