#pragma once

#include "jumpsync/jump_law.hpp"

namespace jumpsync::speed {

// Location and value of the speed-curve minimum, in the original (lambda, mu)
// parameterization. `interior` is false when the minimizer sits at the tail
// exponent alpha itself (possible only when L(-alpha) is finite; never the
// case for the built-in laws) -- flagged rather than asserted.
struct CriticalSpeed {
  double zeta_star;
  double v_star;
  double lambda;
  double mu;
  bool interior;
};

// Speed curve v(zeta) = (1/zeta) [lambda L(-zeta) - lambda + mu].
// Returns +infinity where L(-zeta) diverges. Requires zeta > 0, lambda >= 0,
// mu > 0.
double v_of_zeta(const JumpLaw& law, double lambda, double mu, double zeta);

// Minimum of v(zeta) over (0, alpha]. Closed form for the exponential law:
// zeta** = sqrt(mu)/(sqrt(lambda)+sqrt(mu)), v** = (sqrt(lambda)+sqrt(mu))^2.
// Other laws are minimized numerically (bracket + golden section, refined by
// root-finding on the stationarity equation). Throws UnboundedSpeed if the
// law's tail exponent is 0.
CriticalSpeed critical(const JumpLaw& law, double lambda, double mu);

// The numeric minimizer regardless of law; the closed form and this path
// agree to 1e-8 relative for the exponential law.
CriticalSpeed critical_numeric(const JumpLaw& law, double lambda, double mu);

// Inverse of the decreasing branch: the unique zeta in (0, zeta**] with
// v(zeta) = v. Requires v >= v**.
double zeta_of_v(const JumpLaw& law, double lambda, double mu, double v);

}  // namespace jumpsync::speed
