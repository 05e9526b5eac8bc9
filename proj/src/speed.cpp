#include "jumpsync/speed.hpp"

#include <cmath>
#include <stdexcept>

#include "jumpsync/errors.hpp"

namespace jumpsync::speed {

namespace {

void check_rates(double lambda, double mu) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
}

// Stationarity residual: lambda*zeta*L'(-zeta) + lambda*L(-zeta) - lambda + mu.
// Equals -zeta^2 v'(zeta), so it is positive left of the minimum and negative
// right of it.
double stationarity(const JumpLaw& law, double lambda, double mu, double zeta) {
  return lambda * zeta * law.laplace_deriv(-zeta) + lambda * law.laplace(-zeta) -
         lambda + mu;
}

double golden_min(const JumpLaw& law, double lambda, double mu, double a, double b) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = v_of_zeta(law, lambda, mu, x1);
  double f2 = v_of_zeta(law, lambda, mu, x2);
  while (b - a > 1e-10 * std::max(1.0, a)) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = v_of_zeta(law, lambda, mu, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = v_of_zeta(law, lambda, mu, x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double v_of_zeta(const JumpLaw& law, double lambda, double mu, double zeta) {
  check_rates(lambda, mu);
  if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be > 0");
  const double L = law.laplace(-zeta);
  if (std::isinf(L)) return kInf;
  return (lambda * L - lambda + mu) / zeta;
}

CriticalSpeed critical(const JumpLaw& law, double lambda, double mu) {
  check_rates(lambda, mu);
  if (!(lambda > 0.0)) throw std::invalid_argument("critical: lambda must be > 0");
  if (law.kind() == JumpLawKind::ExponentialMeanOne) {
    const double sl = std::sqrt(lambda);
    const double sm = std::sqrt(mu);
    return {sm / (sl + sm), (sl + sm) * (sl + sm), lambda, mu, true};
  }
  return critical_numeric(law, lambda, mu);
}

CriticalSpeed critical_numeric(const JumpLaw& law, double lambda, double mu) {
  check_rates(lambda, mu);
  if (!(lambda > 0.0)) throw std::invalid_argument("critical: lambda must be > 0");
  const double alpha = law.tail_exponent();
  if (alpha <= 0.0) throw UnboundedSpeed("tail exponent 0: v** = +infinity");

  // Bracket an interior minimum starting from zeta = min(alpha, 1)/2.
  // v -> +inf as zeta -> 0, and v(zeta) -> +inf at the right end whenever
  // L(-alpha) = inf (alpha finite) or the support is bounded (alpha = inf).
  double m = 0.5 * std::min(alpha, 1.0);
  double fm = v_of_zeta(law, lambda, mu, m);
  double a = 0.5 * m;
  double fa = v_of_zeta(law, lambda, mu, a);
  while (fa <= fm) {
    m = a;
    fm = fa;
    a *= 0.5;
    if (a < 1e-300) throw NonConvergence("critical: no left bracket");
    fa = v_of_zeta(law, lambda, mu, a);
  }
  const double right_cap = std::isinf(alpha) ? kInf : alpha;
  double b = std::min(2.0 * m, 0.5 * (m + right_cap));
  double fb = v_of_zeta(law, lambda, mu, b);
  bool at_boundary = false;
  while (fb <= fm) {
    a = m;
    fa = fm;
    m = b;
    fm = fb;
    b = std::isinf(right_cap) ? 2.0 * b : 0.5 * (b + right_cap);
    if (!std::isinf(right_cap) && right_cap - b < 1e-12 * right_cap) {
      // Monotone decreasing all the way into alpha: boundary minimizer.
      at_boundary = true;
      break;
    }
    if (b > 1e300) throw NonConvergence("critical: no right bracket");
    fb = v_of_zeta(law, lambda, mu, b);
  }
  if (at_boundary) {
    const double v_alpha = v_of_zeta(law, lambda, mu, right_cap);
    if (std::isfinite(v_alpha) && v_alpha <= fm)
      return {right_cap, v_alpha, lambda, mu, false};
    at_boundary = false;  // L(-alpha) infinite after all; fall through
  }

  double zeta = golden_min(law, lambda, mu, a, b);

  // Refine on the stationarity equation when the residual changes sign
  // around the golden-section estimate.
  double lo = std::max(a, zeta * 0.999);
  double hi = std::min(b, zeta * 1.001);
  double glo = stationarity(law, lambda, mu, lo);
  double ghi = stationarity(law, lambda, mu, hi);
  if (glo > 0.0 && ghi < 0.0) {
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, lo); ++it) {
      const double mid = 0.5 * (lo + hi);
      (stationarity(law, lambda, mu, mid) > 0.0 ? lo : hi) = mid;
    }
    zeta = 0.5 * (lo + hi);
  }
  return {zeta, v_of_zeta(law, lambda, mu, zeta), lambda, mu, true};
}

double zeta_of_v(const JumpLaw& law, double lambda, double mu, double v) {
  check_rates(lambda, mu);
  const CriticalSpeed cs = critical(law, lambda, mu);
  if (v < cs.v_star * (1.0 - 1e-12))
    throw std::invalid_argument("zeta_of_v: v below v**, no real branch");
  if (v <= cs.v_star) return cs.zeta_star;

  if (law.kind() == JumpLawKind::ExponentialMeanOne) {
    // Closed form on the mu-normalized curve; zeta is not rescaled.
    const double lt = lambda / mu;
    const double vt = v / mu;
    const double p = 1.0 + vt - lt;
    const double disc = std::max(0.0, p * p - 4.0 * vt);
    return (p - std::sqrt(disc)) / (2.0 * vt);
  }

  // Bisect the decreasing branch (0, zeta**]: v(zeta) falls from +inf to v**.
  double lo = cs.zeta_star * 1e-16;
  double hi = cs.zeta_star;
  while (v_of_zeta(law, lambda, mu, lo) < v) {
    lo *= 0.5;
    if (lo < 1e-300) throw NonConvergence("zeta_of_v: no bracket");
  }
  for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (v_of_zeta(law, lambda, mu, mid) > v ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace jumpsync::speed
