#include "jumpsync/optimize.hpp"

#include <cmath>
#include <stdexcept>

#include "jumpsync/speed.hpp"

namespace jumpsync {

TradeoffResult optimize_tradeoff(const JumpLaw& law, double a, double b,
                                 std::vector<TradeoffSweepPoint>* sweep) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("optimize: a, b must be > 0");

  TradeoffResult result;
  result.a = a;
  result.b = b;

  auto objective = [&](double lambda) {
    const double mu = (1.0 - a * lambda) / b;
    return speed::critical(law, lambda, mu).v_star;
  };

  if (sweep) {
    sweep->clear();
    for (int i = 1; i <= 100; ++i) {
      const double lambda = static_cast<double>(i) / 101.0 / a;
      sweep->push_back({lambda, (1.0 - a * lambda) / b, objective(lambda)});
    }
  }

  if (law.kind() == JumpLawKind::ExponentialMeanOne) {
    result.lambda_opt = 1.0 / (a + a * a / b);
    result.mu_opt = 1.0 / (b + b * b / a);
    const double sl = std::sqrt(result.lambda_opt), sm = std::sqrt(result.mu_opt);
    result.v_opt = (sl + sm) * (sl + sm);
    return result;
  }

  // Sweep bracket, then golden section inside the best bin.
  const int points = 100;
  double best_l = 0.0, best_v = -1.0;
  int best_i = 1;
  std::vector<double> vals(points + 1);
  for (int i = 1; i <= points; ++i) {
    const double lambda = static_cast<double>(i) / (points + 1) / a;
    vals[i] = objective(lambda);
    if (vals[i] > best_v) {
      best_v = vals[i];
      best_l = lambda;
      best_i = i;
    }
  }
  int rises = 0;
  for (int i = 2; i <= points; ++i) {
    if (vals[i] > vals[i - 1] + 1e-12 && i > best_i) ++rises;
  }
  if (rises > 0) result.unimodal_verified = false;

  double lo = std::max(1e-12, best_l - 1.0 / ((points + 1) * a));
  double hi = std::min((1.0 - 1e-12) / a, best_l + 1.0 / ((points + 1) * a));
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  while (hi - lo > 1e-12 / a) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = objective(x2);
    }
  }
  result.lambda_opt = 0.5 * (lo + hi);
  result.mu_opt = (1.0 - a * result.lambda_opt) / b;
  result.v_opt = objective(result.lambda_opt);
  if (result.v_opt < best_v - 1e-6) {
    // Never report a silently wrong optimum: fall back to the sweep best.
    result.unimodal_verified = false;
    result.lambda_opt = best_l;
    result.mu_opt = (1.0 - a * best_l) / b;
    result.v_opt = best_v;
  }
  return result;
}

}  // namespace jumpsync
