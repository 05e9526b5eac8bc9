#pragma once

#include <vector>

#include "jumpsync/jump_law.hpp"

namespace jumpsync {

// Solution of max v** subject to a lambda + b mu = 1.
struct TradeoffResult {
  double lambda_opt = 0.0;
  double mu_opt = 0.0;
  double v_opt = 0.0;
  double a = 0.0;
  double b = 0.0;
  // False when the 100-point feasibility sweep contradicts unimodality of
  // v** along the constraint (the optimum reported is still the sweep-best).
  bool unimodal_verified = true;
};

struct TradeoffSweepPoint {
  double lambda;
  double mu;
  double v_star;
};

// Exponential law: closed form lambda = 1/(a + a^2/b), mu = 1/(b + b^2/a).
// Other laws: golden-section on lambda in (0, 1/a) with mu = (1 - a lambda)/b,
// cross-checked against a 100-point sweep. Propagates UnboundedSpeed.
TradeoffResult optimize_tradeoff(const JumpLaw& law, double a, double b,
                                 std::vector<TradeoffSweepPoint>* sweep = nullptr);

}  // namespace jumpsync
