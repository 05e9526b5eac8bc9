#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "jumpsync/rng.hpp"

namespace jumpsync {

enum class JumpLawKind { ExponentialMeanOne, UniformZeroTwo, DeterministicOne, EmpiricalCdf };

// One knot of a tabulated CDF: J(x) = cdf, piecewise linear between knots.
// Two knots sharing an x encode an atom.
struct CdfPoint {
  double x;
  double cdf;
};

// A jump-size distribution, normalized to mean 1. Immutable after
// construction; safe to share across threads. Random state is always owned
// by the caller and passed in explicitly.
class JumpLaw {
 public:
  static JumpLaw exponential_mean_one();
  static JumpLaw uniform_zero_two();
  static JumpLaw deterministic_one();

  // Piecewise-linear CDF through the given knots. Requires x >= 0
  // nondecreasing, cdf nondecreasing into [0,1] ending at exactly 1, and a
  // mean within 1e-6 of 1. Throws std::invalid_argument otherwise.
  static JumpLaw empirical(std::vector<CdfPoint> points);

  // "exp" | "uniform02" | "det1" (the config-file shorthand).
  static JumpLaw parse(std::string_view name);

  JumpLawKind kind() const { return kind_; }
  std::string name() const;

  // CDF J(x); right-continuous, J(x)=0 for x < 0.
  double cdf(double x) const;
  double ccdf(double x) const { return 1.0 - cdf(x); }

  // Inverse-CDF draw; identical seeds give identical sequences.
  double sample(Rng& rng) const;

  // Laplace transform L(s) = \int e^{-sx} dJ(x). Returns +infinity exactly
  // where the transform diverges (s < -alpha, or s = -alpha when L(-alpha)
  // is infinite). L(0) = 1.
  double laplace(double s) const;

  // dL/ds where L is finite. Analytic for the built-in variants, central
  // finite difference (step 1e-6) for EmpiricalCdf.
  double laplace_deriv(double s) const;

  // Tail exponent alpha = sup{zeta >= 0 : L(-zeta) < inf}; +infinity for
  // bounded support.
  double tail_exponent() const;

  double mean() const;

  // Smallest m with J(m) = 1; +infinity for the exponential law.
  double support_upper() const;

  // \int_0^x (1 - J(u)) du, exact per variant. Equals mean() for large x.
  double ccdf_integral(double x) const;

 private:
  explicit JumpLaw(JumpLawKind kind) : kind_(kind) {}

  JumpLawKind kind_;
  std::vector<CdfPoint> knots_;       // EmpiricalCdf only
  std::vector<double> ccdf_int_;      // cumulative \int (1-J) at knots_
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace jumpsync
