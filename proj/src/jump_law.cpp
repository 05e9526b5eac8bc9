#include "jumpsync/jump_law.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jumpsync {

namespace {

// (1 - e^{-s d}) / s, stable for small |s d|; equals d at s = 0.
double one_minus_exp_over(double s, double d) {
  if (s == 0.0) return d;
  return -std::expm1(-s * d) / s;
}

}  // namespace

JumpLaw JumpLaw::exponential_mean_one() { return JumpLaw(JumpLawKind::ExponentialMeanOne); }
JumpLaw JumpLaw::uniform_zero_two() { return JumpLaw(JumpLawKind::UniformZeroTwo); }
JumpLaw JumpLaw::deterministic_one() { return JumpLaw(JumpLawKind::DeterministicOne); }

JumpLaw JumpLaw::empirical(std::vector<CdfPoint> points) {
  if (points.size() < 1) throw std::invalid_argument("empirical law: no knots");
  double px = 0.0, pf = 0.0;
  for (const auto& p : points) {
    if (!(p.x >= 0.0)) throw std::invalid_argument("empirical law: knot x < 0");
    if (p.x < px) throw std::invalid_argument("empirical law: x not nondecreasing");
    if (p.cdf < pf - 1e-15 || p.cdf > 1.0 + 1e-15)
      throw std::invalid_argument("empirical law: cdf not nondecreasing into [0,1]");
    px = p.x;
    pf = std::max(pf, p.cdf);
  }
  if (std::abs(points.back().cdf - 1.0) > 1e-12)
    throw std::invalid_argument("empirical law: last knot cdf must be 1");
  points.back().cdf = 1.0;

  JumpLaw law(JumpLawKind::EmpiricalCdf);
  law.knots_ = std::move(points);

  // Cumulative \int_0^x (1-J); J = 0 below the first knot.
  law.ccdf_int_.resize(law.knots_.size());
  law.ccdf_int_[0] = law.knots_[0].x;
  for (std::size_t i = 1; i < law.knots_.size(); ++i) {
    const auto& a = law.knots_[i - 1];
    const auto& b = law.knots_[i];
    law.ccdf_int_[i] =
        law.ccdf_int_[i - 1] + 0.5 * ((1.0 - a.cdf) + (1.0 - b.cdf)) * (b.x - a.x);
  }
  const double m = law.ccdf_int_.back();
  if (std::abs(m - 1.0) > 1e-6)
    throw std::invalid_argument("empirical law: mean " + std::to_string(m) +
                                " not within 1e-6 of 1");
  return law;
}

JumpLaw JumpLaw::parse(std::string_view name) {
  if (name == "exp") return exponential_mean_one();
  if (name == "uniform02") return uniform_zero_two();
  if (name == "det1") return deterministic_one();
  throw std::invalid_argument("unknown jump law '" + std::string(name) +
                              "' (expected exp | uniform02 | det1)");
}

std::string JumpLaw::name() const {
  switch (kind_) {
    case JumpLawKind::ExponentialMeanOne: return "exp";
    case JumpLawKind::UniformZeroTwo: return "uniform02";
    case JumpLawKind::DeterministicOne: return "det1";
    case JumpLawKind::EmpiricalCdf: return "empirical";
  }
  return "?";
}

double JumpLaw::cdf(double x) const {
  switch (kind_) {
    case JumpLawKind::ExponentialMeanOne:
      return x <= 0.0 ? 0.0 : -std::expm1(-x);
    case JumpLawKind::UniformZeroTwo:
      return std::clamp(x / 2.0, 0.0, 1.0);
    case JumpLawKind::DeterministicOne:
      return x >= 1.0 ? 1.0 : 0.0;
    case JumpLawKind::EmpiricalCdf: {
      if (x < knots_.front().x) return 0.0;
      if (x >= knots_.back().x) return 1.0;
      // Last knot with knot.x <= x keeps right-continuity across atoms.
      auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                 [](double v, const CdfPoint& p) { return v < p.x; });
      const auto& b = *it;
      const auto& a = *(it - 1);
      if (b.x == a.x || x == a.x) return a.cdf;
      return a.cdf + (b.cdf - a.cdf) * (x - a.x) / (b.x - a.x);
    }
  }
  return 0.0;
}

double JumpLaw::sample(Rng& rng) const {
  const double u = rng.uniform01();
  switch (kind_) {
    case JumpLawKind::ExponentialMeanOne:
      return -std::log1p(-u);
    case JumpLawKind::UniformZeroTwo:
      return 2.0 * u;
    case JumpLawKind::DeterministicOne:
      return 1.0;
    case JumpLawKind::EmpiricalCdf: {
      // Inverse CDF with linear interpolation; exact for piecewise-linear J.
      if (u <= knots_.front().cdf) return knots_.front().x;
      auto it = std::lower_bound(knots_.begin(), knots_.end(), u,
                                 [](const CdfPoint& p, double v) { return p.cdf < v; });
      const auto& b = *it;
      const auto& a = *(it - 1);
      if (b.cdf == a.cdf) return b.x;
      return a.x + (b.x - a.x) * (u - a.cdf) / (b.cdf - a.cdf);
    }
  }
  return 0.0;
}

double JumpLaw::laplace(double s) const {
  switch (kind_) {
    case JumpLawKind::ExponentialMeanOne:
      return s > -1.0 ? 1.0 / (1.0 + s) : kInf;
    case JumpLawKind::UniformZeroTwo:
      return one_minus_exp_over(s, 2.0) / 2.0;
    case JumpLawKind::DeterministicOne:
      return std::exp(-s);
    case JumpLawKind::EmpiricalCdf: {
      double total = knots_.front().cdf * std::exp(-s * knots_.front().x);
      for (std::size_t i = 1; i < knots_.size(); ++i) {
        const auto& a = knots_[i - 1];
        const auto& b = knots_[i];
        const double df = b.cdf - a.cdf;
        if (df <= 0.0) continue;
        if (b.x == a.x) {
          total += df * std::exp(-s * b.x);
        } else {
          total += df / (b.x - a.x) * std::exp(-s * a.x) * one_minus_exp_over(s, b.x - a.x);
        }
      }
      return total;
    }
  }
  return 0.0;
}

double JumpLaw::laplace_deriv(double s) const {
  switch (kind_) {
    case JumpLawKind::ExponentialMeanOne:
      return s > -1.0 ? -1.0 / ((1.0 + s) * (1.0 + s)) : -kInf;
    case JumpLawKind::UniformZeroTwo: {
      if (std::abs(s) < 1e-3) {
        // Series around 0; the closed form cancels badly there.
        return -1.0 + s * (4.0 / 3.0 + s * (-1.0 + s * (8.0 / 15.0 - s * (2.0 / 9.0))));
      }
      const double e = std::exp(-2.0 * s);
      return (2.0 * s * e - 1.0 + e) / (2.0 * s * s);
    }
    case JumpLawKind::DeterministicOne:
      return -std::exp(-s);
    case JumpLawKind::EmpiricalCdf: {
      const double hstep = 1e-6;
      return (laplace(s + hstep) - laplace(s - hstep)) / (2.0 * hstep);
    }
  }
  return 0.0;
}

double JumpLaw::tail_exponent() const {
  return kind_ == JumpLawKind::ExponentialMeanOne ? 1.0 : kInf;
}

double JumpLaw::mean() const {
  if (kind_ == JumpLawKind::EmpiricalCdf) return ccdf_int_.back();
  return 1.0;
}

double JumpLaw::support_upper() const {
  switch (kind_) {
    case JumpLawKind::ExponentialMeanOne: return kInf;
    case JumpLawKind::UniformZeroTwo: return 2.0;
    case JumpLawKind::DeterministicOne: return 1.0;
    case JumpLawKind::EmpiricalCdf: return knots_.back().x;
  }
  return kInf;
}

double JumpLaw::ccdf_integral(double x) const {
  if (x <= 0.0) return x;
  switch (kind_) {
    case JumpLawKind::ExponentialMeanOne:
      return -std::expm1(-x);
    case JumpLawKind::UniformZeroTwo:
      return x >= 2.0 ? 1.0 : x - x * x / 4.0;
    case JumpLawKind::DeterministicOne:
      return std::min(x, 1.0);
    case JumpLawKind::EmpiricalCdf: {
      if (x <= knots_.front().x) return x;
      if (x >= knots_.back().x) return ccdf_int_.back();
      auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                 [](double v, const CdfPoint& p) { return v < p.x; });
      const std::size_t i = static_cast<std::size_t>(it - knots_.begin());
      const auto& a = knots_[i - 1];
      const auto& b = knots_[i];
      const double d = x - a.x;
      if (b.x == a.x) return ccdf_int_[i - 1];
      const double rho = (b.cdf - a.cdf) / (b.x - a.x);
      return ccdf_int_[i - 1] + (1.0 - a.cdf) * d - 0.5 * rho * d * d;
    }
  }
  return 0.0;
}

}  // namespace jumpsync
