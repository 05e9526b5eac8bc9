#include "jumpsync/grid_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jumpsync::mfl {

double GridCdf::value_at_local(double x) const {
  if (x <= x0) return values.front();
  const double u = (x - x0) / h;
  const auto k = static_cast<std::size_t>(u);
  if (k + 1 >= values.size()) return values.back();
  const double frac = u - static_cast<double>(k);
  return values[k] + frac * (values[k + 1] - values[k]);
}

void GridCdf::validate(double mass_tolerance) const {
  if (values.size() < 2) throw std::invalid_argument("GridCdf: need at least 2 nodes");
  if (!(h > 0.0)) throw std::invalid_argument("GridCdf: h must be > 0");
  double prev = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double v = values[k];
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12))
      throw std::invalid_argument("GridCdf: value outside [0,1]");
    if (k > 0 && v < prev - 1e-12)
      throw std::invalid_argument("GridCdf: values not nondecreasing");
    prev = std::max(prev, v);
  }
  if (values.back() < 1.0 - mass_tolerance)
    throw std::invalid_argument("GridCdf: right edge misses mass (window too small)");
}

GridCdf make_grid(double h, double x_left, double x_right) {
  if (!(h > 0.0) || !(x_right > x_left)) throw std::invalid_argument("make_grid: bad window");
  const auto lo = static_cast<long long>(std::floor(x_left / h + 1e-9));
  const auto hi = static_cast<long long>(std::ceil(x_right / h - 1e-9));
  GridCdf f;
  f.h = h;
  f.x0 = static_cast<double>(lo) * h;
  f.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  return f;
}

GridCdf make_dirac(double h, double x_left, double x_right, double at) {
  GridCdf f = make_grid(h, x_left, x_right);
  const double ku = (at - f.x0) / h;
  const auto k = static_cast<long long>(std::llround(ku));
  if (k < 0 || k >= static_cast<long long>(f.size()) || std::abs(ku - static_cast<double>(k)) > 1e-9)
    throw std::invalid_argument("make_dirac: step location must be a grid node");
  for (std::size_t j = static_cast<std::size_t>(k); j < f.size(); ++j) f.values[j] = 1.0;
  return f;
}

GridCdf make_from_function(double h, double x_left, double x_right,
                           const std::function<double(double)>& cdf) {
  GridCdf f = make_grid(h, x_left, x_right);
  double run = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    run = std::max(run, std::clamp(cdf(f.node_local(k)), 0.0, 1.0));
    f.values[k] = run;
  }
  return f;
}

GridCdf make_from_samples(double h, double x_left, double x_right,
                          const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("make_from_samples: need >= 2 samples");
  return make_from_function(h, x_left, x_right, [&](double x) {
    if (x <= xs.front()) return x < xs.front() ? 0.0 : ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
  });
}

double quantile(const GridCdf& f, double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("quantile: nu in (0,1)");
  const auto it = std::lower_bound(f.values.begin(), f.values.end(), nu);
  if (it == f.values.end()) return f.right_abs();
  const std::size_t k = static_cast<std::size_t>(it - f.values.begin());
  if (k == 0) return f.left_abs();
  const double lo = f.values[k - 1];
  const double hi = f.values[k];
  const double frac = hi > lo ? (nu - lo) / (hi - lo) : 1.0;
  return f.node_abs(k - 1) + frac * f.h;
}

GridCdf freeze_transform(const GridCdf& f, double nu) {
  if (!(nu >= 0.0 && nu < 1.0)) throw std::invalid_argument("freeze_transform: nu in [0,1)");
  GridCdf g = f;
  for (auto& v : g.values) v = nu + (1.0 - nu) * v;
  return g;
}

}  // namespace jumpsync::mfl
