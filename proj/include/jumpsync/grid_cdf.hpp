#pragma once

#include <functional>
#include <vector>

namespace jumpsync::mfl {

// A CDF sampled on a uniform window of nodes. Local node k sits at
// x0 + k*h; its absolute coordinate adds `offset`, which accumulates window
// shifts so re-centering never loses absolute positions. Between nodes the
// distribution is read as mass spread uniformly over each cell (x_{k-1},
// x_k]; everything at or below the first node is an atom there.
struct GridCdf {
  double x0 = 0.0;
  double h = 0.0;
  std::vector<double> values;
  double offset = 0.0;
  double time = 0.0;

  std::size_t size() const { return values.size(); }
  double node_local(std::size_t k) const { return x0 + static_cast<double>(k) * h; }
  double node_abs(std::size_t k) const { return node_local(k) + offset; }
  double left_abs() const { return x0 + offset; }
  double right_abs() const { return node_abs(values.size() - 1); }

  // Linear interpolation in local coordinates, clamped at the window edges.
  double value_at_local(double x) const;
  double value_at_abs(double x) const { return value_at_local(x - offset); }

  // Throws std::invalid_argument when the CDF invariants fail: values must be
  // nondecreasing within 1e-12, inside [0,1], and capture mass at the right
  // edge (values.back() >= 1 - mass_tolerance).
  void validate(double mass_tolerance = 1e-6) const;
};

// Window snapped to multiples of h so that 0 is a node whenever
// x_left < 0 <= x_right.
GridCdf make_grid(double h, double x_left, double x_right);

// The Dirac state: an exact step 0 -> 1 at the node at coordinate `at`
// (which must land on a node of the snapped window).
GridCdf make_dirac(double h, double x_left, double x_right, double at = 0.0);

// Samples a CDF-valued function at the nodes, clamped to [0,1] and made
// nondecreasing.
GridCdf make_from_function(double h, double x_left, double x_right,
                           const std::function<double(double)>& cdf);

// Monotone linear interpolation through sample points (xs, ys); 0 left of the
// first sample, carried right of the last.
GridCdf make_from_samples(double h, double x_left, double x_right,
                          const std::vector<double>& xs, const std::vector<double>& ys);

// nu-quantile in absolute coordinates: linear interpolation between the
// bracketing nodes.
double quantile(const GridCdf& f, double nu);

// The frozen-fraction map nu + (1 - nu) f, pointwise.
GridCdf freeze_transform(const GridCdf& f, double nu);

}  // namespace jumpsync::mfl
