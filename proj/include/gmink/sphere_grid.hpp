/* Apache License, Version 2.0 */
#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gmink/parallel.hpp"

namespace gmink {

using Vec3 = Eigen::Vector3d;

/// Direction set with quadrature weights on S^{n-1}, n = 2 or 3.
/// n = 2 stores (cos t, sin t, 0); every integral in the library is a
/// weighted sum over these nodes.
struct SphericalGrid {
  int dim = 2;
  std::vector<Vec3> nodes;
  std::vector<double> weights;

  /// n = 2: `resolution` equally spaced angles, uniform weights 2pi/N.
  /// n = 3: Fibonacci spiral with `resolution` points, uniform weights 4pi/N.
  /// Deterministic for fixed arguments. Requires dim in {2,3}, resolution >= 4.
  static SphericalGrid build(int dim, int resolution);

  std::size_t size() const { return nodes.size(); }

  /// 2pi for n = 2, 4pi for n = 3.
  double surface_measure() const;

  /// Checks unit nodes, positive weights, weight sum, and the hemisphere
  /// condition; throws std::logic_error on violation.
  void validate(double node_tol = 1e-12, double sum_tol = 1e-9) const;
};

/// True if all directions fit in some closed hemisphere {x : x.v <= 0}.
/// Exact for n = 2 (angular gap test); probe-based for n = 3.
bool in_closed_hemisphere(int dim, const std::vector<Vec3>& directions,
                          double tol = 1e-12);

namespace detail {

template <class F>
std::vector<double> evaluate_on_grid(const SphericalGrid& grid, F&& f) {
  std::vector<double> values(grid.size());
  parallel_for(0, static_cast<std::ptrdiff_t>(grid.size()),
               [&](std::ptrdiff_t k) { values[k] = f(grid.nodes[k]); });
  return values;
}

}  // namespace detail

/// Sum of w_k f(u_k); throws std::domain_error if f is non-finite at a node.
template <class F>
double integrate(const SphericalGrid& grid, F&& f) {
  const std::vector<double> values = detail::evaluate_on_grid(grid, f);
  for (double v : values)
    if (!std::isfinite(v))
      throw std::domain_error("integrate: non-finite integrand value at a grid node");
  return parallel_sum(static_cast<std::ptrdiff_t>(grid.size()),
                      [&](std::ptrdiff_t k) { return grid.weights[k] * values[k]; });
}

namespace reference {

/// Serial reference for integrate(): one plain accumulation loop.
template <class F>
double integrate(const SphericalGrid& grid, F&& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v = f(grid.nodes[k]);
    if (!std::isfinite(v))
      throw std::domain_error("integrate: non-finite integrand value at a grid node");
    s += grid.weights[k] * v;
  }
  return s;
}

}  // namespace reference
}  // namespace gmink
