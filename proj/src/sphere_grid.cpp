/* Apache License, Version 2.0 */
#include "gmink/sphere_grid.hpp"

#include <algorithm>
#include <numbers>

namespace gmink {

namespace {
constexpr double kPi = std::numbers::pi;
}

SphericalGrid SphericalGrid::build(int dim, int resolution) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("SphericalGrid: dim must be 2 or 3");
  if (resolution < 4)
    throw std::invalid_argument("SphericalGrid: resolution must be at least 4");

  SphericalGrid grid;
  grid.dim = dim;
  grid.nodes.reserve(resolution);
  grid.weights.reserve(resolution);

  if (dim == 2) {
    const double w = 2.0 * kPi / resolution;
    for (int k = 0; k < resolution; ++k) {
      const double t = 2.0 * kPi * k / resolution;
      grid.nodes.emplace_back(std::cos(t), std::sin(t), 0.0);
      grid.weights.push_back(w);
    }
  } else {
    // Fibonacci spiral, equal weights.
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const double w = 4.0 * kPi / resolution;
    for (int k = 0; k < resolution; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / resolution;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double t = 2.0 * kPi * k / golden;
      grid.nodes.emplace_back(r * std::cos(t), r * std::sin(t), z);
      grid.weights.push_back(w);
    }
  }
  return grid;
}

double SphericalGrid::surface_measure() const {
  return dim == 2 ? 2.0 * kPi : 4.0 * kPi;
}

void SphericalGrid::validate(double node_tol, double sum_tol) const {
  if (nodes.size() != weights.size())
    throw std::logic_error("SphericalGrid: node/weight size mismatch");
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (std::abs(nodes[k].norm() - 1.0) > node_tol)
      throw std::logic_error("SphericalGrid: node is not a unit vector");
    if (dim == 2 && nodes[k].z() != 0.0)
      throw std::logic_error("SphericalGrid: planar node has a z component");
    if (!(weights[k] > 0.0))
      throw std::logic_error("SphericalGrid: weights must be strictly positive");
    sum += weights[k];
  }
  if (std::abs(sum - surface_measure()) > sum_tol)
    throw std::logic_error("SphericalGrid: weights do not sum to the sphere measure");
  if (in_closed_hemisphere(dim, nodes))
    throw std::logic_error("SphericalGrid: nodes are contained in a closed hemisphere");
}

bool in_closed_hemisphere(int dim, const std::vector<Vec3>& directions, double tol) {
  if (directions.empty()) return true;
  if (dim == 2) {
    // Contained in a closed half-plane iff some angular gap reaches pi.
    std::vector<double> angles;
    angles.reserve(directions.size());
    for (const Vec3& u : directions) angles.push_back(std::atan2(u.y(), u.x()));
    std::sort(angles.begin(), angles.end());
    double max_gap = 2.0 * kPi - (angles.back() - angles.front());
    for (std::size_t k = 1; k < angles.size(); ++k)
      max_gap = std::max(max_gap, angles[k] - angles[k - 1]);
    return max_gap >= kPi - tol;
  }
  // Probe candidate poles: a Fibonacci cover plus the negated directions.
  std::vector<Vec3> probes;
  const SphericalGrid cover = SphericalGrid::build(3, 512);
  probes.insert(probes.end(), cover.nodes.begin(), cover.nodes.end());
  for (const Vec3& u : directions) probes.push_back(-u);
  for (const Vec3& v : probes) {
    bool all_below = true;
    for (const Vec3& u : directions) {
      if (u.dot(v) > tol) {
        all_below = false;
        break;
      }
    }
    if (all_below) return true;
  }
  return false;
}

}  // namespace gmink
