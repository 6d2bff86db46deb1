/* Apache License, Version 2.0 */
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gmink/sphere_grid.hpp"

namespace gmink {

/// One facet of a Polytope. For n = 2 the vertex list holds the two edge
/// endpoints in counterclockwise order; for n = 3 it is the boundary polygon
/// ordered counterclockwise as seen from outside. Redundant constraints keep
/// an empty vertex list and zero measure.
struct Facet {
  std::vector<Vec3> vertices;
  bool redundant = true;
  double measure = 0.0;  // edge length (n = 2) or polygon area (n = 3)
};

/// Convex polytope given as an intersection of half-spaces
/// {x : x . u_i <= h_i} with unit normals u_i and positive support numbers
/// h_i, together with derived facet geometry. Facets are index-aligned with
/// the input normals; redundant constraints are flagged, never dropped.
class Polytope {
 public:
  Polytope() = default;

  /// Intersects the half-spaces and computes facet geometry.
  /// Requires: dim in {2,3}, unit normals not contained in a closed
  /// hemisphere, all values > 0. Throws std::invalid_argument /
  /// std::domain_error otherwise.
  static Polytope wulff_shape(int dim, std::vector<Vec3> normals,
                              std::vector<double> values);

  bool empty() const { return normals_.empty(); }
  int dim() const { return dim_; }
  std::size_t facet_count() const { return normals_.size(); }
  const std::vector<Vec3>& normals() const { return normals_; }
  const std::vector<double>& support_numbers() const { return support_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Vec3>& vertices() const { return vertices_; }

  /// h_K(u) = max over vertices of u . v; u need not be unit.
  double support(const Vec3& u) const;

  /// rho_K(u) = min over facets with u . u_i > 0 of h_i / (u . u_i).
  /// Requires u unit and the origin interior.
  double radial(const Vec3& u) const;

  /// Polar body K* = {x : x . y <= 1 for all y in K}.
  Polytope polar() const;

  /// (max rho over the body, attaining unit direction); realized at a
  /// vertex, so the bound K within R B_n is exact.
  std::pair<double, Vec3> max_radial() const;

  /// Smallest support number among non-redundant facets.
  double min_support_number() const;

  std::size_t redundant_count() const;

 private:
  int dim_ = 0;
  std::vector<Vec3> normals_;
  std::vector<double> support_;
  std::vector<Facet> facets_;
  std::vector<Vec3> vertices_;
};

/// Values of a support function sampled on a grid (n = 2 representation of a
/// smooth body). Construction checks positivity and that the Wulff shape of
/// the samples re-evaluates to the samples, which fails for non-support
/// inputs.
struct SupportFunction {
  SphericalGrid grid;
  std::vector<double> values;
  double wulff_defect = 0.0;

  static SupportFunction create(SphericalGrid grid, std::vector<double> values,
                                double tol = 1e-8);
};

/// Radial function samples of a body on a grid.
struct RadialFunction {
  SphericalGrid grid;
  std::vector<double> values;

  static RadialFunction of(const Polytope& body, const SphericalGrid& grid);
};

/// max_k |h_a(u_k) - h_b(u_k)| over the shared grid.
double hausdorff_distance(const Polytope& a, const Polytope& b,
                          const SphericalGrid& grid);
double hausdorff_distance(const SupportFunction& a, const SupportFunction& b);
double hausdorff_distance(const Polytope& a, const SupportFunction& b);

/// max_k |rho_a(u_k) - rho_b(u_k)| over the shared grid.
double radial_distance(const Polytope& a, const Polytope& b,
                       const SphericalGrid& grid);

/// Wulff shape of (s h_K^p + t h_L^p)^{1/p}, p >= 1, evaluated on the union
/// of both normal sets and the working grid. Throws std::domain_error if the
/// combined function is not strictly positive somewhere.
Polytope lp_combination(double p, double s, const Polytope& K, double t,
                        const Polytope& L, const SphericalGrid& grid);

/// Wulff shape of the constant r on a direction set of the given resolution:
/// the standard circumscribed approximation of r B_n.
Polytope ball_polytope(int dim, double r, int resolution);

}  // namespace gmink
