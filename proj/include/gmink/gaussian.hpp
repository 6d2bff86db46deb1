/* Apache License, Version 2.0 */
#pragma once

#include <utility>
#include <vector>

#include "gmink/convex.hpp"

namespace gmink {

/// Radial Gauss-Legendre quadrature for integrals of t^{n-1} e^{-t^2/2} on
/// [0, r_max], plus the Gaussian normalization (2 pi)^{-n/2}. The tail mass
/// beyond r_max = 8 is below 1e-13 for n <= 3.
class GaussianContext {
 public:
  explicit GaussianContext(int dim, double r_max = 8.0, int panel_nodes = 24);

  int dim() const { return dim_; }
  double r_max() const { return r_max_; }

  /// (sqrt(2 pi))^{-n}.
  double normalization() const { return norm_; }

  /// Integral of t^{n-1} e^{-t^2/2} over [0, min(r, r_max)].
  double radial_integral(double r) const;
  double radial_integral_full() const { return prefix_.back(); }

  /// Checks r_max >= 8 and the Gamma-function identity
  /// int_0^inf t^{n-1} e^{-t^2/2} dt = 2^{n/2-1} Gamma(n/2) within 1e-10.
  void validate() const;

 private:
  double panel_part(int panel, double a, double b) const;

  int dim_;
  double r_max_;
  double norm_;
  double width_;
  std::vector<double> gl_x_, gl_w_;   // Gauss-Legendre rule on [0, 1]
  std::vector<double> prefix_;        // cumulative integral at panel ends
};

/// Finite nonnegative Borel measure on the sphere as weighted atoms.
struct SphereMeasure {
  enum class Tag { discrete, grid_density };

  struct Atom {
    Vec3 direction;
    double mass;
  };

  int dim = 2;
  Tag tag = Tag::discrete;
  std::vector<Atom> atoms;

  double total() const;
  /// Throws std::invalid_argument on negative/non-finite masses.
  void validate() const;
  /// Positivity witness min_u sum (u.v_j)_+ m_j over a probe grid.
  bool concentrated_in_hemisphere() const;
};

/// Gaussian volume of a polytope: per-facet integration of the polar-
/// coordinate radial integral (n = 2 over angular sectors, n = 3 over the
/// facet planes). Monotone in the body; in (0,1).
double gaussian_volume(const GaussianContext& ctx, const Polytope& body);

/// Gaussian volume of a smooth n = 2 body from support samples, via the
/// boundary parametrization x(t) = h u + h' u_perp; exact for constants.
double gaussian_volume(const GaussianContext& ctx, const SupportFunction& h);

/// Quadrature of the radial integral over a sphere grid; the OpenMP kernel
/// behind the benchmark. Coarser than the per-facet route for kinky bodies.
double gaussian_volume_on_grid(const GaussianContext& ctx, const Polytope& body,
                               const SphericalGrid& grid);

namespace reference {
/// Serial counterpart of gaussian_volume_on_grid.
double gaussian_volume_on_grid(const GaussianContext& ctx, const Polytope& body,
                               const SphericalGrid& grid);
}  // namespace reference

/// Gaussian surface area measure: one atom per constraint, index-aligned
/// with body.normals(); redundant constraints carry zero mass.
/// mass_i = (2 pi)^{-n/2} integral of e^{-|x|^2/2} over facet i.
SphereMeasure gauss_surface_measure(const GaussianContext& ctx, const Polytope& body);

/// L_p Gaussian surface area measure: the p = 1 masses times h_i^{1-p}.
/// Refuses bodies with min support < 1e-6 when p > 1.
SphereMeasure lp_surface_measure(const GaussianContext& ctx, const Polytope& body,
                                 double p);

/// Monge-Ampere density on S^1 at grid node k:
/// (2 pi)^{-1} e^{-(h'^2+h^2)/2} h^{1-p} (h'' + h), with periodic central
/// differences. Throws std::domain_error when h'' + h < -tol.
double ma_density(const GaussianContext& ctx, const SupportFunction& h, double p,
                  std::size_t node);
std::vector<double> ma_density_all(const GaussianContext& ctx,
                                   const SupportFunction& h, double p);

/// Phi_p(K) = -(1/(p gamma(K))) * int h^p dS_p(K) + log gamma(K).
/// The integral collapses to int h dS_1(K); both routes are evaluated and
/// must agree, otherwise std::logic_error.
double phi_functional(const GaussianContext& ctx, const Polytope& body, double p);

/// (1/p) int (h_L^p - h_K^p) dS_p(K) - gamma(K) log(gamma(L)/gamma(K)).
/// Nonnegative with equality iff K = L.
double minkowski_gap(const GaussianContext& ctx, const Polytope& K,
                     const Polytope& L, double p);

/// Minimum over grid nodes of g(u) = sum (u.v_j)_+^p m_j and its argmin.
std::pair<double, Vec3> cosine_lower_bound(const SphereMeasure& measure, double p,
                                           const SphericalGrid& grid);

namespace reference {
/// Serial counterpart of cosine_lower_bound.
std::pair<double, Vec3> cosine_lower_bound(const SphereMeasure& measure, double p,
                                           const SphericalGrid& grid);
}  // namespace reference

/// Finite-difference check of the variational formula
/// d/dt gamma(K +_p t L) |_{t=0} = (1/p) int h_L^p dS_p(K).
struct VariationalReport {
  double t = 0.0;
  double forward = 0.0;
  double backward = 0.0;
  double central = 0.0;
  double pairing = 0.0;  // measure side
  double abs_error = 0.0;
  double rel_error = 0.0;
};
std::vector<VariationalReport> variational_check(const GaussianContext& ctx,
                                                 const Polytope& K,
                                                 const Polytope& L, double p,
                                                 const std::vector<double>& t_steps,
                                                 const SphericalGrid& grid);

}  // namespace gmink
