/* Apache License, Version 2.0 */
#include "gmink/gaussian.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gmink {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

// Gauss-Legendre rule on [0, 1] by Newton iteration on Legendre polynomials.
void legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p1 = 0.0, dp = 0.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0;
      p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = 0.5 * (1.0 - t);
    x[n - 1 - i] = 0.5 * (1.0 + t);
    w[i] = w[n - 1 - i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
}

double edge_gaussian_cdf_span(double t_lo, double t_hi) {
  // int_{t_lo}^{t_hi} e^{-s^2/2} ds
  return std::sqrt(kPi / 2.0) * (std::erf(t_hi / kSqrt2) - std::erf(t_lo / kSqrt2));
}

Vec3 rot90(const Vec3& u) { return Vec3(-u.y(), u.x(), 0.0); }

}  // namespace

GaussianContext::GaussianContext(int dim, double r_max, int panel_nodes)
    : dim_(dim), r_max_(r_max) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("GaussianContext: dim must be 2 or 3");
  if (r_max < 8.0)
    throw std::invalid_argument("GaussianContext: r_max must be at least 8");
  norm_ = std::pow(2.0 * kPi, -0.5 * dim);
  legendre_rule(panel_nodes, gl_x_, gl_w_);
  const int panels = static_cast<int>(std::ceil(r_max_));
  width_ = r_max_ / panels;
  prefix_.assign(panels + 1, 0.0);
  for (int k = 0; k < panels; ++k)
    prefix_[k + 1] = prefix_[k] + panel_part(k, k * width_, (k + 1) * width_);
}

double GaussianContext::panel_part(int, double a, double b) const {
  double s = 0.0;
  for (std::size_t j = 0; j < gl_x_.size(); ++j) {
    const double t = a + (b - a) * gl_x_[j];
    const double f = (dim_ == 2 ? t : t * t) * std::exp(-0.5 * t * t);
    s += gl_w_[j] * f;
  }
  return (b - a) * s;
}

double GaussianContext::radial_integral(double r) const {
  if (!(r > 0.0)) return 0.0;
  if (r >= r_max_) return prefix_.back();
  const int k = std::min<int>(static_cast<int>(r / width_),
                              static_cast<int>(prefix_.size()) - 2);
  return prefix_[k] + panel_part(k, k * width_, r);
}

void GaussianContext::validate() const {
  // 2^{n/2-1} Gamma(n/2): 1 for n = 2, sqrt(pi/2) for n = 3.
  const double expected =
      std::pow(2.0, 0.5 * dim_ - 1.0) * std::tgamma(0.5 * dim_);
  if (std::abs(radial_integral_full() - expected) > 1e-10)
    throw std::logic_error("GaussianContext: radial quadrature fails the Gamma identity");
}

double SphereMeasure::total() const {
  double s = 0.0;
  for (const Atom& a : atoms) s += a.mass;
  return s;
}

void SphereMeasure::validate() const {
  for (const Atom& a : atoms) {
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass))
      throw std::invalid_argument("SphereMeasure: masses must be finite and nonnegative");
    if (std::abs(a.direction.norm() - 1.0) > 1e-9)
      throw std::invalid_argument("SphereMeasure: directions must be unit vectors");
  }
}

bool SphereMeasure::concentrated_in_hemisphere() const {
  const double tot = total();
  if (!(tot > 0.0)) return true;
  if (dim == 2) {
    std::vector<Vec3> dirs;
    for (const Atom& a : atoms)
      if (a.mass > 0.0) dirs.push_back(a.direction);
    return in_closed_hemisphere(2, dirs);
  }
  const SphericalGrid probe = SphericalGrid::build(dim, 512);
  double gmin = std::numeric_limits<double>::infinity();
  for (const Vec3& u : probe.nodes) {
    double g = 0.0;
    for (const Atom& a : atoms) g += std::max(0.0, u.dot(a.direction)) * a.mass;
    gmin = std::min(gmin, g);
  }
  return gmin <= 1e-10 * tot;
}

// --- Gaussian volume --------------------------------------------------------

namespace {

// Panel boundaries along a facet chord, geometrically refined toward the
// foot of the perpendicular so the transition at |t| ~ h is resolved.
void chord_panels(double h, double t_lo, double t_hi, std::vector<double>& cuts) {
  cuts.clear();
  cuts.push_back(t_lo);
  const double tmax = std::max(std::abs(t_lo), std::abs(t_hi));
  std::vector<double> marks;
  if (t_lo < 0.0 && t_hi > 0.0) marks.push_back(0.0);
  for (double s = h; s < tmax; s *= 2.0) {
    if (-s > t_lo) marks.push_back(-s);
    if (s < t_hi) marks.push_back(s);
  }
  cuts.insert(cuts.end(), marks.begin(), marks.end());
  cuts.push_back(t_hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
}

// n = 2: (1/2pi) int I2(rho(phi)) dphi over the facet sector, written in the
// chord coordinate t with dphi = h dt / (h^2 + t^2).
double planar_sector_term(const GaussianContext& ctx, const Vec3& u, double h,
                          const Vec3& a, const Vec3& b,
                          const std::vector<double>& gx,
                          const std::vector<double>& gw) {
  const Vec3 tau = rot90(u);
  const double t_lo = a.dot(tau);
  const double t_hi = b.dot(tau);
  std::vector<double> cuts;
  chord_panels(h, t_lo, t_hi, cuts);
  double s = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c], hi = cuts[c + 1];
    double part = 0.0;
    for (std::size_t j = 0; j < gx.size(); ++j) {
      const double t = lo + (hi - lo) * gx[j];
      const double rr = h * h + t * t;
      part += gw[j] * ctx.radial_integral(std::sqrt(rr)) * h / rr;
    }
    s += (hi - lo) * part;
  }
  return s / (2.0 * kPi);
}

struct GlRule {
  std::vector<double> x, w;
  explicit GlRule(int n) { legendre_rule(n, x, w); }
};

const GlRule& rule16() {
  static const GlRule r(16);
  return r;
}

const GlRule& rule12() {
  static const GlRule r(12);
  return r;
}

}  // namespace

double gaussian_volume(const GaussianContext& ctx, const Polytope& body) {
  if (body.dim() != ctx.dim())
    throw std::invalid_argument("gaussian_volume: dimension mismatch");

  const auto& facets = body.facets();
  const auto& normals = body.normals();
  const auto& support = body.support_numbers();
  const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(facets.size());

  if (ctx.dim() == 2) {
    const GlRule& gl = rule16();
    return parallel_sum(m, [&](std::ptrdiff_t i) {
      const Facet& f = facets[i];
      if (f.redundant) return 0.0;
      return planar_sector_term(ctx, normals[i], support[i], f.vertices[0],
                                f.vertices[1], gl.x, gl.w);
    });
  }
  const std::vector<double>& gx12 = rule12().x;
  const std::vector<double>& gw12 = rule12().w;
  const double sum = parallel_sum(m, [&](std::ptrdiff_t i) {
    const Facet& f = facets[i];
    if (f.redundant) return 0.0;
    double cone = 0.0;
    {
      Vec3 centroid = Vec3::Zero();
      for (const Vec3& v : f.vertices) centroid += v;
      centroid /= static_cast<double>(f.vertices.size());
      const std::size_t nv = f.vertices.size();
      for (std::size_t k = 0; k < nv; ++k) {
        const Vec3 e1 = f.vertices[k] - centroid;
        const Vec3 e2 = f.vertices[(k + 1) % nv] - centroid;
        const double jac = e1.cross(e2).norm();
        if (jac == 0.0) continue;
        double tri = 0.0;
        for (std::size_t ia = 0; ia < gx12.size(); ++ia) {
          const double a = gx12[ia];
          double row = 0.0;
          for (std::size_t ib = 0; ib < gx12.size(); ++ib) {
            const Vec3 x = centroid + a * (e1 + gx12[ib] * (e2 - e1));
            const double r = x.norm();
            row += gw12[ib] * ctx.radial_integral(r) / (r * r * r);
          }
          tri += gw12[ia] * a * row;
        }
        cone += jac * tri;
      }
    }
    return support[i] * cone;
  });
  return ctx.normalization() * sum;
}

double gaussian_volume(const GaussianContext& ctx, const SupportFunction& h) {
  if (ctx.dim() != 2)
    throw std::invalid_argument("gaussian_volume: support-sample route is n = 2 only");
  const std::size_t n = h.grid.size();
  const double dth = 2.0 * kPi / static_cast<double>(n);
  return parallel_sum(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t k) {
    const double hk = h.values[k];
    const double hp = h.values[(k + 1) % n];
    const double hm = h.values[(k + n - 1) % n];
    const double d1 = (hp - hm) / (2.0 * dth);
    const double d2 = (hp - 2.0 * hk + hm) / (dth * dth);
    const double rho2 = hk * hk + d1 * d1;
    const double jac = hk * (hk + d2) / rho2;  // dphi/dtheta
    return h.grid.weights[k] * ctx.radial_integral(std::sqrt(rho2)) * jac;
  }) / (2.0 * kPi);
}

double gaussian_volume_on_grid(const GaussianContext& ctx, const Polytope& body,
                               const SphericalGrid& grid) {
  if (body.dim() != ctx.dim() || grid.dim != ctx.dim())
    throw std::invalid_argument("gaussian_volume_on_grid: dimension mismatch");
  return ctx.normalization() *
         integrate(grid, [&](const Vec3& u) {
           return ctx.radial_integral(body.radial(u));
         });
}

namespace reference {

double gaussian_volume_on_grid(const GaussianContext& ctx, const Polytope& body,
                               const SphericalGrid& grid) {
  double s = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    s += grid.weights[k] * ctx.radial_integral(body.radial(grid.nodes[k]));
  return ctx.normalization() * s;
}

}  // namespace reference

// --- Surface area measures --------------------------------------------------

SphereMeasure gauss_surface_measure(const GaussianContext& ctx, const Polytope& body) {
  if (body.dim() != ctx.dim())
    throw std::invalid_argument("gauss_surface_measure: dimension mismatch");
  const auto& facets = body.facets();
  const auto& normals = body.normals();
  const auto& support = body.support_numbers();

  SphereMeasure mu;
  mu.dim = body.dim();
  mu.tag = SphereMeasure::Tag::discrete;
  mu.atoms.resize(facets.size());

  const std::vector<double>& gx12 = rule12().x;
  const std::vector<double>& gw12 = rule12().w;

  parallel_for(0, static_cast<std::ptrdiff_t>(facets.size()), [&](std::ptrdiff_t i) {
    const Facet& f = facets[i];
    mu.atoms[i].direction = normals[i];
    if (f.redundant) {
      mu.atoms[i].mass = 0.0;
      return;
    }
    if (body.dim() == 2) {
      // Exact 1-D Gaussian CDF span along the edge; the foot of the
      // perpendicular is h u, so |x|^2 = h^2 + t^2.
      const Vec3 tau = rot90(normals[i]);
      const double t_lo = f.vertices[0].dot(tau);
      const double t_hi = f.vertices[1].dot(tau);
      mu.atoms[i].mass = ctx.normalization() *
                         std::exp(-0.5 * support[i] * support[i]) *
                         edge_gaussian_cdf_span(t_lo, t_hi);
    } else {
      Vec3 centroid = Vec3::Zero();
      for (const Vec3& v : f.vertices) centroid += v;
      centroid /= static_cast<double>(f.vertices.size());
      double s = 0.0;
      const std::size_t nv = f.vertices.size();
      for (std::size_t k = 0; k < nv; ++k) {
        const Vec3 e1 = f.vertices[k] - centroid;
        const Vec3 e2 = f.vertices[(k + 1) % nv] - centroid;
        const double jac = e1.cross(e2).norm();
        if (jac == 0.0) continue;
        double tri = 0.0;
        for (std::size_t ia = 0; ia < gx12.size(); ++ia) {
          const double a = gx12[ia];
          double row = 0.0;
          for (std::size_t ib = 0; ib < gx12.size(); ++ib) {
            const Vec3 x = centroid + a * (e1 + gx12[ib] * (e2 - e1));
            row += gw12[ib] * std::exp(-0.5 * x.squaredNorm());
          }
          tri += gw12[ia] * a * row;
        }
        s += jac * tri;
      }
      mu.atoms[i].mass = ctx.normalization() * s;
    }
  });
  return mu;
}

SphereMeasure lp_surface_measure(const GaussianContext& ctx, const Polytope& body,
                                 double p) {
  if (!(p >= 1.0))
    throw std::invalid_argument("lp_surface_measure: requires p >= 1");
  if (p > 1.0 && body.min_support_number() < 1e-6)
    throw std::domain_error(
        "lp_surface_measure: origin too close to the boundary for p > 1");
  SphereMeasure mu = gauss_surface_measure(ctx, body);
  const auto& support = body.support_numbers();
  for (std::size_t i = 0; i < mu.atoms.size(); ++i)
    mu.atoms[i].mass *= std::pow(support[i], 1.0 - p);
  return mu;
}

// --- Monge-Ampere density ---------------------------------------------------

namespace {

double ma_density_at(const SupportFunction& h, double p, std::size_t k,
                     double tol = 1e-8) {
  const std::size_t n = h.grid.size();
  const double dth = 2.0 * kPi / static_cast<double>(n);
  const double hk = h.values[k];
  const double hp = h.values[(k + 1) % n];
  const double hm = h.values[(k + n - 1) % n];
  const double d1 = (hp - hm) / (2.0 * dth);
  const double d2 = (hp - 2.0 * hk + hm) / (dth * dth);
  const double curv = d2 + hk;
  if (curv < -tol)
    throw std::domain_error("ma_density: negative curvature factor, not a support function");
  return std::exp(-0.5 * (d1 * d1 + hk * hk)) * std::pow(hk, 1.0 - p) *
         std::max(curv, 0.0) / (2.0 * kPi);
}

}  // namespace

double ma_density(const GaussianContext& ctx, const SupportFunction& h, double p,
                  std::size_t node) {
  if (ctx.dim() != 2)
    throw std::invalid_argument("ma_density: defined on S^1 only");
  if (node >= h.grid.size()) throw std::out_of_range("ma_density: node index");
  return ma_density_at(h, p, node);
}

std::vector<double> ma_density_all(const GaussianContext& ctx,
                                   const SupportFunction& h, double p) {
  if (ctx.dim() != 2)
    throw std::invalid_argument("ma_density: defined on S^1 only");
  std::vector<double> out(h.grid.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = ma_density_at(h, p, k);
  return out;
}

// --- Functionals -------------------------------------------------------------

double phi_functional(const GaussianContext& ctx, const Polytope& body, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("phi_functional: requires p >= 1");
  const double gamma = gaussian_volume(ctx, body);
  if (!(gamma > 0.0))
    throw std::domain_error("phi_functional: nonpositive Gaussian volume");

  const SphereMeasure sp = lp_surface_measure(ctx, body, p);
  const SphereMeasure s1 = gauss_surface_measure(ctx, body);
  const auto& h = body.support_numbers();
  double pairing = 0.0, collapsed = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    pairing += std::pow(h[i], p) * sp.atoms[i].mass;
    collapsed += h[i] * s1.atoms[i].mass;
  }
  // h^p h^{1-p} = h at every atom; anything beyond rounding is a bug.
  if (std::abs(pairing - collapsed) > 1e-10 * std::max(1.0, collapsed))
    throw std::logic_error("phi_functional: p-collapse identity violated");
  return -pairing / (p * gamma) + std::log(gamma);
}

double minkowski_gap(const GaussianContext& ctx, const Polytope& K,
                     const Polytope& L, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("minkowski_gap: requires p >= 1");
  if (K.dim() != L.dim())
    throw std::invalid_argument("minkowski_gap: dimension mismatch");
  const SphereMeasure sp = lp_surface_measure(ctx, K, p);
  const auto& hK = K.support_numbers();
  const auto& nK = K.normals();
  double integral = 0.0;
  for (std::size_t i = 0; i < nK.size(); ++i) {
    const double hL = L.support(nK[i]);
    integral += (std::pow(hL, p) - std::pow(hK[i], p)) * sp.atoms[i].mass;
  }
  const double gK = gaussian_volume(ctx, K);
  const double gL = gaussian_volume(ctx, L);
  return integral / p - gK * std::log(gL / gK);
}

std::pair<double, Vec3> cosine_lower_bound(const SphereMeasure& measure, double p,
                                           const SphericalGrid& grid) {
  if (measure.dim != grid.dim)
    throw std::invalid_argument("cosine_lower_bound: dimension mismatch");
  std::vector<double> g(grid.size());
  parallel_for(0, static_cast<std::ptrdiff_t>(grid.size()), [&](std::ptrdiff_t k) {
    double s = 0.0;
    for (const SphereMeasure::Atom& a : measure.atoms) {
      const double d = grid.nodes[k].dot(a.direction);
      if (d > 0.0) s += std::pow(d, p) * a.mass;
    }
    g[k] = s;
  });
  std::size_t arg = 0;
  for (std::size_t k = 1; k < g.size(); ++k)
    if (g[k] < g[arg]) arg = k;
  return {g[arg], grid.nodes[arg]};
}

namespace reference {

std::pair<double, Vec3> cosine_lower_bound(const SphereMeasure& measure, double p,
                                           const SphericalGrid& grid) {
  double best = std::numeric_limits<double>::infinity();
  Vec3 arg = Vec3::Zero();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double s = 0.0;
    for (const SphereMeasure::Atom& a : measure.atoms) {
      const double d = grid.nodes[k].dot(a.direction);
      if (d > 0.0) s += std::pow(d, p) * a.mass;
    }
    if (s < best) {
      best = s;
      arg = grid.nodes[k];
    }
  }
  return {best, arg};
}

}  // namespace reference

std::vector<VariationalReport> variational_check(const GaussianContext& ctx,
                                                 const Polytope& K,
                                                 const Polytope& L, double p,
                                                 const std::vector<double>& t_steps,
                                                 const SphericalGrid& grid) {
  const double gamma0 = gaussian_volume(ctx, K);
  const SphereMeasure sp = lp_surface_measure(ctx, K, p);
  const auto& nK = K.normals();
  double pairing = 0.0;
  for (std::size_t i = 0; i < nK.size(); ++i)
    pairing += std::pow(L.support(nK[i]), p) * sp.atoms[i].mass;
  pairing /= p;

  std::vector<VariationalReport> out;
  out.reserve(t_steps.size());
  for (double t : t_steps) {
    if (!(t > 0.0))
      throw std::invalid_argument("variational_check: steps must be positive");
    const double gp = gaussian_volume(ctx, lp_combination(p, 1.0, K, t, L, grid));
    const double gm = gaussian_volume(ctx, lp_combination(p, 1.0, K, -t, L, grid));
    VariationalReport r;
    r.t = t;
    r.forward = (gp - gamma0) / t;
    r.backward = (gamma0 - gm) / t;
    r.central = (gp - gm) / (2.0 * t);
    r.pairing = pairing;
    r.abs_error = std::abs(r.central - pairing);
    r.rel_error = r.abs_error / std::max(std::abs(pairing), 1e-300);
    out.push_back(r);
  }
  return out;
}

}  // namespace gmink
