/* Apache License, Version 2.0 */
#include "gmink/convex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gmink {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDirTol = 1e-12;   // direction coincidence
constexpr double kGeomTol = 1e-8;   // absolute, coordinates of size O(1..10)

Vec3 rot90(const Vec3& u) { return Vec3(-u.y(), u.x(), 0.0); }

double cross2(const Vec3& a, const Vec3& b) { return a.x() * b.y() - a.y() * b.x(); }

void check_inputs(int dim, std::vector<Vec3>& normals,
                  const std::vector<double>& values) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("wulff_shape: dim must be 2 or 3");
  if (normals.size() != values.size())
    throw std::invalid_argument("wulff_shape: normals/values size mismatch");
  if (normals.size() < static_cast<std::size_t>(dim) + 1)
    throw std::invalid_argument("wulff_shape: need at least dim+1 constraints");
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw std::invalid_argument("wulff_shape: support values must be positive");
    const double n = normals[i].norm();
    if (std::abs(n - 1.0) > 1e-9)
      throw std::invalid_argument("wulff_shape: normals must be unit vectors");
    normals[i] /= n;
    if (dim == 2 && normals[i].z() != 0.0)
      throw std::invalid_argument("wulff_shape: planar normal has a z component");
  }
  if (in_closed_hemisphere(dim, normals))
    throw std::domain_error(
        "wulff_shape: normals lie in a closed hemisphere, intersection unbounded");
}

// --- n = 2 -----------------------------------------------------------------

// Intersection of the boundary lines of constraints i (first) and j (next in
// counterclockwise order).
Vec3 line_intersection(const Vec3& ui, double hi, const Vec3& uj, double hj) {
  const double c = ui.dot(uj);
  const double s = cross2(ui, uj);
  return hi * ui + ((hj - hi * c) / s) * rot90(ui);
}

struct Planar {
  std::vector<Facet> facets;
  std::vector<Vec3> vertices;
};

Planar build_planar(const std::vector<Vec3>& normals,
                    const std::vector<double>& values) {
  const std::size_t m = normals.size();
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::vector<double> angle(m);
  for (std::size_t i = 0; i < m; ++i)
    angle[i] = std::atan2(normals[i].y(), normals[i].x());
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (angle[a] != angle[b]) return angle[a] < angle[b];
    return values[a] < values[b];
  });

  // Duplicate directions: the tightest constraint stays a candidate.
  std::vector<std::size_t> cand;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = order[k];
    if (!cand.empty() &&
        std::abs(angle[i] - angle[cand.back()]) < kDirTol &&
        normals[i].dot(normals[cand.back()]) > 0.0)
      continue;
    cand.push_back(i);
  }
  if (!cand.empty() && cand.size() > 1) {
    const std::size_t a = cand.front(), b = cand.back();
    if (std::abs((angle[a] + 2.0 * kPi) - angle[b]) < kDirTol) cand.pop_back();
  }

  // Non-redundant constraints are the strict hull vertices of the dual
  // points u_i / h_i (the origin is interior: hemisphere condition).
  std::vector<Vec3> dual(cand.size());
  for (std::size_t k = 0; k < cand.size(); ++k)
    dual[k] = normals[cand[k]] / values[cand[k]];

  std::vector<std::size_t> hk(cand.size());
  for (std::size_t k = 0; k < cand.size(); ++k) hk[k] = k;
  std::sort(hk.begin(), hk.end(), [&](std::size_t a, std::size_t b) {
    if (dual[a].x() != dual[b].x()) return dual[a].x() < dual[b].x();
    return dual[a].y() < dual[b].y();
  });
  auto strict_left = [&](std::size_t o, std::size_t a, std::size_t b) {
    const Vec3 oa = dual[a] - dual[o];
    const Vec3 ob = dual[b] - dual[o];
    return cross2(oa, ob) > 1e-12 * (oa.norm() * ob.norm() + 1e-300);
  };
  std::vector<std::size_t> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (std::size_t t = 0; t < hk.size(); ++t) {
      const std::size_t k = pass == 0 ? hk[t] : hk[hk.size() - 1 - t];
      while (hull.size() >= base + 2 &&
             !strict_left(hull[hull.size() - 2], hull[hull.size() - 1], k))
        hull.pop_back();
      hull.push_back(k);
    }
    hull.pop_back();
  }
  if (hull.size() < 3)
    throw std::domain_error("wulff_shape: degenerate intersection");

  // Hull order is counterclockwise in the dual plane; re-sort by normal angle.
  std::vector<std::size_t> active;
  active.reserve(hull.size());
  for (std::size_t k : hull) active.push_back(cand[k]);
  std::sort(active.begin(), active.end(),
            [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });

  Planar out;
  out.facets.assign(m, Facet{});
  const std::size_t na = active.size();
  std::vector<Vec3> corner(na);  // corner[k] between active k and k+1
  for (std::size_t k = 0; k < na; ++k) {
    const std::size_t i = active[k], j = active[(k + 1) % na];
    corner[k] = line_intersection(normals[i], values[i], normals[j], values[j]);
  }
  for (std::size_t k = 0; k < na; ++k) {
    const std::size_t i = active[k];
    Facet& f = out.facets[i];
    f.vertices = {corner[(k + na - 1) % na], corner[k]};
    f.redundant = false;
    f.measure = (f.vertices[1] - f.vertices[0]).norm();
  }
  out.vertices = corner;

  for (const Vec3& v : out.vertices)
    for (std::size_t i = 0; i < m; ++i)
      if (v.dot(normals[i]) > values[i] + 10 * kGeomTol)
        throw std::logic_error("wulff_shape: inconsistent facet geometry");
  return out;
}

// --- n = 3 -----------------------------------------------------------------

Planar build_spatial(const std::vector<Vec3>& normals,
                     const std::vector<double>& values) {
  const std::size_t m = normals.size();

  // Duplicate directions: the tightest constraint represents the group.
  std::vector<std::size_t> cand;
  std::vector<bool> duplicate(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    bool grouped = false;
    for (std::size_t& rep : cand) {
      if (normals[i].dot(normals[rep]) > 1.0 - kDirTol) {
        if (values[i] < values[rep]) {
          duplicate[rep] = true;
          rep = i;
        } else {
          duplicate[i] = true;
        }
        grouped = true;
        break;
      }
    }
    if (!grouped) cand.push_back(i);
  }

  // Vertex enumeration: every vertex is the intersection of >= 3 facet
  // planes, validated against all constraints.
  std::vector<Vec3> verts;
  const std::size_t nc = cand.size();
  for (std::size_t a = 0; a < nc; ++a) {
    for (std::size_t b = a + 1; b < nc; ++b) {
      for (std::size_t c = b + 1; c < nc; ++c) {
        Eigen::Matrix3d M;
        M.row(0) = normals[cand[a]];
        M.row(1) = normals[cand[b]];
        M.row(2) = normals[cand[c]];
        const double det = M.determinant();
        if (std::abs(det) < 1e-10) continue;
        const Vec3 rhs(values[cand[a]], values[cand[b]], values[cand[c]]);
        const Vec3 x = M.partialPivLu().solve(rhs);
        bool inside = true;
        for (std::size_t l = 0; l < nc && inside; ++l)
          if (x.dot(normals[cand[l]]) > values[cand[l]] + kGeomTol) inside = false;
        if (!inside) continue;
        bool known = false;
        for (const Vec3& v : verts)
          if ((v - x).norm() < 1e-7) {
            known = true;
            break;
          }
        if (!known) verts.push_back(x);
      }
    }
  }
  if (verts.size() < 4)
    throw std::domain_error("wulff_shape: degenerate intersection");

  Planar out;
  out.facets.assign(m, Facet{});
  out.vertices = verts;
  for (std::size_t i = 0; i < m; ++i) {
    if (duplicate[i]) continue;
    std::vector<Vec3> on_plane;
    for (const Vec3& v : verts)
      if (std::abs(v.dot(normals[i]) - values[i]) < 10 * kGeomTol)
        on_plane.push_back(v);
    if (on_plane.size() < 3) continue;

    // Order the polygon counterclockwise around the outward normal.
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& v : on_plane) centroid += v;
    centroid /= static_cast<double>(on_plane.size());
    Vec3 e1 = normals[i].unitOrthogonal();
    Vec3 e2 = normals[i].cross(e1);
    std::sort(on_plane.begin(), on_plane.end(), [&](const Vec3& a, const Vec3& b) {
      const Vec3 da = a - centroid, db = b - centroid;
      return std::atan2(da.dot(e2), da.dot(e1)) < std::atan2(db.dot(e2), db.dot(e1));
    });
    double area = 0.0;
    for (std::size_t k = 0; k < on_plane.size(); ++k) {
      const Vec3 da = on_plane[k] - centroid;
      const Vec3 db = on_plane[(k + 1) % on_plane.size()] - centroid;
      area += 0.5 * da.cross(db).dot(normals[i]);
    }
    if (area < 1e-12) continue;
    Facet& f = out.facets[i];
    f.vertices = std::move(on_plane);
    f.redundant = false;
    f.measure = area;
  }
  return out;
}

}  // namespace

Polytope Polytope::wulff_shape(int dim, std::vector<Vec3> normals,
                               std::vector<double> values) {
  check_inputs(dim, normals, values);
  Planar geom = dim == 2 ? build_planar(normals, values)
                         : build_spatial(normals, values);
  Polytope body;
  body.dim_ = dim;
  body.normals_ = std::move(normals);
  body.support_ = std::move(values);
  body.facets_ = std::move(geom.facets);
  body.vertices_ = std::move(geom.vertices);
  return body;
}

double Polytope::support(const Vec3& u) const {
  if (empty()) throw std::logic_error("support: empty polytope");
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec3& v : vertices_) best = std::max(best, u.dot(v));
  return best;
}

double Polytope::radial(const Vec3& u) const {
  if (empty()) throw std::logic_error("radial: empty polytope");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    const double d = u.dot(normals_[i]);
    if (d > 1e-14) best = std::min(best, support_[i] / d);
  }
  if (!std::isfinite(best))
    throw std::logic_error("radial: no facet faces the direction (inconsistent body)");
  return best;
}

Polytope Polytope::polar() const {
  if (empty()) throw std::logic_error("polar: empty polytope");
  std::vector<Vec3> dirs;
  std::vector<double> vals;
  dirs.reserve(vertices_.size());
  vals.reserve(vertices_.size());
  for (const Vec3& v : vertices_) {
    const double n = v.norm();
    if (n < 1e-12)
      throw std::domain_error("polar: origin is not interior");
    dirs.push_back(v / n);
    vals.push_back(1.0 / n);
  }
  return wulff_shape(dim_, std::move(dirs), std::move(vals));
}

std::pair<double, Vec3> Polytope::max_radial() const {
  if (empty()) throw std::logic_error("max_radial: empty polytope");
  double best = -1.0;
  Vec3 arg = Vec3::Zero();
  for (const Vec3& v : vertices_) {
    const double n = v.norm();
    if (n > best) {
      best = n;
      arg = v / n;
    }
  }
  return {best, arg};
}

double Polytope::min_support_number() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < normals_.size(); ++i)
    if (!facets_[i].redundant) best = std::min(best, support_[i]);
  return best;
}

std::size_t Polytope::redundant_count() const {
  std::size_t n = 0;
  for (const Facet& f : facets_) n += f.redundant ? 1 : 0;
  return n;
}

SupportFunction SupportFunction::create(SphericalGrid grid,
                                        std::vector<double> values, double tol) {
  if (grid.dim != 2)
    throw std::invalid_argument("SupportFunction: only the n = 2 representation is supported");
  if (grid.size() != values.size())
    throw std::invalid_argument("SupportFunction: grid/value size mismatch");
  double hmax = 0.0;
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("SupportFunction: values must be strictly positive");
    hmax = std::max(hmax, v);
  }
  const Polytope wulff = Polytope::wulff_shape(2, grid.nodes, values);
  double defect = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    defect = std::max(defect, std::abs(wulff.support(grid.nodes[k]) - values[k]));
  if (defect > tol * std::max(1.0, hmax))
    throw std::invalid_argument(
        "SupportFunction: samples fail the Wulff re-evaluation (not a support function)");
  SupportFunction h;
  h.grid = std::move(grid);
  h.values = std::move(values);
  h.wulff_defect = defect;
  return h;
}

RadialFunction RadialFunction::of(const Polytope& body, const SphericalGrid& grid) {
  RadialFunction r;
  r.grid = grid;
  r.values.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    r.values[k] = body.radial(grid.nodes[k]);
  return r;
}

namespace {

template <class FA, class FB>
double grid_sup_distance(std::size_t n, FA&& fa, FB&& fb) {
  double best = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    best = std::max(best, std::abs(fa(k) - fb(k)));
  return best;
}

}  // namespace

double hausdorff_distance(const Polytope& a, const Polytope& b,
                          const SphericalGrid& grid) {
  if (a.dim() != b.dim() || a.dim() != grid.dim)
    throw std::invalid_argument("hausdorff_distance: dimension mismatch");
  return grid_sup_distance(
      grid.size(), [&](std::size_t k) { return a.support(grid.nodes[k]); },
      [&](std::size_t k) { return b.support(grid.nodes[k]); });
}

double hausdorff_distance(const SupportFunction& a, const SupportFunction& b) {
  if (a.grid.dim != b.grid.dim || a.grid.size() != b.grid.size())
    throw std::invalid_argument("hausdorff_distance: dimension mismatch");
  return grid_sup_distance(
      a.grid.size(), [&](std::size_t k) { return a.values[k]; },
      [&](std::size_t k) { return b.values[k]; });
}

double hausdorff_distance(const Polytope& a, const SupportFunction& b) {
  if (a.dim() != b.grid.dim)
    throw std::invalid_argument("hausdorff_distance: dimension mismatch");
  return grid_sup_distance(
      b.grid.size(), [&](std::size_t k) { return a.support(b.grid.nodes[k]); },
      [&](std::size_t k) { return b.values[k]; });
}

double radial_distance(const Polytope& a, const Polytope& b,
                       const SphericalGrid& grid) {
  if (a.dim() != b.dim() || a.dim() != grid.dim)
    throw std::invalid_argument("radial_distance: dimension mismatch");
  return grid_sup_distance(
      grid.size(), [&](std::size_t k) { return a.radial(grid.nodes[k]); },
      [&](std::size_t k) { return b.radial(grid.nodes[k]); });
}

Polytope lp_combination(double p, double s, const Polytope& K, double t,
                        const Polytope& L, const SphericalGrid& grid) {
  if (K.dim() != L.dim() || K.dim() != grid.dim)
    throw std::invalid_argument("lp_combination: dimension mismatch");
  if (!(p >= 1.0))
    throw std::invalid_argument("lp_combination: requires p >= 1");

  std::vector<Vec3> dirs;
  dirs.reserve(K.facet_count() + L.facet_count() + grid.size());
  auto add_unique = [&](const Vec3& u) {
    for (const Vec3& d : dirs)
      if (d.dot(u) > 1.0 - kDirTol) return;
    dirs.push_back(u);
  };
  for (const Vec3& u : K.normals()) add_unique(u);
  for (const Vec3& u : L.normals()) add_unique(u);
  if (K.dim() == 2) {
    // Grid nodes are distinct by construction; only the facet normals above
    // can collide with them.
    std::vector<Vec3> base = dirs;
    for (const Vec3& u : grid.nodes) {
      bool dup = false;
      for (const Vec3& d : base)
        if (d.dot(u) > 1.0 - kDirTol) {
          dup = true;
          break;
        }
      if (!dup) dirs.push_back(u);
    }
  } else {
    for (const Vec3& u : grid.nodes) add_unique(u);
  }

  std::vector<double> f(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double phi = s * std::pow(K.support(dirs[i]), p) +
                       t * std::pow(L.support(dirs[i]), p);
    if (!(phi > 0.0))
      throw std::domain_error("lp_combination: combined support power is not positive");
    f[i] = std::pow(phi, 1.0 / p);
  }
  return Polytope::wulff_shape(K.dim(), std::move(dirs), std::move(f));
}

Polytope ball_polytope(int dim, double r, int resolution) {
  if (!(r > 0.0)) throw std::invalid_argument("ball_polytope: radius must be positive");
  const SphericalGrid grid = SphericalGrid::build(dim, resolution);
  return Polytope::wulff_shape(dim, grid.nodes,
                               std::vector<double>(grid.size(), r));
}

}  // namespace gmink
