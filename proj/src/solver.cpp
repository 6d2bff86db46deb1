/* Apache License, Version 2.0 */
#include "gmink/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace gmink {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBranchFloor = 0.5 - 1e-9;
constexpr double kSupportFloor = 1e-6;

std::vector<Vec3> atom_directions(const SphereMeasure& mu) {
  std::vector<Vec3> dirs;
  dirs.reserve(mu.atoms.size());
  for (const auto& a : mu.atoms) dirs.push_back(a.direction);
  return dirs;
}

struct Evaluation {
  Polytope body;
  Eigen::VectorXd masses;
};

Evaluation evaluate(const GaussianContext& ctx, const std::vector<Vec3>& dirs,
                    const Eigen::VectorXd& h, double p) {
  Evaluation ev;
  std::vector<double> vals(h.data(), h.data() + h.size());
  ev.body = Polytope::wulff_shape(ctx.dim(), dirs, std::move(vals));
  const SphereMeasure m = lp_surface_measure(ctx, ev.body, p);
  ev.masses.resize(static_cast<Eigen::Index>(m.atoms.size()));
  for (std::size_t i = 0; i < m.atoms.size(); ++i)
    ev.masses[static_cast<Eigen::Index>(i)] = m.atoms[i].mass;
  return ev;
}

Eigen::MatrixXd fd_jacobian(const GaussianContext& ctx,
                            const std::vector<Vec3>& dirs,
                            const Eigen::VectorXd& h, double p,
                            const Evaluation& base) {
  const Eigen::Index m = h.size();
  Eigen::MatrixXd J(m, m);
  parallel_for(0, m, [&](std::ptrdiff_t j) {
    double delta = 1e-6 * h[j];
    // A touching/redundant facet has zero forward slope; probe backwards.
    if (base.body.facets()[static_cast<std::size_t>(j)].redundant) delta = -delta;
    Eigen::VectorXd hp = h;
    hp[j] += delta;
    const Evaluation ev = evaluate(ctx, dirs, hp, p);
    J.col(j) = (ev.masses - base.masses) / delta;
  });
  return J;
}

// n = 2 closed-form Jacobian. With facets sorted by normal angle, the mass of
// facet i is c(h_i) (N(t+) - N(t-)) where t+/t- solve the neighbor line
// intersections; only the tridiagonal (cyclic) entries are nonzero.
Eigen::MatrixXd analytic_jacobian_2d(const GaussianContext& ctx,
                                     const std::vector<Vec3>& dirs,
                                     const Eigen::VectorXd& h, double p) {
  const Eigen::Index m = h.size();
  std::vector<std::size_t> order(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> angle(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    angle[i] = std::atan2(dirs[i].y(), dirs[i].x());
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });

  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  const double norm = ctx.normalization();
  const std::size_t n = order.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    const std::size_t ip = order[(k + n - 1) % n];
    const std::size_t in = order[(k + 1) % n];
    const Vec3& u = dirs[i];
    const Vec3 tau(-u.y(), u.x(), 0.0);
    const double cp = u.dot(dirs[ip]);
    const double sp = dirs[ip].x() * u.y() - dirs[ip].y() * u.x();  // cross(prev, u)
    const double cn = u.dot(dirs[in]);
    const double sn = u.x() * dirs[in].y() - u.y() * dirs[in].x();  // cross(u, next)
    // Endpoints in the edge coordinate x = h_i u + t tau:
    // u_prev . x = h_prev gives t with tau . u_prev = -sp; next side likewise.
    const double t_lo = (h[ip] - h[i] * cp) / (-sp);
    const double t_hi = (h[in] - h[i] * cn) / sn;
    const double pref = norm * std::exp(-0.5 * h[i] * h[i]) *
                        std::pow(h[i], 1.0 - p);
    const double span =
        std::sqrt(kPi / 2.0) *
        (std::erf(t_hi / std::sqrt(2.0)) - std::erf(t_lo / std::sqrt(2.0)));
    const double e_hi = std::exp(-0.5 * t_hi * t_hi);
    const double e_lo = std::exp(-0.5 * t_lo * t_lo);
    const double mass = pref * std::max(span, 0.0);

    // d t_hi / d h_i = -cn/sn, d t_hi / d h_next = 1/sn
    // d t_lo / d h_i = cp/sp,  d t_lo / d h_prev = -1/sp
    J(i, i) = mass * ((1.0 - p) / h[i] - h[i]) +
              pref * (e_hi * (-cn / sn) - e_lo * (cp / sp));
    J(i, in) += pref * e_hi / sn;
    J(i, ip) += pref * e_lo / sp;
  }
  return J;
}

double inf_norm(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::success: return "success";
    case SolveStatus::no_convergence: return "no_convergence";
    case SolveStatus::branch_violation: return "branch_violation";
    case SolveStatus::facet_vanished: return "facet_vanished";
  }
  return "unknown";
}

SolverReport solve_discrete(const GaussianContext& ctx, const SphereMeasure& mu,
                            double p, const SolverConfig& cfg) {
  if (!(p >= 1.0)) throw std::invalid_argument("solve_discrete: requires p >= 1");
  mu.validate();
  if (mu.dim != ctx.dim())
    throw std::invalid_argument("solve_discrete: dimension mismatch");
  const std::size_t m = mu.atoms.size();
  if (m < static_cast<std::size_t>(ctx.dim()) + 1)
    throw std::domain_error("solve_discrete: need at least n+1 atoms");
  for (const auto& a : mu.atoms)
    if (!(a.mass > 0.0))
      throw std::domain_error("solve_discrete: atom masses must be strictly positive");
  const std::vector<Vec3> dirs = atom_directions(mu);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (dirs[i].dot(dirs[j]) > 1.0 - 1e-12)
        throw std::domain_error("solve_discrete: atom directions must be distinct");
  if (in_closed_hemisphere(ctx.dim(), dirs))
    throw std::domain_error(
        "solve_discrete: atom directions lie in a closed hemisphere");

  Eigen::VectorXd target(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i)
    target[static_cast<Eigen::Index>(i)] = mu.atoms[i].mass;

  SolverReport report;

  // Branch control: guarded attempts refuse any iterate whose Gaussian
  // volume drops below 0.45, biasing Newton toward the large-volume branch.
  // Only after guarded attempts stall does an unguarded attempt run to
  // convergence, so a low-volume limit is reported, never silently accepted.
  struct Attempt {
    double radius;
    bool guarded;
  };
  std::vector<Attempt> attempts;
  if (cfg.initialization == SolverConfig::Init::given_body) {
    if (!cfg.init_body)
      throw std::invalid_argument(
          "solve_discrete: given_body initialization without a body");
    attempts = {{0.0, true}, {0.0, false}};
  } else {
    attempts = {{cfg.init_radius, true}, {6.0, true}, {cfg.init_radius, false}};
  }

  for (std::size_t attempt = 0; attempt < attempts.size(); ++attempt) {
    Eigen::VectorXd h(static_cast<Eigen::Index>(m));
    if (cfg.initialization == SolverConfig::Init::given_body) {
      for (std::size_t i = 0; i < m; ++i)
        h[static_cast<Eigen::Index>(i)] = cfg.init_body->support(dirs[i]);
    } else {
      h.setConstant(attempts[attempt].radius);
    }
    const bool guarded = attempts[attempt].guarded;

    report.trace.clear();
    report.branch_note.clear();
    bool stalled = false;

    Evaluation ev = evaluate(ctx, dirs, h, p);
    for (int it = 0; it < cfg.max_iterations; ++it) {
      // Keep vanished facets on the activity boundary.
      bool clamped = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (ev.body.facets()[i].redundant) {
          h[static_cast<Eigen::Index>(i)] = ev.body.support(dirs[i]);
          clamped = true;
        }
      }
      if (clamped) ev = evaluate(ctx, dirs, h, p);

      const Eigen::VectorXd F = ev.masses - target;
      const double res = inf_norm(F);
      const double gamma = gaussian_volume(ctx, ev.body);
      report.trace.push_back({it, res, gamma, ev.body.max_radial().first});
      report.iterations = it;
      report.residual = res;
      report.gauss_volume = gamma;
      report.solution = ev.body;

      if (res <= cfg.residual_tol) {
        bool vanished = false;
        for (std::size_t i = 0; i < m; ++i) {
          if (ev.body.facets()[i].redundant) {
            report.branch_note +=
                "facet " + std::to_string(i) + " is redundant at convergence; ";
            vanished = true;
          }
        }
        if (vanished) {
          report.status = SolveStatus::facet_vanished;
          return report;
        }
        if (gamma < kBranchFloor) {
          report.status = SolveStatus::branch_violation;
          report.branch_note +=
              "converged with gauss_volume " + std::to_string(gamma) +
              " < 1/2; the large-volume branch was not reached";
          return report;
        }
        report.status = SolveStatus::success;
        return report;
      }

      const Eigen::MatrixXd J =
          cfg.jacobian == SolverConfig::Jacobian::n2_analytic && ctx.dim() == 2
              ? analytic_jacobian_2d(ctx, dirs, h, p)
              : fd_jacobian(ctx, dirs, h, p, ev);
      const Eigen::VectorXd step = J.partialPivLu().solve(-F);
      if (!step.allFinite()) {
        report.status = SolveStatus::no_convergence;
        report.branch_note += "singular Jacobian";
        return report;
      }

      double alpha = cfg.damping;
      bool accepted = false;
      for (int ls = 0; ls < 40 && !accepted; ++ls) {
        Eigen::VectorXd h_try = h + alpha * step;
        if (h_try.minCoeff() < kSupportFloor) {
          alpha *= 0.5;
          continue;
        }
        Evaluation ev_try = evaluate(ctx, dirs, h_try, p);
        if (guarded && gaussian_volume(ctx, ev_try.body) < 0.45) {
          alpha *= 0.5;
          continue;
        }
        const double res_try = inf_norm(ev_try.masses - target);
        if (res_try <= cfg.residual_tol || res_try < res * (1.0 - 1e-4 * alpha)) {
          h = std::move(h_try);
          ev = std::move(ev_try);
          accepted = true;
        } else {
          alpha *= 0.5;
        }
      }
      if (!accepted) {
        stalled = true;
        break;
      }
    }

    if (attempt + 1 == attempts.size()) {
      report.status = SolveStatus::no_convergence;
      report.branch_note += stalled ? "line search stalled at residual " +
                                          std::to_string(report.residual)
                                    : "iteration budget exhausted";
      return report;
    }
    report.branch_note = stalled
                             ? "guarded attempt stalled (volume floor 0.45); retrying; "
                             : "guarded attempt ran out of iterations; retrying; ";
  }
  return report;
}

BallSolution solve_ball(const GaussianContext& ctx, double total_mass, double p,
                        int dim) {
  if (!(total_mass > 0.0))
    throw std::invalid_argument("solve_ball: total mass must be positive");
  if (!(p >= 1.0)) throw std::invalid_argument("solve_ball: requires p >= 1");
  if (dim != ctx.dim()) throw std::invalid_argument("solve_ball: dimension mismatch");

  const double omega = dim == 2 ? kPi : 4.0 * kPi / 3.0;
  const double C = dim * omega * std::pow(2.0 * kPi, -0.5 * dim);
  const auto profile = [&](double r) {
    return C * std::pow(r, dim - p) * std::exp(-0.5 * r * r);
  };
  // gamma_n(r B_n) = n omega_n (2 pi)^{-n/2} int_0^r t^{n-1} e^{-t^2/2} dt.
  const auto gamma_at = [&](double r) { return C * ctx.radial_integral(r); };

  const auto bisect = [&](double lo, double hi, bool decreasing) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const bool above = profile(mid) > total_mass;
      if (above == decreasing) lo = mid; else hi = mid;
      if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
  };

  BallSolution out;
  const double q = dim - p;
  if (q > 0.0) {
    const double rstar = std::sqrt(q);
    const double fmax = profile(rstar);
    if (total_mass > fmax * (1.0 + 1e-12)) {
      out.multiplicity_note = "no_root: total mass exceeds the profile maximum " +
                              std::to_string(fmax);
      return out;
    }
    if (std::abs(total_mass - fmax) <= 1e-12 * fmax) {
      out.roots = {rstar};
      out.multiplicity_note = "single tangent root at the profile maximum";
    } else {
      double hi = std::max(2.0 * rstar, 4.0);
      while (profile(hi) > total_mass) hi *= 2.0;
      out.roots = {bisect(1e-12, rstar, false), bisect(rstar, hi, true)};
      out.multiplicity_note = "two roots";
    }
  } else {
    // Profile is strictly decreasing (from C at 0 for p = n, from infinity
    // for p > n); at most one root.
    if (q == 0.0 && total_mass >= C) {
      out.multiplicity_note = "no_root: total mass at or above the r -> 0 limit " +
                              std::to_string(C);
      return out;
    }
    double lo = 1e-12, hi = 4.0;
    while (profile(hi) > total_mass) hi *= 2.0;
    if (q < 0.0)
      while (profile(lo) < total_mass) lo *= 0.5;
    out.roots = {bisect(lo, hi, true)};
    out.multiplicity_note = "single root (monotone profile)";
  }

  std::vector<int> valid;
  for (std::size_t i = 0; i < out.roots.size(); ++i)
    if (gamma_at(out.roots[i]) >= kBranchFloor) valid.push_back(static_cast<int>(i));
  if (valid.empty()) {
    out.multiplicity_note += "; no_valid_branch: no root has gauss_volume >= 1/2";
    return out;
  }
  out.selected = valid.back();  // roots ascend; prefer the larger
  if (valid.size() > 1)
    out.multiplicity_note += "; both roots satisfy the volume bound, larger selected";
  else
    out.multiplicity_note += "; selected root " + std::to_string(out.selected);
  out.gauss_volume = gamma_at(out.roots[static_cast<std::size_t>(out.selected)]);
  return out;
}

VerificationSummary verify_solution(const GaussianContext& ctx,
                                    const SolverReport& report,
                                    const SphereMeasure& mu, double p) {
  if (report.solution.empty())
    throw std::invalid_argument("verify_solution: report has no solution body");
  const Polytope& body = report.solution;
  if (body.facet_count() != mu.atoms.size())
    throw std::invalid_argument("verify_solution: body/measure atom mismatch");

  // Refined route: plain Gauss-Legendre quadrature of the Gaussian density
  // over subdivided facets, independent of the CDF-based production formula.
  std::vector<double> gx(16), gw(16);
  {
    const int n = 16;
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
      gx[i] = 0.5 * (1.0 - t);
      gx[n - 1 - i] = 0.5 * (1.0 + t);
      gw[i] = gw[n - 1 - i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
  }

  VerificationSummary out;
  out.gauss_volume = gaussian_volume(ctx, body);
  out.volume_in_branch = out.gauss_volume >= kBranchFloor;

  const auto& facets = body.facets();
  const auto& support = body.support_numbers();
  for (std::size_t i = 0; i < facets.size(); ++i) {
    double mass = 0.0;
    if (!facets[i].redundant) {
      if (body.dim() == 2) {
        const Vec3 a = facets[i].vertices[0];
        const Vec3 b = facets[i].vertices[1];
        const int segments = 64;
        for (int s = 0; s < segments; ++s) {
          const Vec3 lo = a + (b - a) * (static_cast<double>(s) / segments);
          const Vec3 hi = a + (b - a) * (static_cast<double>(s + 1) / segments);
          const double len = (hi - lo).norm();
          for (std::size_t j = 0; j < gx.size(); ++j) {
            const Vec3 x = lo + (hi - lo) * gx[j];
            mass += gw[j] * len * std::exp(-0.5 * x.squaredNorm());
          }
        }
      } else {
        Vec3 centroid = Vec3::Zero();
        for (const Vec3& v : facets[i].vertices) centroid += v;
        centroid /= static_cast<double>(facets[i].vertices.size());
        const std::size_t nv = facets[i].vertices.size();
        for (std::size_t k = 0; k < nv; ++k) {
          const Vec3 e1 = facets[i].vertices[k] - centroid;
          const Vec3 e2 = facets[i].vertices[(k + 1) % nv] - centroid;
          const double jac = e1.cross(e2).norm();
          if (jac == 0.0) continue;
          for (std::size_t ia = 0; ia < gx.size(); ++ia)
            for (std::size_t ib = 0; ib < gx.size(); ++ib) {
              const Vec3 x = centroid + gx[ia] * (e1 + gx[ib] * (e2 - e1));
              mass += gw[ia] * gw[ib] * gx[ia] * jac *
                      std::exp(-0.5 * x.squaredNorm());
            }
        }
      }
      mass *= ctx.normalization() * std::pow(support[i], 1.0 - p);
    }
    const double dev = std::abs(mass - mu.atoms[i].mass);
    out.max_abs_deviation = std::max(out.max_abs_deviation, dev);
    out.total_variation += dev;
  }
  return out;
}

}  // namespace gmink
