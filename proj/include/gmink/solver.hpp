/* Apache License, Version 2.0 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmink/gaussian.hpp"

namespace gmink {

enum class SolveStatus {
  success,
  no_convergence,
  branch_violation,  // converged but gamma_n < 1/2
  facet_vanished,    // some constraint stayed redundant at convergence
};

std::string to_string(SolveStatus status);

struct SolverConfig {
  double residual_tol = 1e-9;   // max atom-mass error
  int max_iterations = 200;
  double damping = 1.0;         // initial step scale, halved by backtracking

  enum class Init { large_ball, given_body };
  Init initialization = Init::large_ball;
  double init_radius = 3.0;
  std::optional<Polytope> init_body;

  enum class Jacobian { finite_difference, n2_analytic };
  Jacobian jacobian = Jacobian::finite_difference;
};

struct IterationStats {
  int iteration = 0;
  double residual = 0.0;
  double gauss_volume = 0.0;
  double max_radial = 0.0;
};

struct SolverReport {
  SolveStatus status = SolveStatus::no_convergence;
  Polytope solution;
  double residual = 0.0;
  double gauss_volume = 0.0;
  int iterations = 0;
  std::string branch_note;
  std::vector<IterationStats> trace;

  bool ok() const { return status == SolveStatus::success; }
};

/// Newton iteration on the support numbers h = (h_1..h_m) for
/// S_{p,gamma_n}([h], u_i) = mu_i with the large-volume branch bias:
/// start at a large ball, reject iterates with gamma_n < 0.45 (one retry
/// with a larger ball), and report branch_violation when the converged body
/// has gamma_n < 1/2. Throws std::domain_error when mu has fewer than n+1
/// atoms, nonpositive masses, or directions inside a closed hemisphere.
SolverReport solve_discrete(const GaussianContext& ctx, const SphereMeasure& mu,
                            double p, const SolverConfig& cfg = {});

/// Rotationally symmetric case: all positive roots of
/// n omega_n r^{n-p} e^{-r^2/2} / (2 pi)^{n/2} = total_mass,
/// selecting the root with gamma_n(r B_n) >= 1/2 (the larger one on a tie).
struct BallSolution {
  std::vector<double> roots;          // ascending
  int selected = -1;                  // index into roots, -1 if none valid
  double radius() const { return selected < 0 ? 0.0 : roots[selected]; }
  double gauss_volume = 0.0;          // at the selected root
  std::string multiplicity_note;
  bool valid() const { return selected >= 0; }
};
BallSolution solve_ball(const GaussianContext& ctx, double total_mass, double p,
                        int dim);

/// Recomputes the measure of a solved body with a refined facet quadrature
/// and reports the deviation from mu.
struct VerificationSummary {
  double max_abs_deviation = 0.0;
  double total_variation = 0.0;
  double gauss_volume = 0.0;
  bool volume_in_branch = false;  // gamma_n >= 1/2 - 1e-9
};
VerificationSummary verify_solution(const GaussianContext& ctx,
                                    const SolverReport& report,
                                    const SphereMeasure& mu, double p);

}  // namespace gmink
