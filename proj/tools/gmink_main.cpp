/* Apache License, Version 2.0 */
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "gmink/io.hpp"

namespace {

using namespace gmink;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitDomain = 2;

struct DomainExit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Polytope body_from_config(const nlohmann::json& cfg) {
  if (cfg.contains("body_file"))
    return load_body(cfg.at("body_file").get<std::string>());
  return body_from_json(cfg.at("body"));
}

int run_measure(const std::string& body_path, const std::string& out_path, double p) {
  const Polytope body = load_body(body_path);
  const GaussianContext ctx(body.dim());
  save_measure(lp_surface_measure(ctx, body, p), out_path);
  return kExitOk;
}

int run_volume(const std::string& body_path) {
  const Polytope body = load_body(body_path);
  const GaussianContext ctx(body.dim());
  std::printf("%.6f\n", gaussian_volume(ctx, body));
  return kExitOk;
}

int run_solve(const std::string& measure_path, const std::string& out_path,
              double p, double tol, double init_radius, bool analytic) {
  const SphereMeasure mu = load_measure(measure_path);
  const GaussianContext ctx(mu.dim);
  SolverConfig cfg;
  cfg.residual_tol = tol;
  cfg.init_radius = init_radius;
  if (analytic) cfg.jacobian = SolverConfig::Jacobian::n2_analytic;
  const SolverReport report = solve_discrete(ctx, mu, p, cfg);
  save_report(report, out_path);
  if (!report.ok())
    throw DomainExit("solve: " + to_string(report.status) +
                     (report.branch_note.empty() ? "" : ": " + report.branch_note));
  return kExitOk;
}

int run_verify(const std::string& report_path, const std::string& measure_path,
               double p, double tol) {
  const SolverReport report = load_report(report_path);
  const SphereMeasure mu = load_measure(measure_path);
  const GaussianContext ctx(mu.dim);
  const VerificationSummary s = verify_solution(ctx, report, mu, p);
  nlohmann::ordered_json j;
  j["max_abs_deviation"] = s.max_abs_deviation;
  j["total_variation"] = s.total_variation;
  j["gauss_volume"] = s.gauss_volume;
  j["volume_in_branch"] = s.volume_in_branch;
  std::printf("%s\n", j.dump(2).c_str());
  if (!s.volume_in_branch)
    throw DomainExit("verify: gauss_volume below the 1/2 branch");
  if (s.max_abs_deviation > tol)
    throw DomainExit("verify: measure deviation " +
                     std::to_string(s.max_abs_deviation) + " exceeds " +
                     std::to_string(tol));
  return kExitOk;
}

int run_inequality(const std::string& k_path, const std::string& l_path, double p) {
  const Polytope K = load_body(k_path);
  const Polytope L = load_body(l_path);
  const GaussianContext ctx(K.dim());
  std::printf("%.12g\n", minkowski_gap(ctx, K, L, p));
  return kExitOk;
}

int run_continuity(const std::string& config_path, bool p_mode) {
  const nlohmann::json cfg = read_json_file(config_path);
  const Polytope K0 = body_from_config(cfg);
  const GaussianContext ctx(K0.dim());
  const int resolution = cfg.value("resolution", K0.dim() == 2 ? 720 : 2000);
  const SphericalGrid grid = SphericalGrid::build(K0.dim(), resolution);
  const std::vector<double> schedule =
      cfg.at("schedule").get<std::vector<double>>();
  SolverConfig solver_cfg;
  solver_cfg.residual_tol = cfg.value("tol", 1e-9);
  if (cfg.value("analytic_jacobian", false))
    solver_cfg.jacobian = SolverConfig::Jacobian::n2_analytic;

  std::vector<ExperimentRecord> records;
  if (p_mode) {
    records = run_p_continuity(ctx, K0, cfg.at("p0").get<double>(), schedule,
                               solver_cfg, grid);
  } else {
    records = run_measure_continuity(ctx, K0, cfg.value("p", 1.0), schedule,
                                     solver_cfg, grid,
                                     cfg.value("seed", std::uint64_t{1}));
  }
  emit_report(records, cfg.at("csv").get<std::string>(),
              cfg.at("summary").get<std::string>());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L_p Gaussian surface area measures, the discrete Minkowski "
               "solver, and continuity experiments"};
  app.require_subcommand(1);

  std::string body_path, measure_path, report_path, other_path, out_path, config_path;
  double p = 1.0, tol = 1e-9, verify_tol = 1e-6, init_radius = 3.0;
  bool analytic = false;

  auto* measure = app.add_subcommand("measure", "body.json -> measure.json");
  measure->add_option("body", body_path)->required();
  measure->add_option("--p", p, "exponent p >= 1");
  measure->add_option("--out", out_path, "output path")->default_val("measure.json");

  auto* volume = app.add_subcommand("volume", "print gamma_n(body)");
  volume->add_option("body", body_path)->required();

  auto* solve = app.add_subcommand("solve", "measure.json -> report.json");
  solve->add_option("measure", measure_path)->required();
  solve->add_option("--p", p, "exponent p >= 1");
  solve->add_option("--tol", tol, "residual tolerance");
  solve->add_option("--init-radius", init_radius, "initial ball radius");
  solve->add_flag("--analytic-jacobian", analytic, "closed-form n=2 Jacobian");
  solve->add_option("--out", out_path, "output path")->default_val("report.json");

  auto* verify = app.add_subcommand("verify", "re-check a report against its data");
  verify->add_option("report", report_path)->required();
  verify->add_option("measure", measure_path)->required();
  verify->add_option("--p", p, "exponent p >= 1");
  verify->add_option("--tol", verify_tol, "max acceptable deviation");

  auto* inequality = app.add_subcommand("inequality", "print the Minkowski gap");
  inequality->add_option("K", body_path)->required();
  inequality->add_option("L", other_path)->required();
  inequality->add_option("--p", p, "exponent p >= 1");

  auto* continuity = app.add_subcommand("continuity", "measure-continuity family");
  continuity->add_option("config", config_path)->required();

  auto* pcontinuity = app.add_subcommand("pcontinuity", "p-continuity family");
  pcontinuity->add_option("config", config_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (measure->parsed()) return run_measure(body_path, out_path, p);
    if (volume->parsed()) return run_volume(body_path);
    if (solve->parsed())
      return run_solve(measure_path, out_path, p, tol, init_radius, analytic);
    if (verify->parsed()) return run_verify(report_path, measure_path, p, verify_tol);
    if (inequality->parsed()) return run_inequality(body_path, other_path, p);
    if (continuity->parsed()) return run_continuity(config_path, false);
    if (pcontinuity->parsed()) return run_continuity(config_path, true);
  } catch (const DomainExit& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitDomain;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kExitDomain;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "malformed file: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitOk;
}
