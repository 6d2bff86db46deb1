/* Apache License, Version 2.0 */
#include "gmink/io.hpp"

#include <fstream>

namespace gmink {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Vec3 parse_direction(const json& ju, int dim) {
  if (!ju.is_array() || ju.size() != static_cast<std::size_t>(dim))
    throw std::domain_error("direction has wrong arity");
  Vec3 u(ju[0].get<double>(), ju[1].get<double>(),
         dim == 3 ? ju[2].get<double>() : 0.0);
  if (std::abs(u.norm() - 1.0) > 1e-9)
    throw std::domain_error("direction is not a unit vector");
  return u;
}

ordered_json direction_to_json(const Vec3& u, int dim) {
  ordered_json j = ordered_json::array({u.x(), u.y()});
  if (dim == 3) j.push_back(u.z());
  return j;
}

int parse_dim(const json& j) {
  const int dim = j.at("dim").get<int>();
  if (dim != 2 && dim != 3) throw std::domain_error("dim must be 2 or 3");
  return dim;
}

}  // namespace

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  in >> j;
  return j;
}

void write_json_file(const ordered_json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Polytope body_from_json(const json& j) {
  const int dim = parse_dim(j);
  const json& jn = j.at("normals");
  const json& jh = j.at("support_numbers");
  if (!jn.is_array() || !jh.is_array() || jn.size() != jh.size())
    throw std::domain_error("body: normals/support_numbers mismatch");
  std::vector<Vec3> normals;
  std::vector<double> values;
  normals.reserve(jn.size());
  values.reserve(jh.size());
  for (const json& ju : jn) normals.push_back(parse_direction(ju, dim));
  for (const json& jv : jh) values.push_back(jv.get<double>());
  return Polytope::wulff_shape(dim, std::move(normals), std::move(values));
}

ordered_json body_to_json(const Polytope& body) {
  ordered_json j;
  j["dim"] = body.dim();
  j["normals"] = ordered_json::array();
  for (const Vec3& u : body.normals())
    j["normals"].push_back(direction_to_json(u, body.dim()));
  j["support_numbers"] = body.support_numbers();
  return j;
}

Polytope load_body(const std::filesystem::path& path) {
  return body_from_json(read_json_file(path));
}

void save_body(const Polytope& body, const std::filesystem::path& path) {
  write_json_file(body_to_json(body), path);
}

SphereMeasure measure_from_json(const json& j) {
  SphereMeasure mu;
  mu.dim = parse_dim(j);
  for (const json& ja : j.at("atoms")) {
    SphereMeasure::Atom atom;
    atom.direction = parse_direction(ja.at("u"), mu.dim);
    atom.mass = ja.at("mass").get<double>();
    mu.atoms.push_back(atom);
  }
  mu.validate();
  return mu;
}

ordered_json measure_to_json(const SphereMeasure& mu) {
  ordered_json j;
  j["dim"] = mu.dim;
  j["atoms"] = ordered_json::array();
  for (const auto& a : mu.atoms)
    j["atoms"].push_back(ordered_json{{"u", direction_to_json(a.direction, mu.dim)},
                                      {"mass", a.mass}});
  return j;
}

SphereMeasure load_measure(const std::filesystem::path& path) {
  return measure_from_json(read_json_file(path));
}

void save_measure(const SphereMeasure& mu, const std::filesystem::path& path) {
  write_json_file(measure_to_json(mu), path);
}

ordered_json report_to_json(const SolverReport& report) {
  ordered_json j;
  j["status"] = to_string(report.status);
  j["residual"] = report.residual;
  j["gauss_volume"] = report.gauss_volume;
  j["iterations"] = report.iterations;
  j["branch_note"] = report.branch_note;
  if (!report.solution.empty()) j["solution"] = body_to_json(report.solution);
  j["trace"] = ordered_json::array();
  for (const IterationStats& s : report.trace)
    j["trace"].push_back(ordered_json{{"iteration", s.iteration},
                                      {"residual", s.residual},
                                      {"gauss_volume", s.gauss_volume},
                                      {"max_radial", s.max_radial}});
  return j;
}

SolverReport report_from_json(const json& j) {
  SolverReport report;
  const std::string status = j.at("status").get<std::string>();
  if (status == "success") report.status = SolveStatus::success;
  else if (status == "no_convergence") report.status = SolveStatus::no_convergence;
  else if (status == "branch_violation") report.status = SolveStatus::branch_violation;
  else if (status == "facet_vanished") report.status = SolveStatus::facet_vanished;
  else throw std::domain_error("report: unknown status " + status);
  report.residual = j.at("residual").get<double>();
  report.gauss_volume = j.at("gauss_volume").get<double>();
  report.iterations = j.at("iterations").get<int>();
  report.branch_note = j.value("branch_note", std::string{});
  if (j.contains("solution")) report.solution = body_from_json(j.at("solution"));
  if (j.contains("trace")) {
    for (const json& js : j.at("trace"))
      report.trace.push_back({js.at("iteration").get<int>(),
                              js.at("residual").get<double>(),
                              js.at("gauss_volume").get<double>(),
                              js.at("max_radial").get<double>()});
  }
  return report;
}

void save_report(const SolverReport& report, const std::filesystem::path& path) {
  write_json_file(report_to_json(report), path);
}

SolverReport load_report(const std::filesystem::path& path) {
  return report_from_json(read_json_file(path));
}

}  // namespace gmink
