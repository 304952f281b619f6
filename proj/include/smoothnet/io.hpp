#pragma once

// JSON and JSONL encodings of the library's value types.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "batch_solver.hpp"
#include "ingest.hpp"
#include "metrics.hpp"
#include "online_solver.hpp"
#include "synth.hpp"
#include "tracking.hpp"

namespace smoothnet {

using json = nlohmann::json;

/// Non-finite numbers become null; null reads back as +inf.
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline double number_or_inf(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

// ---- GraphSnapshot: {"t", "n", "edges": [[i, j, w], ...]} with 1-based i < j, w > 0.

inline json to_json(const GraphSnapshot& s) {
  json edges = json::array();
  for_each_pair(s.edges.n_nodes(), [&](std::size_t i, std::size_t j, std::size_t k) {
    if (s.edges[k] > 0.0) edges.push_back({i + 1, j + 1, s.edges[k]});
  });
  return {{"t", s.t}, {"n", s.edges.n_nodes()}, {"edges", std::move(edges)}};
}

inline GraphSnapshot snapshot_from_json(const json& j) {
  const auto n = j.at("n").get<std::size_t>();
  if (n < 2) throw input_error("snapshot: n must be >= 2");
  Vector w = Vector::Zero(static_cast<Eigen::Index>(edge_count(n)));
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw input_error("snapshot: each edge must be [i, j, weight]");
    const auto i = e[0].get<long long>();
    const auto jj = e[1].get<long long>();
    const auto weight = e[2].get<double>();
    if (i < 1 || jj <= i || jj > static_cast<long long>(n)) {
      throw input_error("snapshot: bad edge (" + std::to_string(i) + ", " + std::to_string(jj) + ")");
    }
    if (!(weight >= 0.0) || !std::isfinite(weight)) throw input_error("snapshot: edge weight must be >= 0");
    w[static_cast<Eigen::Index>(edge_index(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(jj - 1), n))] = weight;
  }
  return {j.at("t").get<long long>(), EdgeVector(n, std::move(w))};
}

/// Accepts a single snapshot object or an array of them, sorted by t.
inline std::vector<GraphSnapshot> snapshots_from_json(const json& j) {
  std::vector<GraphSnapshot> out;
  if (j.is_array()) {
    for (const auto& s : j) out.push_back(snapshot_from_json(s));
  } else {
    out.push_back(snapshot_from_json(j));
  }
  if (out.empty()) throw input_error("no snapshots in ground-truth file");
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (out[k].t <= out[k - 1].t) throw input_error("ground-truth snapshots must have increasing t");
    if (out[k].edges.n_nodes() != out[0].edges.n_nodes()) throw input_error("ground-truth snapshots differ in n");
  }
  return out;
}

// ---- HyperParams

inline json to_json(const HyperParams& p) {
  return {{"alpha", p.alpha},         {"beta", p.beta},
          {"gamma", p.gamma},         {"d_floor", p.d_floor},
          {"edge_threshold", p.edge_threshold}, {"batch_tol", p.batch_tol},
          {"batch_max_iters", p.batch_max_iters}};
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline HyperParams hyperparams_from_json(const json& j, HyperParams p = {}) {
  if (!j.is_object()) throw input_error("hyperparameters must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "alpha") p.alpha = value.get<double>();
    else if (key == "beta") p.beta = value.get<double>();
    else if (key == "gamma") p.gamma = value.get<double>();
    else if (key == "d_floor") p.d_floor = value.get<double>();
    else if (key == "edge_threshold") p.edge_threshold = value.get<double>();
    else if (key == "batch_tol") p.batch_tol = value.get<double>();
    else if (key == "batch_max_iters") p.batch_max_iters = value.get<long long>();
    else throw input_error("unknown hyperparameter \"" + key + "\"");
  }
  p.validate();
  return p;
}

// ---- ScenarioConfig

inline json to_json(const ScenarioConfig& c) {
  return {{"n_nodes", c.n_nodes},   {"er_prob", c.er_prob},
          {"t_total", c.t_total},   {"t_switch", c.t_switch},
          {"rewire_fraction", c.rewire_fraction}, {"sigma_e", c.sigma_e},
          {"seed", c.seed}};
}

inline ScenarioConfig scenario_from_json(const json& j) {
  if (!j.is_object()) throw input_error("scenario config must be a JSON object");
  ScenarioConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "n_nodes") c.n_nodes = value.get<std::size_t>();
    else if (key == "er_prob") c.er_prob = value.get<double>();
    else if (key == "t_total") c.t_total = value.get<long long>();
    else if (key == "t_switch") c.t_switch = value.get<long long>();
    else if (key == "rewire_fraction") c.rewire_fraction = value.get<double>();
    else if (key == "sigma_e") c.sigma_e = value.get<double>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else throw input_error("unknown scenario key \"" + key + "\"");
  }
  c.validate();
  return c;
}

// ---- BatchResult

inline json to_json(const BatchResult& r) {
  json w = json::array();
  for (std::size_t k = 0; k < r.w_star.size(); ++k) w.push_back(r.w_star[k]);
  return {{"n", r.w_star.n_nodes()},
          {"w_star", std::move(w)},
          {"iterations", r.iterations},
          {"final_objective", finite_or_null(r.final_objective)},
          {"kkt_residual", r.kkt_residual},
          {"converged", r.converged},
          {"graph", to_json(GraphSnapshot(0, r.w_star))}};
}

// ---- Per-step diagnostics (one JSONL record per sample)

inline json to_json(const StepDiagnostics& d) {
  return {{"t", d.t},
          {"objective", finite_or_null(d.objective)},
          {"mu", d.mu},
          {"eta", d.eta},
          {"min_degree", d.min_degree},
          {"clamped", d.clamped}};
}

inline StepDiagnostics diagnostics_from_json(const json& j) {
  StepDiagnostics d;
  d.t = j.at("t").get<long long>();
  d.objective = number_or_inf(j.at("objective"));
  d.mu = j.at("mu").get<double>();
  d.eta = j.at("eta").get<double>();
  d.min_degree = j.at("min_degree").get<double>();
  d.clamped = j.at("clamped").get<bool>();
  return d;
}

inline void add_detection(json& record, const EdgeDetection& e) {
  record["f_measure"] = e.f;
  record["precision"] = e.precision;
  record["recall"] = e.recall;
}

// ---- Tracking records

inline json to_json(const TrackingRecord& r) {
  return {{"t", r.t},
          {"err", r.err},
          {"v", r.v},
          {"L", r.contraction},
          {"L_prod", r.contraction_product},
          {"bound", r.bound},
          {"simplified_bound", finite_or_null(r.simplified)},
          {"subopt_bound", r.subopt.linear},
          {"subopt_bound_sq", r.subopt.squared},
          {"violation", r.err > r.bound}};
}

// ---- Files

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

inline std::vector<json> read_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  std::vector<json> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw input_error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace smoothnet
