#pragma once

// Subcommand implementations behind the `smoothnet` executable. Each command
// reads its inputs, writes into an output directory and returns an exit code;
// input problems surface as exceptions and are mapped by run_command.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Core>

#include "experiment.hpp"
#include "io.hpp"

namespace smoothnet {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitInvariant = 3 };

/// A result that contradicts a proven property (e.g. a tracking-bound violation).
struct invariant_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Transform { raw, log, gradient };

inline Transform parse_transform(const std::string& s) {
  if (s == "raw") return Transform::raw;
  if (s == "log") return Transform::log;
  if (s == "gradient") return Transform::gradient;
  throw input_error("unknown transform \"" + s + "\" (expected raw, log or gradient)");
}

inline const char* transform_name(Transform t) {
  switch (t) {
    case Transform::log: return "log";
    case Transform::gradient: return "gradient";
    default: return "raw";
  }
}

inline SignalStream apply_transform(const SignalStream& s, Transform t, ReturnKind returns = ReturnKind::simple) {
  switch (t) {
    case Transform::log: return log_transform(s);
    case Transform::gradient: return discrete_gradient(s, returns);
    default: return s;
  }
}

struct CommandOptions {
  std::string input;    // signals (or prices) CSV
  std::string config;   // JSON: scenario, hyperparameters or grid, depending on the command
  std::string truth;    // ground-truth snapshots JSON
  std::string metrics;  // online metrics JSONL (track)
  std::string out;      // output directory
  long long stride = 100;
  Transform transform = Transform::raw;
  ReturnKind returns = ReturnKind::simple;
  std::optional<std::uint64_t> seed;
  long long window = 500;  // grid-search: trailing samples averaged per segment
  unsigned threads = 0;    // grid-search: 0 = hardware concurrency
};

// ---- Provenance

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline json version_info() {
  return {{"smoothnet", kVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

/// The hash covers the resolved configuration and the option values that
/// influence results, so two runs with equal hashes produce equal outputs
/// from equal input files.
inline json run_manifest(const std::string& command, const json& config, std::optional<std::uint64_t> seed,
                         const json& extra = json::object()) {
  json m = {{"command", command}, {"config", config}, {"versions", version_info()}};
  m["seed"] = seed ? json(*seed) : json(nullptr);
  for (const auto& [k, v] : extra.items()) m[k] = v;
  json hashed = {{"command", command}, {"config", config}, {"seed", m["seed"]}, {"extra", extra}};
  m["config_hash"] = hex64(fnv1a(hashed.dump()));
  return m;
}

namespace detail {

inline std::filesystem::path prepare_out_dir(const std::string& out) {
  if (out.empty()) throw input_error("--out is required");
  std::filesystem::path dir(out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw input_error("cannot create output directory " + out);
  return dir;
}

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw input_error("cannot write " + p.string());
  return f;
}

inline HyperParams load_hyperparams(const std::string& path) {
  return path.empty() ? HyperParams{} : hyperparams_from_json(read_json_file(path));
}

inline SignalStream load_signals(const CommandOptions& o) {
  if (o.input.empty()) throw input_error("--input is required");
  SignalStream s = apply_transform(load_csv(o.input), o.transform, o.returns);
  if (s.empty()) throw input_error(o.input + ": no usable samples");
  if (s.n_nodes() < 2) throw input_error(o.input + ": need at least 2 node columns");
  return s;
}

inline std::vector<GraphSnapshot> load_truth(const std::string& path, std::size_t n_nodes) {
  if (path.empty()) return {};
  auto truth = snapshots_from_json(read_json_file(path));
  if (truth.front().edges.n_nodes() != n_nodes) {
    throw input_error("ground truth has " + std::to_string(truth.front().edges.n_nodes()) +
                      " nodes but the signals have " + std::to_string(n_nodes));
  }
  return truth;
}

inline json transform_json(const CommandOptions& o) {
  return {{"transform", transform_name(o.transform)},
          {"returns", o.returns == ReturnKind::log ? "log" : "simple"}};
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace detail

// ---- simulate

/// signals.csv (header `t,1,2,...`), truth.json (array of segment snapshots), manifest.json.
inline int cmd_simulate(const CommandOptions& o) {
  ScenarioConfig cfg = o.config.empty() ? ScenarioConfig{} : scenario_from_json(read_json_file(o.config));
  if (o.seed) cfg.seed = *o.seed;
  const auto dir = detail::prepare_out_dir(o.out);
  const Scenario sc = generate_scenario(cfg);

  SignalStream s;
  for (std::size_t i = 0; i < cfg.n_nodes; ++i) s.node_names.push_back(std::to_string(i + 1));
  for (std::size_t t = 0; t < sc.signals.size(); ++t) s.samples.push_back({std::to_string(t + 1), sc.signals[t]});
  {
    auto f = detail::open_out(dir / "signals.csv");
    write_csv(f, s, "t");
  }
  json truth = json::array();
  for (const auto& seg : sc.segments) truth.push_back(to_json(seg));
  write_json_file((dir / "truth.json").string(), truth);
  write_json_file((dir / "manifest.json").string(), run_manifest("simulate", to_json(cfg), cfg.seed));
  return kExitOk;
}

// ---- learn-online

/// metrics.jsonl (one record per sample), snapshots.jsonl (every `stride`
/// samples), final_graph.json, manifest.json.
inline int cmd_learn_online(const CommandOptions& o) {
  if (o.stride < 1) throw input_error("--stride must be >= 1");
  const HyperParams p = detail::load_hyperparams(o.config);
  const SignalStream s = detail::load_signals(o);
  const auto truth = detail::load_truth(o.truth, s.n_nodes());
  const auto dir = detail::prepare_out_dir(o.out);

  auto metrics = detail::open_out(dir / "metrics.jsonl");
  auto snaps = detail::open_out(dir / "snapshots.jsonl");
  OnlineLearner learner(p, s.n_nodes());
  EdgeVector prev = learner.state().w;
  for (const auto& sample : s.samples) {
    const StepDiagnostics d = learner.push(sample.values);
    const EdgeVector& w = learner.state().w;
    json rec = to_json(d);
    rec["timestamp"] = sample.timestamp;
    const double prev_norm = prev.weights().norm();
    rec["rel_dev"] = prev_norm > 0.0 ? json(relative_deviation(w, prev)) : json(nullptr);
    if (!truth.empty()) add_detection(rec, f_measure(w, truth_at(truth, d.t), p.edge_threshold));
    metrics << rec.dump() << '\n';
    if (d.t % o.stride == 0) {
      json snap = to_json(learner.snapshot());
      snap["timestamp"] = sample.timestamp;
      snaps << snap.dump() << '\n';
    }
    prev = w;
  }
  if (learner.state().clamp_events > 0) {
    std::clog << "warning: degree floor hit on " << learner.state().clamp_events << " step(s)\n";
  }
  json final_graph = to_json(learner.snapshot());
  final_graph["timestamp"] = s.samples.back().timestamp;
  write_json_file((dir / "final_graph.json").string(), final_graph);
  json cfg = {{"hyperparams", to_json(p)}, {"stride", o.stride}};
  cfg.update(detail::transform_json(o));
  write_json_file((dir / "manifest.json").string(),
                  run_manifest("learn-online", cfg, o.seed,
                               {{"samples", s.size()}, {"n_nodes", s.n_nodes()},
                                {"clamp_events", learner.state().clamp_events}}));
  return kExitOk;
}

// ---- learn-batch

/// Solves the static problem on the mean pairwise distances of the whole
/// stream. batch_result.json, manifest.json.
inline int cmd_learn_batch(const CommandOptions& o) {
  const HyperParams p = detail::load_hyperparams(o.config);
  const SignalStream s = detail::load_signals(o);
  const auto dir = detail::prepare_out_dir(o.out);

  Matrix x(static_cast<Eigen::Index>(s.n_nodes()), static_cast<Eigen::Index>(s.size()));
  for (std::size_t t = 0; t < s.size(); ++t) x.col(static_cast<Eigen::Index>(t)) = s.samples[t].values;
  const DistanceVector z(s.n_nodes(), distance_vector_batch(x).dists() / static_cast<double>(s.size()));
  const BatchResult r = solve_batch(z, p);
  if (!r.converged) {
    std::clog << "warning: batch solver stopped after " << r.iterations
              << " iterations without converging (kkt residual " << r.kkt_residual << ")\n";
  }
  write_json_file((dir / "batch_result.json").string(), to_json(r));
  json cfg = {{"hyperparams", to_json(p)}};
  cfg.update(detail::transform_json(o));
  write_json_file((dir / "manifest.json").string(),
                  run_manifest("learn-batch", cfg, o.seed, {{"samples", s.size()}, {"n_nodes", s.n_nodes()}}));
  return kExitOk;
}

// ---- track

/// Replays the online run, checks it against the recorded metrics, computes
/// per-sample batch optima on the same zbar_t and the tracking bound.
/// tracking.jsonl (merged), batch.jsonl (batch objective per sample),
/// manifest.json. Returns kExitInvariant if err_t > bound_t anywhere.
inline int cmd_track(const CommandOptions& o) {
  const HyperParams p = detail::load_hyperparams(o.config);
  if (o.metrics.empty()) throw input_error("--metrics is required");
  const auto recorded = read_jsonl_file(o.metrics);
  if (recorded.empty()) throw input_error(o.metrics + ": no metrics records");
  const SignalStream s = detail::load_signals(o);
  if (recorded.size() != s.size()) {
    throw input_error("metrics has " + std::to_string(recorded.size()) + " records but the signals have " +
                      std::to_string(s.size()) + " samples");
  }
  const auto truth = detail::load_truth(o.truth, s.n_nodes());
  const auto dir = detail::prepare_out_dir(o.out);

  const TrackedRun run = track_online(s.signals(), p);
  for (std::size_t k = 0; k < recorded.size(); ++k) {
    const StepDiagnostics d = diagnostics_from_json(recorded[k]);
    const double ref = run.diagnostics[k].objective;
    if (d.t != run.diagnostics[k].t ||
        !(std::abs(d.objective - ref) <= 1e-9 * std::max(1.0, std::abs(ref)) || d.objective == ref)) {
      throw input_error("metrics record " + std::to_string(k + 1) +
                        " does not match a replay of the signals with these hyperparameters");
    }
  }

  auto merged = detail::open_out(dir / "tracking.jsonl");
  auto batch = detail::open_out(dir / "batch.jsonl");
  for (std::size_t k = 0; k < run.records.size(); ++k) {
    json rec = to_json(run.records[k]);
    rec["objective"] = finite_or_null(run.diagnostics[k].objective);
    rec["batch_objective"] = run.optimal_objective[k];
    rec["relative_gap"] = finite_or_null(run.relative_gap(k));
    merged << rec.dump() << '\n';

    json b = {{"t", run.records[k].t}, {"objective", run.optimal_objective[k]}};
    if (!truth.empty()) add_detection(b, f_measure(run.optima[k], truth_at(truth, b["t"].get<long long>()), p.edge_threshold));
    batch << b.dump() << '\n';
  }
  const std::size_t violations = run.violations();
  json cfg = {{"hyperparams", to_json(p)}};
  cfg.update(detail::transform_json(o));
  write_json_file((dir / "manifest.json").string(),
                  run_manifest("track", cfg, o.seed,
                               {{"samples", s.size()},
                                {"violations", violations},
                                {"unconverged_solves", run.unconverged_solves}}));
  if (run.unconverged_solves > 0) {
    std::clog << "warning: " << run.unconverged_solves << " batch solve(s) did not converge\n";
  }
  std::cout << "tracking bound violations: " << violations << " of " << run.records.size() << '\n';
  if (violations > 0) throw invariant_violation("tracking error exceeded the bound at " + std::to_string(violations) + " sample(s)");
  return kExitOk;
}

// ---- grid-search

struct GridPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double mean_f = 0.0;
};

/// Grid JSON: {"alpha": [...], "beta": [...]} (Cartesian product) or
/// {"points": [{"alpha": a, "beta": b}, ...]}, plus an optional "base"
/// object of other hyperparameters.
inline std::pair<HyperParams, std::vector<GridPoint>> grid_from_json(const json& j) {
  if (!j.is_object()) throw input_error("grid must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "alpha" && key != "beta" && key != "points" && key != "base") {
      throw input_error("unknown grid key \"" + key + "\"");
    }
  }
  const HyperParams base = j.contains("base") ? hyperparams_from_json(j.at("base")) : HyperParams{};
  std::vector<GridPoint> pts;
  if (j.contains("points")) {
    for (const auto& q : j.at("points")) pts.push_back({q.at("alpha").get<double>(), q.at("beta").get<double>()});
  }
  if (j.contains("alpha") || j.contains("beta")) {
    if (!j.contains("alpha") || !j.contains("beta")) throw input_error("grid needs both \"alpha\" and \"beta\" lists");
    for (const auto& a : j.at("alpha")) {
      for (const auto& b : j.at("beta")) pts.push_back({a.get<double>(), b.get<double>()});
    }
  }
  if (pts.empty()) throw input_error("grid is empty");
  for (const auto& q : pts) {
    HyperParams h = base;
    h.alpha = q.alpha;
    h.beta = q.beta;
    h.validate();
  }
  return {base, pts};
}

/// Mean F-measure over the last `window` samples of every ground-truth
/// segment, averaged across segments.
inline double final_window_f(const std::vector<Vector>& signals, const std::vector<GraphSnapshot>& truth,
                             const HyperParams& p, long long window) {
  const long long n = static_cast<long long>(signals.size());
  std::vector<std::vector<double>> per_segment(truth.size());
  OnlineLearner learner(p, static_cast<std::size_t>(signals.front().size()));
  for (long long t = 1; t <= n; ++t) {
    learner.push(signals[static_cast<std::size_t>(t - 1)]);
    std::size_t seg = 0;
    for (std::size_t s = 0; s < truth.size(); ++s) {
      if (truth[s].t <= t) seg = s;
    }
    const long long seg_end = seg + 1 < truth.size() ? truth[seg + 1].t - 1 : n;
    if (t > seg_end - window) {
      per_segment[seg].push_back(f_measure(learner.state().w, truth[seg].edges, p.edge_threshold).f);
    }
  }
  std::vector<double> means;
  for (const auto& v : per_segment) {
    if (!v.empty()) means.push_back(detail::mean_of(v));
  }
  return detail::mean_of(means);
}

/// grid.json with every point's score and the best one, manifest.json.
inline int cmd_grid_search(const CommandOptions& o) {
  if (o.config.empty()) throw input_error("--config (grid JSON) is required");
  if (o.truth.empty()) throw input_error("--truth is required for grid search");
  if (o.window < 1) throw input_error("--window must be >= 1");
  auto [base, pts] = grid_from_json(read_json_file(o.config));
  const SignalStream s = detail::load_signals(o);
  const auto truth = detail::load_truth(o.truth, s.n_nodes());
  const auto dir = detail::prepare_out_dir(o.out);
  const std::vector<Vector> signals = s.signals();

  unsigned n_threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(pts.size()));
  std::size_t next = 0;
  std::mutex m;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      std::size_t k = 0;
      {
        std::lock_guard lock(m);
        if (next >= pts.size() || failure) return;
        k = next++;
      }
      try {
        HyperParams h = base;
        h.alpha = pts[k].alpha;
        h.beta = pts[k].beta;
        pts[k].mean_f = final_window_f(signals, truth, h, o.window);
      } catch (...) {
        std::lock_guard lock(m);
        failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  // First maximum in grid order, so ties resolve deterministically.
  std::size_t best = 0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (pts[k].mean_f > pts[best].mean_f) best = k;
  }
  json results = json::array();
  for (const auto& q : pts) results.push_back({{"alpha", q.alpha}, {"beta", q.beta}, {"mean_f", q.mean_f}});
  write_json_file((dir / "grid.json").string(),
                  {{"window", o.window},
                   {"results", results},
                   {"best", {{"alpha", pts[best].alpha}, {"beta", pts[best].beta}, {"mean_f", pts[best].mean_f}}}});
  json cfg = {{"base", to_json(base)}, {"points", results.size()}, {"window", o.window}};
  cfg.update(detail::transform_json(o));
  write_json_file((dir / "manifest.json").string(), run_manifest("grid-search", cfg, o.seed));
  return kExitOk;
}

// ---- ingest

/// Loads, cleans and transforms a CSV; writes signals.csv with the same
/// schema plus manifest.json.
inline int cmd_ingest(const CommandOptions& o) {
  if (o.input.empty()) throw input_error("--input is required");
  LoadReport report;
  const SignalStream raw = load_csv(o.input, &report);
  const SignalStream s = apply_transform(raw, o.transform, o.returns);
  const auto dir = detail::prepare_out_dir(o.out);
  {
    auto f = detail::open_out(dir / "signals.csv");
    write_csv(f, s);
  }
  write_json_file((dir / "manifest.json").string(),
                  run_manifest("ingest", detail::transform_json(o), o.seed,
                               {{"samples", s.size()},
                                {"n_nodes", s.n_nodes()},
                                {"dropped_rows", report.dropped_rows},
                                {"dropped_lines", report.dropped_lines}}));
  return kExitOk;
}

/// Runs `cmd`, printing any error to `err` and mapping it to an exit code.
inline int run_command(const std::function<int(const CommandOptions&)>& cmd, const CommandOptions& o,
                       std::ostream& err = std::cerr) {
  try {
    return cmd(o);
  } catch (const invariant_violation& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const input_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

}  // namespace smoothnet
