#pragma once

// Online run analysed against per-sample batch optima: the data behind the
// objective-tracking and tracking-bound checks.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "batch_solver.hpp"
#include "online_solver.hpp"
#include "tracking.hpp"

namespace smoothnet {

struct TrackedRun {
  std::vector<StepDiagnostics> diagnostics;  // online, objective at the post-step iterate
  std::vector<GraphSnapshot> snapshots;      // post-step iterates
  std::vector<EdgeVector> optima;            // w_t* for zbar_t
  std::vector<double> optimal_objective;     // F_t(w_t*)
  std::vector<TrackingRecord> records;       // err is measured at the pre-step iterate
  long long unconverged_solves = 0;

  /// |F_t(w_{t+1}) - F_t(w_t*)| / |F_t(w_t*)| for 0-based sample k.
  double relative_gap(std::size_t k) const {
    return std::abs(diagnostics[k].objective - optimal_objective[k]) / std::abs(optimal_objective[k]);
  }

  std::size_t violations() const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.err > r.bound;
    return n;
  }
};

/// Runs the online learner over `stream` and, for every sample, solves the
/// batch problem on the same zbar_t (warm-started from the previous optimum).
inline TrackedRun track_online(const std::vector<Vector>& stream, const HyperParams& p, OnlineState init) {
  p.validate();
  TrackedRun run;
  if (stream.empty()) return run;
  const std::size_t n = stream.size();
  run.diagnostics.reserve(n);
  run.snapshots.reserve(n);
  run.optima.reserve(n);
  run.optimal_objective.reserve(n);

  std::vector<double> err;
  std::vector<double> contraction;
  std::vector<double> eta;
  err.reserve(n);
  contraction.reserve(n);
  eta.reserve(n);

  OnlineLearner learner(p, std::move(init));
  EdgeVector warm = EdgeVector::uniform(learner.state().n_nodes());
  for (const auto& x : stream) {
    const EdgeVector w_pre = learner.state().w;
    run.diagnostics.push_back(learner.push(x));
    run.snapshots.push_back(learner.snapshot());

    BatchResult opt = solve_batch(learner.state().z_bar, p, warm);
    run.unconverged_solves += !opt.converged;
    err.push_back((w_pre.weights() - opt.w_star.weights()).norm());
    contraction.push_back(contraction_factor(learner.state().mu, p.beta, learner.state().eta));
    eta.push_back(learner.state().eta);
    run.optimal_objective.push_back(opt.final_objective);
    warm = opt.w_star;
    run.optima.push_back(std::move(opt.w_star));
  }

  std::vector<double> v(n, 0.0);
  if (n >= 2) {
    const std::vector<double> pv = path_variation(run.optima);
    std::copy(pv.begin(), pv.end(), v.begin());
  }
  run.records = tracking_series(err, contraction, v, eta);
  return run;
}

inline TrackedRun track_online(const std::vector<Vector>& stream, const HyperParams& p) {
  if (stream.empty()) return {};
  return track_online(stream, p, OnlineState::initial(static_cast<std::size_t>(stream.front().size())));
}

}  // namespace smoothnet
