#pragma once

// Streaming graph learning: one proximal-gradient step per incoming signal
// against an exponentially averaged distance vector. Memory and per-sample
// work are O(N^2), independent of how many samples have been seen.

#include <stdexcept>
#include <string>
#include <vector>

#include "objective.hpp"

namespace smoothnet {

/// zbar_t = (1 - gamma) zbar_{t-1} + gamma z_t
inline DistanceVector ema_update(const DistanceVector& z_bar, const DistanceVector& z_t, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("ema_update: gamma must lie in (0, 1)");
  if (z_bar.size() != z_t.size()) throw std::invalid_argument("ema_update: length mismatch");
  Vector out = (1.0 - gamma) * z_bar.dists() + gamma * z_t.dists();
  return {z_bar.n_nodes(), std::move(out)};
}

struct OnlineState {
  long long t = 0;  // samples consumed so far
  EdgeVector w;     // iterate to be used at the next sample
  DistanceVector z_bar;
  double mu = 0.0;  // last step size
  double eta = 0.0;
  double min_degree = 0.0;  // of the iterate the last step started from
  bool clamped = false;     // last step hit the degree floor
  long long clamp_events = 0;

  OnlineState() = default;
  OnlineState(EdgeVector w1, DistanceVector zbar0) : w(std::move(w1)), z_bar(std::move(zbar0)) {
    if (w.n_nodes() != z_bar.n_nodes()) throw std::invalid_argument("OnlineState: size mismatch");
  }

  /// Uniform w with unit degrees and zbar = 0.
  static OnlineState initial(std::size_t n_nodes) {
    return {EdgeVector::uniform(n_nodes), DistanceVector(n_nodes)};
  }

  std::size_t n_nodes() const noexcept { return w.n_nodes(); }
};

/// One iteration of the online learner, in this order: gradient at w_t,
/// EMA update of zbar, step size at w_t, thresholded update.
inline OnlineState online_step(const OnlineState& state, const DistanceVector& z_t, const HyperParams& p) {
  if (z_t.n_nodes() != state.n_nodes()) {
    throw std::invalid_argument("online_step: sample has " + std::to_string(z_t.n_nodes()) +
                                " nodes, state has " + std::to_string(state.n_nodes()));
  }
  const Gradient grad = grad_g_checked(state.w.weights(), p);
  OnlineState next;
  next.z_bar = ema_update(state.z_bar, z_t, p.gamma);
  const StepSize step = step_size(state.w, p);
  next.w = prox_h(state.w.weights() - step.mu * grad.value, next.z_bar, step.mu);
  next.t = state.t + 1;
  next.mu = step.mu;
  next.eta = step.eta;
  next.min_degree = step.min_degree;
  next.clamped = grad.clamped || step.clamped;
  next.clamp_events = state.clamp_events + (next.clamped ? 1 : 0);
  return next;
}

/// Per-sample record emitted by run_online. The objective is evaluated at
/// the post-step iterate against the updated zbar.
struct StepDiagnostics {
  long long t = 0;
  double objective = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  double min_degree = 0.0;
  bool clamped = false;
};

/// Stateful driver around online_step.
class OnlineLearner {
 public:
  OnlineLearner(HyperParams p, OnlineState init) : p_(p), state_(std::move(init)) { p_.validate(); }
  OnlineLearner(HyperParams p, std::size_t n_nodes) : OnlineLearner(p, OnlineState::initial(n_nodes)) {}

  /// Consumes one graph signal and returns the diagnostics for it.
  StepDiagnostics push(const Vector& x) {
    if (static_cast<std::size_t>(x.size()) != state_.n_nodes()) {
      throw std::invalid_argument("OnlineLearner: signal of length " + std::to_string(x.size()) +
                                  " for a graph with " + std::to_string(state_.n_nodes()) + " nodes");
    }
    state_ = online_step(state_, distance_vector(x), p_);
    return {state_.t, eval_F(state_.w, state_.z_bar, p_), state_.mu, state_.eta, state_.min_degree,
            state_.clamped};
  }

  const OnlineState& state() const noexcept { return state_; }
  const HyperParams& params() const noexcept { return p_; }
  GraphSnapshot snapshot() const { return {state_.t, state_.w}; }

 private:
  HyperParams p_;
  OnlineState state_;
};

struct OnlineRun {
  std::vector<GraphSnapshot> snapshots;
  std::vector<StepDiagnostics> diagnostics;
};

/// Runs the learner over a whole stream, one snapshot per sample.
inline OnlineRun run_online(const std::vector<Vector>& stream, const HyperParams& p, const EdgeVector& w1,
                            const DistanceVector& zbar0) {
  OnlineRun run;
  if (stream.empty()) return run;
  const auto n = static_cast<Eigen::Index>(w1.n_nodes());
  for (std::size_t t = 0; t < stream.size(); ++t) {
    if (stream[t].size() != n) {
      throw std::invalid_argument("run_online: sample " + std::to_string(t + 1) + " has length " +
                                  std::to_string(stream[t].size()) + ", expected " + std::to_string(n));
    }
  }
  OnlineLearner learner(p, OnlineState(w1, zbar0));
  run.snapshots.reserve(stream.size());
  run.diagnostics.reserve(stream.size());
  for (const auto& x : stream) {
    run.diagnostics.push_back(learner.push(x));
    run.snapshots.push_back(learner.snapshot());
  }
  return run;
}

inline OnlineRun run_online(const std::vector<Vector>& stream, const HyperParams& p) {
  if (stream.empty()) return {};
  const auto n = static_cast<std::size_t>(stream.front().size());
  return run_online(stream, p, EdgeVector::uniform(n), DistanceVector(n));
}

}  // namespace smoothnet
