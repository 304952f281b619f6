#pragma once

// Composite objective F(w) = h(w) + g(w) with
//   h(w) = I{w >= 0} + 2 w^T z
//   g(w) = 2 beta ||w||^2 - alpha 1^T log(Sw)
// and the pieces the proximal-gradient solvers need.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "graph_core.hpp"

namespace smoothnet {

struct HyperParams {
  double alpha = 1.0;           // log-barrier weight
  double beta = 0.25;           // l2 weight
  double gamma = 0.01;          // EMA discount
  double d_floor = 1e-8;        // runtime lower clamp on degrees
  double edge_threshold = 1e-4; // edge detection cutoff
  double batch_tol = 1e-8;
  long long batch_max_iters = 100000;

  void validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
    if (!(d_floor > 0.0)) throw std::invalid_argument("d_floor must be > 0");
    if (!(edge_threshold >= 0.0)) throw std::invalid_argument("edge_threshold must be >= 0");
    if (!(batch_tol > 0.0)) throw std::invalid_argument("batch_tol must be > 0");
    if (batch_max_iters < 1) throw std::invalid_argument("batch_max_iters must be >= 1");
  }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace detail {

inline double g_from_degree(const Vector& w, const Vector& d, const HyperParams& p) {
  double barrier = 0.0;
  if (p.alpha != 0.0) {
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (!(d[i] > 0.0)) return kInf;
      barrier += std::log(d[i]);
    }
  }
  return 2.0 * p.beta * w.squaredNorm() - p.alpha * barrier;
}

/// grad g with degrees supplied by the caller; returns whether any was clamped.
inline bool grad_from_degree(const Vector& w, const Vector& d, const HyperParams& p, Vector& grad) {
  const std::size_t n = static_cast<std::size_t>(d.size());
  Vector inv_d(d.size());
  bool clamped = false;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    double di = d[i];
    if (di < p.d_floor) {
      di = p.d_floor;
      clamped = true;
    }
    inv_d[i] = p.alpha / di;
  }
  grad = 4.0 * p.beta * w;
  for_each_pair(n, [&](std::size_t i, std::size_t j, std::size_t k) { grad[k] -= inv_d[i] + inv_d[j]; });
  return clamped;
}

}  // namespace detail

/// 2 beta ||w||^2 - alpha sum_i log d_i, or +inf outside the barrier domain.
/// Only alpha and beta are read, so alpha = 0 is accepted here.
inline double eval_g(const Vector& w, const HyperParams& p) { return detail::g_from_degree(w, degree(w), p); }

/// Result of a gradient evaluation; `clamped` is set when some degree fell
/// below d_floor and was raised to it.
struct Gradient {
  Vector value;
  bool clamped = false;
};

/// 4 beta w - alpha S^T (1 / max(Sw, d_floor)).
inline Gradient grad_g_checked(const Vector& w, const HyperParams& p) {
  Gradient g;
  g.clamped = detail::grad_from_degree(w, degree(w), p, g.value);
  return g;
}

inline Vector grad_g(const Vector& w, const HyperParams& p) { return grad_g_checked(w, p).value; }

/// Global Lipschitz constant of grad g on {d >= d_min}: 4 beta + 2 alpha (N-1) / d_min^2.
inline double lipschitz_eta(std::size_t n_nodes, double d_min, const HyperParams& p) {
  if (!(d_min > 0.0)) throw std::invalid_argument("lipschitz_eta: d_min must be > 0");
  return 4.0 * p.beta + 2.0 * p.alpha * static_cast<double>(n_nodes - 1) / (d_min * d_min);
}

/// Step size from the current iterate: eta = 4 beta + 2 alpha (N-1) / max(min_i d_i, d_floor)^2,
/// mu = 1 / eta.
struct StepSize {
  double mu = 0.0;
  double eta = 0.0;
  double min_degree = 0.0;  // before clamping
  bool clamped = false;
};

namespace detail {

inline StepSize step_from_degree(const Vector& d, const HyperParams& p) {
  const auto n = static_cast<double>(d.size());
  const double d_min = d.minCoeff();
  const bool clamped = !(d_min >= p.d_floor);
  const double d_eff = clamped ? p.d_floor : d_min;
  const double eta = 4.0 * p.beta + 2.0 * p.alpha * (n - 1.0) / (d_eff * d_eff);
  return {1.0 / eta, eta, d_min, clamped};
}

}  // namespace detail

inline StepSize step_size(const Vector& w, const HyperParams& p) { return detail::step_from_degree(degree(w), p); }

inline StepSize step_size(const EdgeVector& w, const HyperParams& p) { return step_size(w.weights(), p); }

/// 2 w^T z on the non-negative orthant, +inf elsewhere.
inline double eval_h(const Vector& w, const DistanceVector& z) {
  if (w.size() != z.dists().size()) {
    throw std::invalid_argument("eval_h: w and z lengths differ");
  }
  if ((w.array() < 0.0).any()) return kInf;
  return 2.0 * w.dot(z.dists());
}

inline double eval_F(const Vector& w, const DistanceVector& z, const HyperParams& p) {
  return eval_h(w, z) + eval_g(w, p);
}

inline double eval_F(const EdgeVector& w, const DistanceVector& z, const HyperParams& p) {
  return eval_F(w.weights(), z, p);
}

/// Non-negative soft threshold max(0, v - 2 mu z).
inline EdgeVector prox_h(const Vector& v, const DistanceVector& z, double mu) {
  if (v.size() != z.dists().size()) throw std::invalid_argument("prox_h: v and z lengths differ");
  if (!(mu > 0.0)) throw std::invalid_argument("prox_h: mu must be > 0");
  Vector out = (v - 2.0 * mu * z.dists()).cwiseMax(0.0);
  return {z.n_nodes(), std::move(out)};
}

}  // namespace smoothnet
