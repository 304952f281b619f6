#pragma once

// Static graph learning: proximal-gradient iterations run to convergence.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "objective.hpp"

namespace smoothnet {

struct BatchResult {
  EdgeVector w_star;
  long long iterations = 0;
  double final_objective = 0.0;
  double kkt_residual = 0.0;
  bool converged = false;
  long long backtracks = 0;  // step halvings forced by an objective increase
};

/// Objective increase tolerated per step as round-off.
inline constexpr double kDescentSlack = 1e-12;

/// Entries below this are treated as inactive (on the w >= 0 boundary).
inline constexpr double kEdgeActivityTol = 1e-10;

/// First-order optimality residual. With s = grad g(w) + 2z the minimizer
/// satisfies s_k = 0 on active edges and s_k >= 0 on inactive ones.
inline double kkt_residual(const Vector& w, const DistanceVector& z, const HyperParams& p) {
  if (w.size() != z.dists().size()) throw std::invalid_argument("kkt_residual: w and z lengths differ");
  const Vector s = grad_g(w, p) + 2.0 * z.dists();
  double r = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    r = std::max(r, w[k] > kEdgeActivityTol ? std::abs(s[k]) : std::max(0.0, -s[k]));
  }
  return r;
}

inline double kkt_residual(const EdgeVector& w, const DistanceVector& z, const HyperParams& p) {
  return kkt_residual(w.weights(), z, p);
}

/// Runs w <- prox_{mu h}(w - mu grad g(w)) with mu = 1/eta taken from the
/// current minimum degree. Stops once the relative iterate change and the
/// KKT residual are both within batch_tol. Should a step raise the objective
/// (the per-iterate eta is only a local Lipschitz estimate) the step is halved
/// until it descends, which keeps the objective sequence monotone.
inline BatchResult solve_batch(const DistanceVector& z, const HyperParams& p, const EdgeVector& w0) {
  p.validate();
  if (w0.n_nodes() != z.n_nodes()) throw std::invalid_argument("solve_batch: w0 and z sizes differ");
  if (!(degree(w0).minCoeff() > 0.0)) {
    throw std::invalid_argument("solve_batch: initial graph has a node with zero degree");
  }

  BatchResult res;
  const Vector& zv = z.dists();
  Vector w = w0.weights();
  Vector d = degree(w);
  double f = 2.0 * w.dot(zv) + detail::g_from_degree(w, d, p);
  Vector grad;
  Vector next;
  Vector d_next;

  // f(u) for u >= 0 given its degrees.
  const auto objective = [&](const Vector& u, const Vector& du) {
    return 2.0 * u.dot(zv) + detail::g_from_degree(u, du, p);
  };

  for (res.iterations = 0; res.iterations < p.batch_max_iters;) {
    detail::grad_from_degree(w, d, p, grad);
    grad += 2.0 * zv;
    double mu = detail::step_from_degree(d, p).mu;
    next = (w - mu * grad).cwiseMax(0.0);
    d_next = degree(next);
    double f_next = objective(next, d_next);
    int halvings = 0;
    while (!(f_next <= f + kDescentSlack) && halvings < 60) {
      mu *= 0.5;
      next = (w - mu * grad).cwiseMax(0.0);
      d_next = degree(next);
      f_next = objective(next, d_next);
      ++halvings;
    }
    res.backtracks += halvings;
    ++res.iterations;

    if (!(f_next <= f + kDescentSlack)) break;  // no descent even for a vanishing step: stationary to round-off

    const double change = (next - w).norm() / std::max(w.norm(), 1.0);
    w.swap(next);
    d.swap(d_next);
    f = f_next;

    if (change <= p.batch_tol && kkt_residual(w, z, p) <= p.batch_tol) {
      res.converged = true;
      break;
    }
  }

  res.kkt_residual = kkt_residual(w, z, p);
  res.converged = res.converged || res.kkt_residual <= p.batch_tol;
  res.final_objective = f;
  res.w_star = EdgeVector(z.n_nodes(), std::move(w));
  return res;
}

/// Starts from the uniform graph with unit degrees.
inline BatchResult solve_batch(const DistanceVector& z, const HyperParams& p) {
  return solve_batch(z, p, EdgeVector::uniform(z.n_nodes()));
}

}  // namespace smoothnet
