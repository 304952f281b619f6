#pragma once

#include <stdexcept>

#include "graph_core.hpp"

namespace smoothnet {

struct EdgeDetection {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

/// Edge-detection scores of `w_est` thresholded at `threshold` against the
/// support of `w_true`.
inline EdgeDetection f_measure(const EdgeVector& w_est, const EdgeVector& w_true, double threshold) {
  if (w_est.size() != w_true.size()) throw std::invalid_argument("f_measure: graphs differ in size");
  if (!(threshold >= 0.0)) throw std::invalid_argument("f_measure: threshold must be >= 0");
  std::size_t detected = 0;
  std::size_t truth = 0;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < w_est.size(); ++k) {
    const bool d = w_est[k] > threshold;
    const bool g = w_true[k] > 0.0;
    detected += d;
    truth += g;
    hits += d && g;
  }
  EdgeDetection r;
  if (detected == 0) {
    r.precision = truth == 0 ? 1.0 : 0.0;
  } else {
    r.precision = static_cast<double>(hits) / static_cast<double>(detected);
  }
  r.recall = truth == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(truth);
  r.f = r.precision + r.recall > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

/// ||W_t - W_prev||_F / ||W_prev||_F. The symmetric-matrix norms are sqrt(2)
/// times the edge-vector norms, which cancels.
inline double relative_deviation(const EdgeVector& w_t, const EdgeVector& w_prev) {
  if (w_t.size() != w_prev.size()) throw std::invalid_argument("relative_deviation: graphs differ in size");
  const double denom = w_prev.weights().norm();
  if (!(denom > 0.0)) throw std::domain_error("relative_deviation: previous graph is empty");
  return (w_t.weights() - w_prev.weights()).norm() / denom;
}

}  // namespace smoothnet
