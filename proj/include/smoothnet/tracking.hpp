#pragma once

// Tracking-error bounds for the online learner against the sequence of
// per-sample batch optima.
//
// Indexing used throughout: at sample k = 0, 1, ... the learner holds the
// iterate w_k it is about to step from, w_k* minimizes F with zbar_k, and
// err_k = ||w_k - w_k*||. L_k is the contraction factor of step k and
// v_k = ||w_{k+1}* - w_k*||. The bound is
//   err_k <= Ltil_{k-1} (err_0 + sum_{tau<k} v_tau / Ltil_tau),
//   Ltil_k = L_1 ... L_k, Ltil_0 = 1.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "graph_core.hpp"

namespace smoothnet {

/// max{|1 - 4 mu beta|, |1 - mu eta|}
inline double contraction_factor(double mu, double beta, double eta) {
  return std::max(std::abs(1.0 - 4.0 * mu * beta), std::abs(1.0 - mu * eta));
}

/// Euclidean distances between consecutive optima; one entry fewer than the input.
inline std::vector<double> path_variation(const std::vector<EdgeVector>& optima) {
  if (optima.size() < 2) throw std::invalid_argument("path_variation: need at least two optima");
  std::vector<double> v;
  v.reserve(optima.size() - 1);
  for (std::size_t k = 0; k + 1 < optima.size(); ++k) {
    if (optima[k].size() != optima[k + 1].size()) throw std::invalid_argument("path_variation: size mismatch");
    v.push_back((optima[k + 1].weights() - optima[k].weights()).norm());
  }
  return v;
}

/// Bound sequence bound_0 .. bound_n for n = v.size(). `contraction[k]` is
/// L_k; L_0 never enters because Ltil_0 = 1. Evaluated through the equivalent
/// recursion bound_1 = bound_0 + v_0, bound_k = L_{k-1} bound_{k-1} + v_{k-1},
/// which stays finite when some L_k is zero.
inline std::vector<double> tracking_bound(double e0, const std::vector<double>& contraction,
                                          const std::vector<double>& v) {
  if (contraction.size() != v.size()) throw std::invalid_argument("tracking_bound: series lengths differ");
  if (!(e0 >= 0.0)) throw std::invalid_argument("tracking_bound: e0 must be >= 0");
  std::vector<double> bound(v.size() + 1);
  bound[0] = e0;
  for (std::size_t k = 1; k <= v.size(); ++k) {
    const double l = k == 1 ? 1.0 : contraction[k - 1];
    bound[k] = l * bound[k - 1] + v[k - 1];
  }
  return bound;
}

/// Closed-form envelope using the running maxima of L and v:
/// L_hat^t e0 + v_hat / (1 - L_hat).
inline double simplified_bound(double e0, double l_hat, double v_hat, long long t) {
  if (!(l_hat >= 0.0 && l_hat < 1.0)) throw std::invalid_argument("simplified_bound: need 0 <= L_hat < 1");
  return std::pow(l_hat, static_cast<double>(t)) * e0 + v_hat / (1.0 - l_hat);
}

struct SuboptimalityBound {
  double linear = 0.0;   // (eta / 2) err
  double squared = 0.0;  // (eta / 2) err^2
};

inline SuboptimalityBound suboptimality_bound(double err, double eta) {
  if (!(err >= 0.0 && eta >= 0.0)) throw std::invalid_argument("suboptimality_bound: negative input");
  return {0.5 * eta * err, 0.5 * eta * err * err};
}

/// One analysed sample.
struct TrackingRecord {
  long long t = 0;  // 1-based sample index
  double err = 0.0;
  double contraction = 0.0;
  double contraction_product = 0.0;  // Ltil
  double v = 0.0;                    // distance to the next optimum, 0 for the last sample
  double bound = 0.0;
  double simplified = 0.0;
  SuboptimalityBound subopt;
};

/// Assembles the per-sample series from the recorded errors, contraction
/// factors, optima distances and step constants. All inputs share length n;
/// the last entry of `v` is ignored by the bound.
inline std::vector<TrackingRecord> tracking_series(const std::vector<double>& err,
                                                   const std::vector<double>& contraction,
                                                   const std::vector<double>& v,
                                                   const std::vector<double>& eta) {
  const std::size_t n = err.size();
  if (contraction.size() != n || v.size() != n || eta.size() != n) {
    throw std::invalid_argument("tracking_series: series lengths differ");
  }
  std::vector<TrackingRecord> out(n);
  if (n == 0) return out;
  const std::vector<double> v_head(v.begin(), v.end() - 1);
  const std::vector<double> l_head(contraction.begin(), contraction.end() - 1);
  const std::vector<double> bound = tracking_bound(err[0], l_head, v_head);

  double l_prod = 1.0;
  double l_hat = 0.0;
  double v_hat = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= 1) l_prod *= contraction[k];
    l_hat = std::max(l_hat, contraction[k]);
    v_hat = std::max(v_hat, v[k]);
    auto& r = out[k];
    r.t = static_cast<long long>(k) + 1;
    r.err = err[k];
    r.contraction = contraction[k];
    r.contraction_product = l_prod;
    r.v = v[k];
    r.bound = bound[k];
    // Ltil_{k-1} holds k-1 factors, so that is the exponent that keeps the
    // envelope above bound_k.
    r.simplified = l_hat < 1.0 ? simplified_bound(err[0], l_hat, v_hat, k == 0 ? 0 : static_cast<long long>(k) - 1)
                               : std::numeric_limits<double>::infinity();
    r.subopt = suboptimality_bound(err[k], eta[k]);
  }
  return out;
}

}  // namespace smoothnet
