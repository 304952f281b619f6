#pragma once

// Synthetic benchmark: Erdos-Renyi ground truths, a single switch to a
// partially rewired graph, and i.i.d. signals x ~ N(0, L^+ + sigma_e^2 I).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "graph_core.hpp"

namespace smoothnet {

using Rng = std::mt19937_64;

struct ScenarioConfig {
  std::size_t n_nodes = 50;
  double er_prob = 0.15;
  long long t_total = 8000;
  long long t_switch = 4000;
  double rewire_fraction = 0.4;
  double sigma_e = 0.1;
  std::uint64_t seed = 1;

  void validate() const {
    if (n_nodes < 2) throw std::invalid_argument("n_nodes must be >= 2");
    if (!(er_prob >= 0.0 && er_prob <= 1.0)) throw std::invalid_argument("er_prob must lie in [0, 1]");
    if (t_total < 1) throw std::invalid_argument("t_total must be >= 1");
    if (t_switch < 0 || t_switch > t_total) throw std::invalid_argument("t_switch must lie in [0, t_total]");
    if (!(rewire_fraction >= 0.0 && rewire_fraction <= 1.0)) {
      throw std::invalid_argument("rewire_fraction must lie in [0, 1]");
    }
    if (!(sigma_e >= 0.0)) throw std::invalid_argument("sigma_e must be >= 0");
  }
};

/// G(N, p) with unit weights on present edges.
inline EdgeVector er_graph(std::size_t n_nodes, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("er_graph: p must lie in [0, 1]");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector w(static_cast<Eigen::Index>(edge_count(n_nodes)));
  for (Eigen::Index k = 0; k < w.size(); ++k) w[k] = unit(rng) < p ? 1.0 : 0.0;
  return {n_nodes, std::move(w)};
}

/// Removes ceil(fraction |E|) uniformly chosen edges and inserts as many
/// uniformly chosen former non-edges, so |E| is unchanged. If the graph has
/// too few non-edges the remainder is drawn back from the removed edges.
inline EdgeVector rewire(const EdgeVector& w_true, double fraction, Rng& rng) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("rewire: fraction must lie in [0, 1]");
  std::vector<std::size_t> edges;
  std::vector<std::size_t> non_edges;
  for (std::size_t k = 0; k < w_true.size(); ++k) (w_true[k] > 0.0 ? edges : non_edges).push_back(k);

  const auto n_move = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(edges.size()) - 1e-9));
  std::shuffle(edges.begin(), edges.end(), rng);
  std::shuffle(non_edges.begin(), non_edges.end(), rng);

  Vector w = w_true.weights();
  std::vector<double> removed_weights;
  for (std::size_t r = 0; r < n_move; ++r) {
    removed_weights.push_back(w[edges[r]]);
    w[edges[r]] = 0.0;
  }
  std::vector<std::size_t> targets(non_edges.begin(),
                                   non_edges.begin() + std::min(n_move, non_edges.size()));
  for (std::size_t r = 0; targets.size() < n_move; ++r) targets.push_back(edges[r]);
  for (std::size_t r = 0; r < n_move; ++r) w[targets[r]] = removed_weights[r];
  return {w_true.n_nodes(), std::move(w)};
}

namespace detail {

inline void require_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("matrix is not symmetric");
  }
}

/// Eigenvalues of a symmetric matrix mapped through f, with those at or
/// below tol * lambda_max sent to zero instead.
template <typename F>
Matrix spectral_map(const Matrix& m, double tol, F&& f) {
  require_symmetric(m);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  if (eig.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const Vector& lambda = eig.eigenvalues();
  const double cutoff = tol * std::max(lambda.maxCoeff(), 0.0);
  Vector mapped(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    mapped[i] = (lambda[i] > cutoff && lambda[i] > 0.0) ? f(lambda[i]) : 0.0;
  }
  return eig.eigenvectors() * mapped.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace detail

/// Moore-Penrose pseudoinverse of a symmetric PSD matrix.
inline Matrix pinv_psd(const Matrix& l, double tol = 1e-10) {
  return detail::spectral_map(l, tol, [](double lambda) { return 1.0 / lambda; });
}

/// Draws x = (L^+)^{1/2} u + sigma_e v. The square root is computed once at
/// construction, so repeated draws cost O(N^2).
class SmoothSampler {
 public:
  SmoothSampler(const Matrix& laplacian, double sigma_e, double tol = 1e-10)
      : root_(detail::spectral_map(laplacian, tol, [](double lambda) { return 1.0 / std::sqrt(lambda); })),
        sigma_e_(sigma_e) {
    if (!(sigma_e >= 0.0)) throw std::invalid_argument("SmoothSampler: sigma_e must be >= 0");
  }

  Vector operator()(Rng& rng) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = root_.rows();
    Vector u(n);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) u[i] = normal(rng);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
    return root_ * u + sigma_e_ * v;
  }

  const Matrix& root() const noexcept { return root_; }

 private:
  Matrix root_;
  double sigma_e_;
};

inline Vector smooth_sampler(const Matrix& laplacian, double sigma_e, Rng& rng) {
  return SmoothSampler(laplacian, sigma_e)(rng);
}

struct Scenario {
  /// One ground truth per segment; segment s covers samples
  /// [segments[s].t, next segment's t) with 1-based t.
  std::vector<GraphSnapshot> segments;
  std::vector<Vector> signals;

  const EdgeVector& truth_at(long long t) const { return smoothnet::truth_at(segments, t); }
};

inline Scenario generate_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  Scenario sc;
  EdgeVector g1 = er_graph(cfg.n_nodes, cfg.er_prob, rng);
  sc.segments.emplace_back(1, g1);
  if (cfg.t_switch < cfg.t_total) {
    EdgeVector g2 = rewire(g1, cfg.rewire_fraction, rng);
    sc.segments.emplace_back(cfg.t_switch + 1, std::move(g2));
  }
  sc.signals.reserve(static_cast<std::size_t>(cfg.t_total));
  for (std::size_t s = 0; s < sc.segments.size(); ++s) {
    const long long end = s + 1 < sc.segments.size() ? sc.segments[s + 1].t : cfg.t_total + 1;
    const SmoothSampler sampler(laplacian(sc.segments[s].edges), cfg.sigma_e);
    for (long long t = sc.segments[s].t; t < end; ++t) sc.signals.push_back(sampler(rng));
  }
  return sc;
}

}  // namespace smoothnet
