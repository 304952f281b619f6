#pragma once

// Edge-vector algebra shared by every solver: upper-triangular indexing,
// degrees, Laplacian reconstruction, total variation and pairwise distances.
//
// Nodes are 0-based everywhere in this header. External formats (JSON, CSV)
// use 1-based labels and convert at the boundary.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace smoothnet {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Number of unordered node pairs, N(N-1)/2.
constexpr std::size_t edge_count(std::size_t n_nodes) noexcept {
  return n_nodes * (n_nodes - 1) / 2;
}

/// Recovers N from a pair count; throws if `m` is not N(N-1)/2 for some N >= 2.
inline std::size_t node_count_for(std::size_t m) {
  const auto n = static_cast<std::size_t>(
      std::llround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(m))) / 2.0));
  if (n < 2 || edge_count(n) != m) {
    throw std::invalid_argument("vector length " + std::to_string(m) +
                                " is not N(N-1)/2 for any N >= 2");
  }
  return n;
}

/// Linear position of pair (i, j), i < j, in lexicographic upper-triangular
/// order (0,1),(0,2),...,(0,N-1),(1,2),...
inline std::size_t edge_index(std::size_t i, std::size_t j, std::size_t n_nodes) {
  if (i >= j || j >= n_nodes) {
    throw std::invalid_argument("edge_index: need i < j < N, got (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") with N=" + std::to_string(n_nodes));
  }
  // Rows 0..i-1 contribute (N-1) + (N-2) + ... + (N-i) pairs.
  return i * (2 * n_nodes - i - 1) / 2 + (j - i - 1);
}

/// Inverse of edge_index.
inline std::pair<std::size_t, std::size_t> edge_pair(std::size_t k, std::size_t n_nodes) {
  if (n_nodes < 2 || k >= edge_count(n_nodes)) {
    throw std::invalid_argument("edge_pair: index " + std::to_string(k) + " out of range for N=" +
                                std::to_string(n_nodes));
  }
  std::size_t i = 0;
  std::size_t row_len = n_nodes - 1;
  while (k >= row_len) {
    k -= row_len;
    ++i;
    --row_len;
  }
  return {i, i + 1 + k};
}

/// Calls f(i, j, k) for every pair i < j with its linear index k.
template <typename F>
void for_each_pair(std::size_t n_nodes, F&& f) {
  std::size_t k = 0;
  for (std::size_t i = 0; i + 1 < n_nodes; ++i) {
    for (std::size_t j = i + 1; j < n_nodes; ++j, ++k) {
      f(i, j, k);
    }
  }
}

namespace detail {

inline void require_length(const Vector& v, std::size_t n_nodes, const char* what) {
  if (static_cast<std::size_t>(v.size()) != edge_count(n_nodes)) {
    throw std::invalid_argument(std::string(what) + ": expected length " +
                                std::to_string(edge_count(n_nodes)) + ", got " +
                                std::to_string(v.size()));
  }
}

inline void require_nonnegative(const Vector& v, const char* what) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (!(v[k] >= 0.0) || !std::isfinite(v[k])) {
      throw std::invalid_argument(std::string(what) + ": entry " + std::to_string(k) +
                                  " is negative or non-finite");
    }
  }
}

}  // namespace detail

/// Non-negative edge weights of an undirected graph without self-loops,
/// stored as the upper triangle of the adjacency matrix.
class EdgeVector {
 public:
  EdgeVector() = default;

  /// All-zero graph on `n_nodes` nodes.
  explicit EdgeVector(std::size_t n_nodes) : n_(n_nodes), w_(Vector::Zero(edge_count(n_nodes))) {
    if (n_nodes < 2) throw std::invalid_argument("EdgeVector: need at least 2 nodes");
  }

  EdgeVector(std::size_t n_nodes, Vector weights) : n_(n_nodes), w_(std::move(weights)) {
    if (n_nodes < 2) throw std::invalid_argument("EdgeVector: need at least 2 nodes");
    detail::require_length(w_, n_, "EdgeVector");
    detail::require_nonnegative(w_, "EdgeVector");
  }

  /// Infers N from the vector length.
  explicit EdgeVector(Vector weights) : n_(node_count_for(weights.size())), w_(std::move(weights)) {
    detail::require_nonnegative(w_, "EdgeVector");
  }

  /// Uniform weights 1/(N-1), giving every node unit degree.
  static EdgeVector uniform(std::size_t n_nodes) {
    return {n_nodes, Vector::Constant(edge_count(n_nodes), 1.0 / static_cast<double>(n_nodes - 1))};
  }

  std::size_t n_nodes() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(w_.size()); }
  const Vector& weights() const noexcept { return w_; }
  double operator[](std::size_t k) const { return w_[static_cast<Eigen::Index>(k)]; }
  double at(std::size_t i, std::size_t j) const { return w_[static_cast<Eigen::Index>(edge_index(i, j, n_))]; }

  /// Number of entries strictly above `threshold`.
  std::size_t support_size(double threshold = 0.0) const {
    return static_cast<std::size_t>((w_.array() > threshold).count());
  }

  friend bool operator==(const EdgeVector& a, const EdgeVector& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

 private:
  std::size_t n_ = 0;
  Vector w_;
};

/// Squared pairwise signal distances in the same pair order as EdgeVector.
class DistanceVector {
 public:
  DistanceVector() = default;

  explicit DistanceVector(std::size_t n_nodes) : n_(n_nodes), z_(Vector::Zero(edge_count(n_nodes))) {
    if (n_nodes < 2) throw std::invalid_argument("DistanceVector: need at least 2 nodes");
  }

  DistanceVector(std::size_t n_nodes, Vector dists) : n_(n_nodes), z_(std::move(dists)) {
    if (n_nodes < 2) throw std::invalid_argument("DistanceVector: need at least 2 nodes");
    detail::require_length(z_, n_, "DistanceVector");
    detail::require_nonnegative(z_, "DistanceVector");
  }

  explicit DistanceVector(Vector dists) : n_(node_count_for(dists.size())), z_(std::move(dists)) {
    detail::require_nonnegative(z_, "DistanceVector");
  }

  std::size_t n_nodes() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(z_.size()); }
  const Vector& dists() const noexcept { return z_; }
  double operator[](std::size_t k) const { return z_[static_cast<Eigen::Index>(k)]; }

  friend bool operator==(const DistanceVector& a, const DistanceVector& b) {
    return a.n_ == b.n_ && a.z_ == b.z_;
  }

 private:
  std::size_t n_ = 0;
  Vector z_;
};

/// Node degrees d = Sw, computed without forming S. `w` may hold any sign.
inline Vector degree(const Vector& w) {
  const std::size_t n = node_count_for(w.size());
  Vector d = Vector::Zero(static_cast<Eigen::Index>(n));
  for_each_pair(n, [&](std::size_t i, std::size_t j, std::size_t k) {
    d[i] += w[k];
    d[j] += w[k];
  });
  return d;
}

inline Vector degree(const EdgeVector& w) { return degree(w.weights()); }

/// Symmetric adjacency matrix with zero diagonal.
inline Matrix adjacency(const EdgeVector& w) {
  const auto n = static_cast<Eigen::Index>(w.n_nodes());
  Matrix a = Matrix::Zero(n, n);
  for_each_pair(w.n_nodes(), [&](std::size_t i, std::size_t j, std::size_t k) {
    a(i, j) = a(j, i) = w[k];
  });
  return a;
}

/// Combinatorial Laplacian diag(d) - W.
inline Matrix laplacian(const EdgeVector& w) {
  Matrix l = -adjacency(w);
  l.diagonal() = degree(w);
  return l;
}

/// Dirichlet energy x^T L x, evaluated edge-wise.
inline double total_variation(const Vector& x, const EdgeVector& w) {
  if (static_cast<std::size_t>(x.size()) != w.n_nodes()) {
    throw std::invalid_argument("total_variation: signal has " + std::to_string(x.size()) +
                                " entries but graph has " + std::to_string(w.n_nodes()) + " nodes");
  }
  double tv = 0.0;
  for_each_pair(w.n_nodes(), [&](std::size_t i, std::size_t j, std::size_t k) {
    const double diff = x[i] - x[j];
    tv += w[k] * diff * diff;
  });
  return tv;
}

/// z_k = (x_i - x_j)^2 for a single graph signal.
inline DistanceVector distance_vector(const Vector& x) {
  const auto n = static_cast<std::size_t>(x.size());
  if (n < 2) throw std::invalid_argument("distance_vector: need at least 2 nodes");
  if (!x.allFinite()) throw std::invalid_argument("distance_vector: signal has non-finite entries");
  Vector z(static_cast<Eigen::Index>(edge_count(n)));
  for_each_pair(n, [&](std::size_t i, std::size_t j, std::size_t k) {
    const double diff = x[i] - x[j];
    z[k] = diff * diff;
  });
  return {n, std::move(z)};
}

/// Squared Euclidean distances between the rows of an N x T signal matrix.
inline DistanceVector distance_vector_batch(const Matrix& x) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (x.cols() < 1) throw std::invalid_argument("distance_vector_batch: need at least one sample");
  if (n < 2) throw std::invalid_argument("distance_vector_batch: need at least 2 nodes");
  if (!x.allFinite()) throw std::invalid_argument("distance_vector_batch: non-finite entries");
  Vector z(static_cast<Eigen::Index>(edge_count(n)));
  for_each_pair(n, [&](std::size_t i, std::size_t j, std::size_t k) {
    z[k] = (x.row(i) - x.row(j)).squaredNorm();
  });
  return {n, std::move(z)};
}

/// A learned or ground-truth graph at sample index t.
struct GraphSnapshot {
  long long t = 0;
  EdgeVector edges;
  Vector degrees;

  GraphSnapshot() = default;
  GraphSnapshot(long long t_, EdgeVector e) : t(t_), edges(std::move(e)), degrees(degree(edges)) {}
};

/// Graph in force at sample t within a piecewise-constant sequence: the last
/// snapshot with snapshot.t <= t, or the first one if t precedes them all.
inline const EdgeVector& truth_at(const std::vector<GraphSnapshot>& segments, long long t) {
  if (segments.empty()) throw std::invalid_argument("truth_at: no segments");
  const GraphSnapshot* cur = &segments.front();
  for (const auto& s : segments) {
    if (s.t <= t) cur = &s;
  }
  return cur->edges;
}

}  // namespace smoothnet
