#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <random>
#include <string>

#include "smoothnet/smoothnet.hpp"

namespace testing_support {

using smoothnet::Rng;
using smoothnet::Vector;

inline Vector vec(std::initializer_list<double> x) {
  Vector v(static_cast<Eigen::Index>(x.size()));
  Eigen::Index k = 0;
  for (const double e : x) v[k++] = e;
  return v;
}

inline smoothnet::EdgeVector ev(std::initializer_list<double> w) { return smoothnet::EdgeVector(vec(w)); }

inline smoothnet::DistanceVector dv(std::initializer_list<double> z) { return smoothnet::DistanceVector(vec(z)); }

inline Vector uniform_vector(Eigen::Index n, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v[k] = u(rng);
  return v;
}

inline Vector normal_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v[k] = g(rng);
  return v;
}

/// Random edge vector with every entry in [lo, hi].
inline smoothnet::EdgeVector random_edges(std::size_t n, double lo, double hi, Rng& rng) {
  return {n, uniform_vector(static_cast<Eigen::Index>(smoothnet::edge_count(n)), lo, hi, rng)};
}

inline smoothnet::DistanceVector random_dists(std::size_t n, double lo, double hi, Rng& rng) {
  return {n, uniform_vector(static_cast<Eigen::Index>(smoothnet::edge_count(n)), lo, hi, rng)};
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("smoothnet_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing_support
