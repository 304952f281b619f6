#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_support.hpp"

using namespace smoothnet;
using Catch::Approx;
using testing_support::dv;
using testing_support::vec;

namespace {

HyperParams ab(double alpha, double beta) {
  HyperParams p;
  p.alpha = alpha;
  p.beta = beta;
  return p;
}

// Positive root of 4 beta w^2 + 2 z w - 2 alpha = 0 (single edge).
double n2_root(double z, double alpha, double beta) {
  return (-z + std::sqrt(z * z + 8.0 * beta * alpha)) / (4.0 * beta);
}

// Signals from a random smooth model, summarised as mean squared distances.
DistanceVector smooth_instance(std::size_t n, Rng& rng) {
  const EdgeVector g = er_graph(n, 0.4, rng);
  const SmoothSampler sampler(laplacian(g), 0.3);
  Matrix x(static_cast<Eigen::Index>(n), 40);
  for (Eigen::Index t = 0; t < x.cols(); ++t) x.col(t) = sampler(rng);
  return {n, distance_vector_batch(x).dists() / 40.0};
}

}  // namespace

TEST_CASE("single-edge problems match the closed form", "[batch]") {
  const BatchResult r0 = solve_batch(dv({0}), ab(1, 0.25));
  CHECK(r0.converged);
  CHECK(std::abs(r0.w_star[0] - std::sqrt(2.0)) <= 1e-8);
  CHECK(r0.final_objective == Approx(1.0 - std::log(2.0)).epsilon(1e-10));

  const BatchResult r1 = solve_batch(dv({1}), ab(1, 0.25));
  CHECK(std::abs(r1.w_star[0] - (std::sqrt(3.0) - 1.0)) <= 1e-8);
  CHECK(std::abs(n2_root(1, 1, 0.25) - (std::sqrt(3.0) - 1.0)) <= 1e-15);
}

TEST_CASE("three nodes with equal distances give the symmetric solution", "[batch]") {
  const BatchResult r = solve_batch(dv({0, 0, 0}), ab(1, 0.25));
  CHECK(r.converged);
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(r.w_star[k] - 1.0) <= 1e-8);
}

TEST_CASE("kkt_residual examples", "[batch]") {
  const HyperParams p = ab(1, 0.25);
  CHECK(kkt_residual(vec({std::sqrt(2.0)}), dv({0}), p) <= 1e-8);
  CHECK(kkt_residual(vec({std::sqrt(2.0)}), dv({10}), p) == Approx(20.0).epsilon(1e-12));
  // Interior stationary point: z chosen so that grad g(w) = -2z.
  const Vector w = vec({0.7, 1.1, 0.4});
  const Vector g = grad_g(w, p);
  REQUIRE((g.array() < 0).all());
  CHECK(kkt_residual(w, DistanceVector(3, -0.5 * g), p) == Approx(0.0).margin(1e-14));
  // An inactive edge only needs a non-negative reduced gradient.
  const Vector w_inactive = vec({0.0, 1.0, 1.0});
  const Vector s = grad_g(w_inactive, p);
  Vector z = -0.5 * s;
  z[0] = 10.0;
  CHECK(kkt_residual(w_inactive, DistanceVector(3, z), p) == Approx(0.0).margin(1e-14));
}

TEST_CASE("solve_batch rejects a start with an isolated node", "[batch]") {
  CHECK_THROWS_AS(solve_batch(dv({1, 1, 1}), ab(1, 1), testing_support::ev({1, 0, 0})), std::invalid_argument);
  CHECK_THROWS_AS(solve_batch(dv({1, 1, 1}), ab(1, 1), EdgeVector::uniform(4)), std::invalid_argument);
}

TEST_CASE("exhausted iteration budget reports non-convergence", "[batch]") {
  Rng rng(31);
  HyperParams p = ab(1, 0.25);
  p.batch_max_iters = 3;
  const BatchResult r = solve_batch(smooth_instance(10, rng), p);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
  CHECK(r.kkt_residual > p.batch_tol);
}

TEST_CASE("batch solutions are certified, positive-degree and unique", "[batch][property]") {
  Rng rng(32);
  const HyperParams p = ab(1, 0.25);
  for (int rep = 0; rep < 6; ++rep) {
    const std::size_t n = 4 + static_cast<std::size_t>(rep);
    const DistanceVector z = smooth_instance(n, rng);
    const BatchResult a = solve_batch(z, p);
    REQUIRE(a.converged);
    REQUIRE(a.kkt_residual <= p.batch_tol);
    REQUIRE(degree(a.w_star).minCoeff() > 0.0);

    const BatchResult b = solve_batch(z, p, testing_support::random_edges(n, 0.5, 3.0, rng));
    REQUIRE(b.converged);
    REQUIRE((a.w_star.weights() - b.w_star.weights()).norm() <= 10 * p.batch_tol * std::max(1.0, a.w_star.weights().norm()));

    // Fixed point of the proximal-gradient map.
    const StepSize s = step_size(a.w_star, p);
    const EdgeVector fp = prox_h(a.w_star.weights() - s.mu * grad_g(a.w_star.weights(), p), z, s.mu);
    REQUIRE((fp.weights() - a.w_star.weights()).norm() <= p.batch_tol * std::max(1.0, a.w_star.weights().norm()));
  }
}

TEST_CASE("proximal-gradient iterates descend monotonically", "[batch][property]") {
  Rng rng(33);
  const HyperParams p = ab(0.8, 0.4);
  for (int rep = 0; rep < 5; ++rep) {
    const std::size_t n = 6 + static_cast<std::size_t>(rep);
    const DistanceVector z = smooth_instance(n, rng);
    EdgeVector w = EdgeVector::uniform(n);
    double f = eval_F(w, z, p);
    // Replays the iteration one step at a time through the public pieces.
    for (int k = 0; k < 300; ++k) {
      HyperParams one = p;
      one.batch_max_iters = 1;
      const BatchResult r = solve_batch(z, one, w);
      REQUIRE(r.final_objective <= f + kDescentSlack);
      REQUIRE(r.final_objective == Approx(eval_F(r.w_star, z, p)).epsilon(1e-12));
      f = r.final_objective;
      w = r.w_star;
    }
  }
}

TEST_CASE("larger distances produce sparser solutions", "[batch]") {
  const HyperParams p = ab(1, 0.25);
  const BatchResult r = solve_batch(dv({0, 0, 5, 0, 5, 5}), p);  // N = 4, node 4 far away
  CHECK(r.converged);
  CHECK(r.w_star.at(0, 1) > r.w_star.at(0, 3));
  CHECK(degree(r.w_star).minCoeff() > 0.0);
}
