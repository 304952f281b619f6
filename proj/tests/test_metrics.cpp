#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace smoothnet;
using Catch::Approx;
using testing_support::ev;

TEST_CASE("f_measure examples", "[metrics]") {
  const EdgeVector truth = ev({1, 1, 0, 0, 1, 0});
  const EdgeDetection perfect = f_measure(truth, truth, 1e-4);
  CHECK(perfect.precision == 1.0);
  CHECK(perfect.recall == 1.0);
  CHECK(perfect.f == 1.0);

  // detected {(1,2)}, true {(1,2),(1,3)}
  const EdgeDetection half = f_measure(ev({0.7, 0, 0}), ev({1, 1, 0}), 1e-4);
  CHECK(half.precision == 1.0);
  CHECK(half.recall == 0.5);
  CHECK(half.f == Approx(2.0 / 3.0).epsilon(1e-15));

  const EdgeDetection none = f_measure(ev({0, 0, 0}), ev({1, 1, 0}), 1e-4);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f == 0.0);

  const EdgeDetection both_empty = f_measure(ev({0, 0, 0}), ev({0, 0, 0}), 1e-4);
  CHECK(both_empty.precision == 1.0);
  CHECK(both_empty.recall == 1.0);
}

TEST_CASE("f_measure thresholds strictly", "[metrics]") {
  CHECK(f_measure(ev({1e-4, 0, 0}), ev({1, 0, 0}), 1e-4).recall == 0.0);
  CHECK(f_measure(ev({2e-4, 0, 0}), ev({1, 0, 0}), 1e-4).recall == 1.0);
  CHECK_THROWS_AS(f_measure(ev({1}), ev({1, 0, 0}), 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(f_measure(ev({1}), ev({1}), -1.0), std::invalid_argument);
}

TEST_CASE("f_measure is invariant to joint rescaling", "[metrics][property]") {
  Rng rng(61);
  for (int rep = 0; rep < 100; ++rep) {
    const EdgeVector est = testing_support::random_edges(8, 0.0, 1.0, rng);
    const EdgeVector truth = er_graph(8, 0.4, rng);
    const double c = std::uniform_real_distribution<double>(0.01, 100.0)(rng);
    const EdgeDetection a = f_measure(est, truth, 0.5);
    const EdgeDetection b = f_measure(EdgeVector(8, c * est.weights()), truth, 0.5 * c);
    REQUIRE(a.f == b.f);
    REQUIRE(a.precision == b.precision);
  }
}

TEST_CASE("relative_deviation examples", "[metrics]") {
  const EdgeVector w = ev({0.5, 1.5, 2});
  CHECK(relative_deviation(w, w) == 0.0);
  CHECK(relative_deviation(ev({2, 0, 0}), ev({1, 0, 0})) == 1.0);
  CHECK(relative_deviation(EdgeVector(3, 2.0 * w.weights()), w) == Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(relative_deviation(w, ev({0, 0, 0})), std::domain_error);
  CHECK_THROWS_AS(relative_deviation(w, ev({1})), std::invalid_argument);
}

TEST_CASE("relative_deviation matches the adjacency Frobenius ratio and is scale invariant",
          "[metrics][property]") {
  Rng rng(62);
  for (int rep = 0; rep < 100; ++rep) {
    const EdgeVector a = testing_support::random_edges(7, 0.0, 1.0, rng);
    const EdgeVector b = testing_support::random_edges(7, 0.1, 1.0, rng);
    const double frob = (adjacency(a) - adjacency(b)).norm() / adjacency(b).norm();
    REQUIRE(relative_deviation(a, b) == Approx(frob).epsilon(1e-13));
    const double c = std::uniform_real_distribution<double>(0.01, 100.0)(rng);
    REQUIRE(relative_deviation(EdgeVector(7, c * a.weights()), EdgeVector(7, c * b.weights())) ==
            Approx(relative_deviation(a, b)).epsilon(1e-13));
  }
}
