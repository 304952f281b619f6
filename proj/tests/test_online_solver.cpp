#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_support.hpp"

using namespace smoothnet;
using Catch::Approx;
using testing_support::dv;
using testing_support::ev;
using testing_support::vec;

TEST_CASE("ema_update examples", "[online]") {
  CHECK(ema_update(dv({1, 1, 1}), dv({3, 5, 1}), 0.5).dists() == vec({2, 3, 1}));
  const DistanceVector z = dv({0.3, 7, 2});
  CHECK(ema_update(z, z, 0.37).dists().isApprox(z.dists(), 1e-15));
  CHECK(ema_update(dv({0}), dv({4}), 0.25).dists() == vec({1}));
  CHECK_THROWS_AS(ema_update(dv({0}), dv({4}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ema_update(dv({0}), dv({4}), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ema_update(dv({0}), dv({4, 1, 1}), 0.5), std::invalid_argument);
}

TEST_CASE("EMA bias from a zero start decays geometrically", "[online][property]") {
  Rng rng(41);
  const DistanceVector z = testing_support::random_dists(8, 0.1, 3.0, rng);
  for (const double gamma : {0.01, 0.1, 0.5}) {
    DistanceVector zbar(8);
    for (int t = 1; t <= 100; ++t) {
      zbar = ema_update(zbar, z, gamma);
      const double expected = std::pow(1.0 - gamma, t) * z.dists().norm();
      REQUIRE(std::abs((zbar.dists() - z.dists()).norm() - expected) <= 4.0 * t * 2.3e-16 * z.dists().norm());
    }
  }
}

TEST_CASE("online_step hand trace for a single edge", "[online]") {
  HyperParams p;
  p.alpha = 1.0;
  p.beta = 0.25;
  p.gamma = 0.5;
  const OnlineState s0(ev({1}), DistanceVector(2));
  const OnlineState s1 = online_step(s0, dv({0}), p);
  CHECK(s1.t == 1);
  CHECK(s1.eta == 3.0);
  CHECK(s1.mu == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(s1.w[0] == Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(s1.z_bar.dists() == vec({0}));
  CHECK_FALSE(s1.clamped);
}

TEST_CASE("online_step thresholds with the updated average", "[online]") {
  HyperParams p;
  p.alpha = 1.0;
  p.beta = 0.25;
  p.gamma = 0.5;
  const OnlineState s0(ev({1}), DistanceVector(2));
  // zbar_t = 0.5 * 1.2: w = 1 + 1/3 - 2/3 * 0.6 = 0.9333...
  const OnlineState s1 = online_step(s0, dv({1.2}), p);
  CHECK(s1.w[0] == Approx(1.0 + 1.0 / 3.0 - 2.0 / 3.0 * 0.6).epsilon(1e-14));
  // A huge distance saturates the threshold.
  const OnlineState s2 = online_step(s0, dv({1e6}), p);
  CHECK(s2.w[0] == 0.0);
}

TEST_CASE("online_step is stationary at a fixed point", "[online]") {
  HyperParams p;
  p.alpha = 1.0;
  p.beta = 0.25;
  const DistanceVector z = dv({0.5, 1.0, 2.0});
  const BatchResult opt = solve_batch(z, p);
  REQUIRE(opt.converged);
  const OnlineState s0(opt.w_star, z);
  const OnlineState s1 = online_step(s0, z, p);
  CHECK((s1.w.weights() - opt.w_star.weights()).norm() <= 1e-7);
}

TEST_CASE("online_step rejects mismatched samples", "[online]") {
  const OnlineState s = OnlineState::initial(3);
  CHECK_THROWS_AS(online_step(s, dv({1}), HyperParams{}), std::invalid_argument);
  CHECK_THROWS_AS(OnlineState(ev({1}), DistanceVector(3)), std::invalid_argument);
  OnlineLearner learner(HyperParams{}, 3);
  CHECK_THROWS_AS(learner.push(vec({1, 2})), std::invalid_argument);
}

TEST_CASE("online_step records clamping on an isolated node", "[online]") {
  OnlineState s(ev({1, 0, 0}), DistanceVector(3));
  const OnlineState next = online_step(s, dv({0, 0, 0}), HyperParams{});
  CHECK(next.clamped);
  CHECK(next.clamp_events == 1);
  CHECK(next.w.weights().allFinite());
}

TEST_CASE("run_online on an empty stream", "[online]") {
  const OnlineRun r = run_online({}, HyperParams{});
  CHECK(r.snapshots.empty());
  CHECK(r.diagnostics.empty());
}

TEST_CASE("run_online rejects inconsistent lengths", "[online]") {
  CHECK_THROWS_AS(run_online({vec({1, 2, 3}), vec({1, 2})}, HyperParams{}), std::invalid_argument);
}

TEST_CASE("constant stream converges to the batch solution", "[online]") {
  HyperParams p;
  p.gamma = 0.05;
  const Vector x = vec({0.0, 0.3, 1.0, 1.2, 2.5});
  const std::vector<Vector> stream(5000, x);
  const OnlineRun run = run_online(stream, p);
  REQUIRE(run.snapshots.size() == 5000);
  const DistanceVector z = distance_vector(x);
  const BatchResult opt = solve_batch(z, p);
  REQUIRE(opt.converged);
  const double f_online = eval_F(run.snapshots.back().edges, z, p);
  CHECK(std::abs(f_online - opt.final_objective) / std::abs(opt.final_objective) <= 1e-4);
  CHECK(run.diagnostics.back().t == 5000);
  CHECK(run.snapshots.back().t == 5000);
  for (const auto& s : run.snapshots) REQUIRE(s.edges.weights().minCoeff() >= 0.0);
}

TEST_CASE("OnlineLearner diagnostics evaluate the post-step iterate", "[online]") {
  HyperParams p;
  OnlineLearner learner(p, 4);
  const StepDiagnostics d = learner.push(vec({0.1, -0.2, 0.4, 1.0}));
  CHECK(d.t == 1);
  CHECK(d.objective == eval_F(learner.state().w, learner.state().z_bar, p));
  CHECK(d.mu == learner.state().mu);
  CHECK(d.min_degree == 1.0);  // uniform start
  CHECK(learner.snapshot().t == 1);
}

TEST_CASE("contraction factor stays below one along a run", "[online][property]") {
  Rng rng(42);
  ScenarioConfig cfg;
  cfg.n_nodes = 12;
  cfg.er_prob = 0.3;
  cfg.t_total = 600;
  cfg.t_switch = 300;
  cfg.seed = 9;
  const Scenario sc = generate_scenario(cfg);
  HyperParams p;
  OnlineLearner learner(p, cfg.n_nodes);
  for (const auto& x : sc.signals) {
    learner.push(x);
    const auto& s = learner.state();
    REQUIRE(s.mu > 0.0);
    REQUIRE(contraction_factor(s.mu, p.beta, s.eta) < 1.0);
  }
}
