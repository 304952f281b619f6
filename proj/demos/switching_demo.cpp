// Streams signals from a graph that rewires halfway through and prints how
// well the online estimate recovers the active graph.
//
//   switching_demo [seed]

#include <cstdio>
#include <cstdlib>

#include "smoothnet/smoothnet.hpp"

using namespace smoothnet;

int main(int argc, char** argv) {
  ScenarioConfig cfg;
  cfg.n_nodes = 20;
  cfg.er_prob = 0.3;
  cfg.t_total = 4000;
  cfg.t_switch = 2000;
  cfg.seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;

  HyperParams p;
  p.alpha = 0.1;
  p.beta = 0.3;
  p.gamma = 0.002;

  const Scenario sc = generate_scenario(cfg);
  std::printf("N=%zu, %zu true edges, switch after t=%lld\n", cfg.n_nodes, sc.segments[0].edges.support_size(),
              cfg.t_switch);
  std::printf("%6s %9s %9s %9s %12s\n", "t", "F", "precision", "recall", "objective");

  OnlineLearner learner(p, cfg.n_nodes);
  for (std::size_t k = 0; k < sc.signals.size(); ++k) {
    const StepDiagnostics d = learner.push(sc.signals[k]);
    if (d.t % 250 != 0) continue;
    const EdgeDetection e = f_measure(learner.state().w, sc.truth_at(d.t), p.edge_threshold);
    std::printf("%6lld %9.3f %9.3f %9.3f %12.5f\n", d.t, e.f, e.precision, e.recall, d.objective);
  }
  return 0;
}
