#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "smoothnet/cli.hpp"

int main(int argc, char** argv) {
  using namespace smoothnet;
  CLI::App app{"Online graph topology learning from smooth signals"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommandOptions opt;
  std::string transform = "raw";
  std::string returns = "simple";
  std::uint64_t seed = 0;

  const std::map<std::string, Transform> transforms{
      {"raw", Transform::raw}, {"log", Transform::log}, {"gradient", Transform::gradient}};

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    sub->add_option("--out", opt.out, "Output directory")->required();
    sub->add_option("--config", opt.config, "JSON configuration file");
    sub->add_option("--seed", seed, "Seed (recorded in the manifest; overrides the scenario seed for simulate)");
    if (needs_input) {
      sub->add_option("--input", opt.input, "Signals CSV (date,NODE1,NODE2,...)")->required();
      sub->add_option("--transform", transform, "Signal transform")
          ->check(CLI::IsMember({"raw", "log", "gradient"}));
      sub->add_option("--returns", returns, "Return definition for --transform gradient")
          ->check(CLI::IsMember({"simple", "log"}));
    }
  };

  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic switching-graph scenario");
  add_common(simulate, false);

  auto* online = app.add_subcommand("learn-online", "Run the online learner over a signal stream");
  add_common(online, true);
  online->add_option("--truth", opt.truth, "Ground-truth snapshots JSON");
  online->add_option("--stride", opt.stride, "Write a snapshot every N samples")->check(CLI::PositiveNumber);

  auto* batch = app.add_subcommand("learn-batch", "Learn one static graph from the whole stream");
  add_common(batch, true);

  auto* track = app.add_subcommand("track", "Compare an online run with per-sample batch optima");
  add_common(track, true);
  track->add_option("--metrics", opt.metrics, "metrics.jsonl written by learn-online")->required();
  track->add_option("--truth", opt.truth, "Ground-truth snapshots JSON");

  auto* grid = app.add_subcommand("grid-search", "Score (alpha, beta) pairs by final-window F-measure");
  add_common(grid, true);
  grid->add_option("--truth", opt.truth, "Ground-truth snapshots JSON")->required();
  grid->add_option("--window", opt.window, "Trailing samples per segment")->check(CLI::PositiveNumber);
  grid->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");

  auto* ingest = app.add_subcommand("ingest", "Clean and transform a CSV time series");
  add_common(ingest, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  opt.transform = transforms.at(transform);
  opt.returns = returns == "log" ? ReturnKind::log : ReturnKind::simple;
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--seed") > 0) opt.seed = seed;
  }

  const std::map<std::string, int (*)(const CommandOptions&)> commands{
      {"simulate", cmd_simulate},   {"learn-online", cmd_learn_online}, {"learn-batch", cmd_learn_batch},
      {"track", cmd_track},         {"grid-search", cmd_grid_search},   {"ingest", cmd_ingest}};
  return run_command(commands.at(app.get_subcommands().front()->get_name()), opt);
}
