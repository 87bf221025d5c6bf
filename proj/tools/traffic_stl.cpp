#include "trafficstl/cli/commands.hpp"

#include <iostream>

#include <CLI11.hpp>

namespace cli = trafficstl::cli;

int main(int argc, char** argv) {
  CLI::App app{"Offline STL monitoring and IDM micro-simulation for vehicle trajectories"};
  app.require_subcommand(1);

  cli::SimulateOptions sim;
  std::uint64_t seed = 0;
  std::string comm;
  auto* simulate = app.add_subcommand("simulate", "run a scenario and write per-vehicle trace CSVs");
  simulate->add_option("--config", sim.config, "scenario config (key = value lines)")->check(CLI::ExistingFile);
  simulate->add_option("--out", sim.out_dir, "output directory")->required();
  auto* seed_opt = simulate->add_option("--seed", seed, "override rng_seed");
  simulate->add_option("--comm", comm, "override comm_enabled")->check(CLI::IsMember({"on", "off"}));

  cli::MonitorOptions mon;
  std::vector<std::string> params;
  auto* monitor = app.add_subcommand("monitor", "monitor every trace in a directory against a spec");
  monitor->add_option("--traces", mon.traces_dir, "directory of trajectory CSVs")->required();
  auto* spec_opt = monitor->add_option("--spec", mon.spec, "built-in spec: speed, braking, offramp, headway");
  auto* file_opt = monitor->add_option("--formula-file", mon.formula_file, "formula in the DSL")
                       ->check(CLI::ExistingFile);
  spec_opt->excludes(file_opt);
  monitor->add_option("--param", params, "key=value override (repeatable)");
  monitor->add_option("--out", mon.out_dir, "verdict directory")->required();
  monitor->add_option("--threads", mon.threads, "worker count (default: TRAFFIC_STL_THREADS or all cores)");

  cli::StatsOptions st;
  auto* stats = app.add_subcommand("stats", "conforming vs violating report from verdicts");
  stats->add_option("--verdicts", st.verdicts_dir, "verdict directory written by monitor")->required();
  stats->add_option("--channel", st.channel, "channel whose per-trace mean is reported")->required();
  stats->add_option("--out", st.out, "report path (.json and .csv are written)")->required();

  cli::SmoothOptions sm;
  auto* smooth = app.add_subcommand("smooth", "derive smoothed acceleration and jerk");
  smooth->add_option("--in", sm.in, "trajectory CSV")->required()->check(CLI::ExistingFile);
  smooth->add_option("--alpha", sm.alpha, "exponential smoothing factor in (0, 1]");
  smooth->add_option("--out", sm.out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kFailure;
  }

  if (simulate->parsed()) {
    if (*seed_opt) sim.seed = seed;
    if (!comm.empty()) sim.comm_enabled = comm == "on";
    return cli::cmd_simulate(sim, std::cout, std::cerr);
  }
  if (monitor->parsed()) {
    if (mon.spec.empty() && mon.formula_file.empty()) {
      std::cerr << "error: monitor needs --spec or --formula-file\n";
      return cli::kFailure;
    }
    for (const auto& p : params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos || eq == 0) {
        std::cerr << "error: --param expects key=value, got '" << p << "'\n";
        return cli::kFailure;
      }
      mon.params[p.substr(0, eq)] = p.substr(eq + 1);
    }
    return cli::cmd_monitor(mon, std::cout, std::cerr);
  }
  if (stats->parsed()) return cli::cmd_stats(st, std::cout, std::cerr);
  return cli::cmd_smooth(sm, std::cout, std::cerr);
}
