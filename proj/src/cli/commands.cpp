#include "trafficstl/cli/commands.hpp"

#include "trafficstl/error.hpp"
#include "trafficstl/parallel.hpp"
#include "trafficstl/sim/scenario.hpp"
#include "trafficstl/specs/conformance.hpp"
#include "trafficstl/specs/specs.hpp"
#include "trafficstl/stl/monitor.hpp"
#include "trafficstl/stl/parser.hpp"
#include "trafficstl/stl/verdict_io.hpp"
#include "trafficstl/trajectory_csv.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

namespace trafficstl::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kVerdictJsonSuffix = ".verdict.json";

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string file_stem_for(const std::string& vehicle_id) {
  std::string out = vehicle_id;
  for (char& c : out)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) c = '_';
  return out.empty() ? std::string("_") : out;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw Error(fmt::format("cannot write '{}'", p.string()));
  return f;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(fmt::format("cannot read '{}'", p.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_json(const fs::path& p, const nlohmann::json& j) {
  auto f = open_out(p);
  f << j.dump(2) << '\n';
}

std::vector<fs::path> list_files(const fs::path& dir, auto&& keep) {
  if (!fs::is_directory(dir)) throw Error(fmt::format("'{}' is not a directory", dir.string()));
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && keep(e.path().filename().string())) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kFailure;
  }
}

struct Loaded {
  Trace trace;
  fs::path source;
};

struct Skipped {
  std::string reason;
};

using Outcome = std::variant<std::monostate, stl::Verdict, Skipped>;

}  // namespace

int cmd_simulate(const SimulateOptions& opt, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    auto config = opt.config.empty() ? sim::ScenarioConfig{} : sim::read_scenario_config(opt.config);
    if (opt.seed) config.rng_seed = *opt.seed;
    if (opt.comm_enabled) config.comm_enabled = *opt.comm_enabled;
    config.validate();
    fs::create_directories(opt.out_dir);

    nlohmann::json summary{
        {"seed", config.rng_seed},
        {"n_vehicles", config.n_vehicles},
        {"duration", config.duration},
        {"dt", config.dt},
        {"comm_enabled", config.comm_enabled},
    };
    sim::ScenarioResult result;
    try {
      result = sim::run_scenario(config);
    } catch (const CollisionError& e) {
      summary["collision_free"] = false;
      summary["collision"] = e.what();
      write_json(opt.out_dir / "scenario_summary.json", summary);
      throw;
    }

    for (const auto& t : result.traces)
      write_trajectory_csv(opt.out_dir / (file_stem_for(t.vehicle_id()) + ".csv"),
                           std::span<const Trace>(&t, 1));
    summary["vehicle_count"] = result.traces.size();
    summary["collision_free"] = true;
    summary["min_gap"] = result.min_gap;
    summary["steps"] = result.steps;
    summary["followers"] = result.ever_followers.size();
    write_json(opt.out_dir / "scenario_summary.json", summary);
    fmt::print(log, "simulated {} vehicles for {} s (seed {}, comm {}), min gap {:.2f} m\n",
               result.traces.size(), config.duration, config.rng_seed,
               config.comm_enabled ? "on" : "off", result.min_gap);
    return static_cast<int>(kAllConform);
  });
}

int cmd_monitor(const MonitorOptions& opt, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const auto spec = !opt.spec.empty()
                          ? specs::builtin_spec(opt.spec, opt.params)
                          : specs::custom_spec(stl::parse(slurp(opt.formula_file)), opt.params);

    std::vector<Loaded> traces;
    const auto files = list_files(opt.traces_dir, [](const std::string& name) {
      return ends_with(name, ".csv") && !ends_with(name, ".verdict.csv");
    });
    for (const auto& f : files)
      for (auto& t : read_trajectory_csv(f)) traces.push_back({std::move(t), fs::absolute(f)});
    if (traces.empty())
      throw Error(fmt::format("no trajectory CSV files in '{}'", opt.traces_dir.string()));

    fs::create_directories(opt.out_dir);
    std::vector<Outcome> outcomes(traces.size());
    const std::size_t threads = opt.threads ? opt.threads : default_thread_count();
    parallel_for(traces.size(), threads, [&](std::size_t i) {
      const auto& [trace, source] = traces[i];
      if (!specs::applies_to(spec, trace)) {
        outcomes[i] = Skipped{"never on the off-ramp"};
        return;
      }
      std::optional<stl::Verdict> monitored;
      try {
        monitored = stl::monitor(spec.formula, specs::prepare_trace(spec, trace));
      } catch (const HorizonError& e) {
        outcomes[i] = Skipped{e.what()};
        return;
      }
      auto& v = *monitored;
      const auto stem = opt.out_dir / file_stem_for(trace.vehicle_id());
      auto csv = open_out(fs::path(stem.string() + ".verdict.csv"));
      stl::write_verdict_csv(csv, v);
      auto j = stl::verdict_summary_json(v, spec.formula);
      j["spec"] = spec.name;
      j["statistic_channel"] = spec.statistic_channel;
      j["trace_file"] = source.string();
      write_json(fs::path(stem.string() + std::string(kVerdictJsonSuffix)), j);
      outcomes[i] = std::move(v);
    });

    std::size_t ok = 0, bad = 0;
    nlohmann::json skipped = nlohmann::json::array();
    for (std::size_t i = 0; i < traces.size(); ++i) {
      if (const auto* v = std::get_if<stl::Verdict>(&outcomes[i])) {
        ++(v->satisfied() ? ok : bad);
      } else if (const auto* s = std::get_if<Skipped>(&outcomes[i])) {
        skipped.push_back({{"vehicle_id", traces[i].trace.vehicle_id()}, {"reason", s->reason}});
      }
    }
    write_json(opt.out_dir / "monitor_summary.json",
               {{"spec", spec.name},
                {"formula", stl::to_string(spec.formula)},
                {"conforming", ok},
                {"violating", bad},
                {"skipped", skipped}});
    fmt::print(log, "{}: {} conforming, {} violating, {} skipped\n", spec.name, ok, bad,
               skipped.size());
    return static_cast<int>(bad > 0 ? kSomeViolate : kAllConform);
  });
}

int cmd_stats(const StatsOptions& opt, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const auto files = list_files(opt.verdicts_dir, [](const std::string& name) {
      return ends_with(name, kVerdictJsonSuffix);
    });
    if (files.empty())
      throw EmptyReportError(
          fmt::format("no verdicts in '{}': nothing to report", opt.verdicts_dir.string()));

    std::map<std::string, std::vector<Trace>> cache;
    std::vector<specs::Classified> members;
    std::string spec_name;
    for (const auto& f : files) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(slurp(f));
      } catch (const nlohmann::json::exception& e) {
        throw Error(fmt::format("{}: {}", f.string(), e.what()));
      }
      const auto id = j.at("vehicle_id").get<std::string>();
      const auto source = j.at("trace_file").get<std::string>();
      if (spec_name.empty()) spec_name = j.value("spec", std::string("custom"));
      auto it = cache.find(source);
      if (it == cache.end()) it = cache.emplace(source, read_trajectory_csv(source)).first;
      const auto match = std::find_if(it->second.begin(), it->second.end(),
                                      [&](const Trace& t) { return t.vehicle_id() == id; });
      if (match == it->second.end())
        throw Error(fmt::format("{}: vehicle '{}' not found in '{}'", f.string(), id, source));
      members.push_back({stl::robustness_from_json(j.at("summary_robustness")),
                         specs::trace_statistic(*match, opt.channel)});
    }

    const auto report = specs::build_report(spec_name, opt.channel, members);
    auto base = opt.out;
    if (base.extension() == ".json" || base.extension() == ".csv") base.replace_extension();
    if (base.has_parent_path()) fs::create_directories(base.parent_path());
    write_json(fs::path(base.string() + ".json"), specs::to_json(report));
    auto csv = open_out(fs::path(base.string() + ".csv"));
    specs::write_report_csv(csv, report);
    fmt::print(log, "{} trajectories: {} conforming, {} violating\n", report.population(),
               report.conforming.volume, report.violating.volume);
    return static_cast<int>(kAllConform);
  });
}

int cmd_smooth(const SmoothOptions& opt, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    KinematicsOptions k;
    k.alpha = opt.alpha;
    if (!(opt.alpha > 0.0 && opt.alpha <= 1.0))
      throw ParameterError(fmt::format("alpha must be in (0, 1], got {}", opt.alpha));

    const auto traces = read_trajectory_csv(opt.in);
    struct Row {
      double t;
      const std::string* id;
      double speed, accel, jerk;
    };
    std::vector<Row> rows;
    std::vector<Trace> derived;
    derived.reserve(traces.size());
    for (const auto& t : traces) {
      if (t.channel(channel::kSpeed).size() < 2) {
        fmt::print(log, "skipping '{}': fewer than 2 samples\n", t.vehicle_id());
        continue;
      }
      derived.push_back(with_kinematics(t, k));
    }
    for (const auto& t : derived) {
      const auto& v = t.channel(channel::kSpeed);
      const auto& a = t.channel(channel::kAcceleration);
      const auto& j = t.channel(channel::kJerk);
      for (std::size_t i = 0; i < v.size(); ++i)
        rows.push_back({v.times()[i], &t.vehicle_id(), v.values()[i], a.values()[i], j.values()[i]});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });

    if (opt.out.has_parent_path()) fs::create_directories(opt.out.parent_path());
    auto out = open_out(opt.out);
    fmt::print(out, "t,vehicle_id,speed,accel,jerk\n");
    for (const auto& r : rows)
      fmt::print(out, "{:.3f},{},{:.6f},{:.6f},{:.6f}\n", r.t, *r.id, r.speed, r.accel, r.jerk);
    fmt::print(log, "smoothed {} vehicles (alpha {})\n", derived.size(), opt.alpha);
    return static_cast<int>(kAllConform);
  });
}

}  // namespace trafficstl::cli
