#include "trafficstl/specs/conformance.hpp"

#include "trafficstl/error.hpp"
#include "trafficstl/parallel.hpp"
#include "trafficstl/stl/monitor.hpp"

#include <cmath>
#include <ostream>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace trafficstl::specs {

namespace {

GroupStats summarize(const std::vector<const Classified*>& group) {
  GroupStats g;
  g.volume = group.size();
  std::vector<double> xs;
  for (const auto* m : group)
    if (m->statistic) xs.push_back(*m->statistic);
  if (xs.empty()) return g;

  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  g.mean = mean;
  g.std = std::sqrt(ss / static_cast<double>(xs.size()));
  return g;
}

std::string cell(const std::optional<double>& v) {
  return v ? fmt::format("{:.2f}", *v) : std::string("NA");
}

nlohmann::json group_json(const GroupStats& g) {
  nlohmann::json j{{"volume", g.volume}};
  j["mean"] = g.mean ? nlohmann::json(*g.mean) : nlohmann::json(nullptr);
  j["std"] = g.std ? nlohmann::json(*g.std) : nlohmann::json(nullptr);
  return j;
}

}  // namespace

std::optional<double> trace_statistic(const Trace& trace, const std::string& channel_name) {
  const bool masked = channel_name == channel::kHeadway;
  double sum = 0.0;
  std::size_t n = 0;
  for (double v : trace.channel(channel_name).values()) {
    if (masked && v < 0.0) continue;
    sum += v;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

ConformanceReport build_report(std::string spec_name, std::string statistic_channel,
                               std::span<const Classified> members) {
  if (members.empty()) throw EmptyReportError("conformance report over an empty population");
  std::vector<const Classified*> ok, bad;
  for (const auto& m : members) (m.summary_robustness > 0.0 ? ok : bad).push_back(&m);
  return {std::move(spec_name), std::move(statistic_channel), summarize(ok), summarize(bad)};
}

ConformanceReport evaluate_population(std::span<const Trace> traces, const stl::Formula& formula,
                                      const std::string& statistic_channel, std::string spec_name,
                                      std::size_t threads) {
  if (traces.empty()) throw EmptyReportError("conformance report over an empty population");
  const auto used = stl::referenced_channels(formula);
  bool kinematic = false;
  for (const auto& c : used) kinematic = kinematic || c == channel::kAcceleration || c == channel::kJerk;

  std::vector<Classified> members(traces.size());
  parallel_for(traces.size(), threads, [&](std::size_t i) {
    const Trace prepared = kinematic ? with_kinematics(traces[i]) : traces[i];
    members[i].summary_robustness = stl::monitor(formula, prepared).summary;
    members[i].statistic = trace_statistic(traces[i], statistic_channel);
  });
  return build_report(std::move(spec_name), statistic_channel, members);
}

nlohmann::json to_json(const ConformanceReport& r) {
  return {
      {"spec", r.spec_name},
      {"statistic_channel", r.statistic_channel},
      {"population", r.population()},
      {"conforming", group_json(r.conforming)},
      {"violating", group_json(r.violating)},
  };
}

void write_report_csv(std::ostream& out, const ConformanceReport& r) {
  std::string mean_label;
  std::string std_label;
  if (r.statistic_channel == channel::kSpeed) {
    mean_label = "Mean Speed (m/s)";
    std_label = "Std Dev (Speed)";
  } else if (r.statistic_channel == channel::kHeadway) {
    mean_label = "Mean Headway (s)";
    std_label = "Std Dev (Headway)";
  } else {
    mean_label = fmt::format("Mean {}", r.statistic_channel);
    std_label = fmt::format("Std Dev ({})", r.statistic_channel);
  }
  fmt::print(out, "Measure,Conforming trajectories,Violating trajectories\n");
  fmt::print(out, "Volume,{},{}\n", r.conforming.volume, r.violating.volume);
  fmt::print(out, "{},{},{}\n", mean_label, cell(r.conforming.mean), cell(r.violating.mean));
  fmt::print(out, "{},{},{}\n", std_label, cell(r.conforming.std), cell(r.violating.std));
}

}  // namespace trafficstl::specs
