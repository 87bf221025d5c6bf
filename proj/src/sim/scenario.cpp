#include "trafficstl/sim/scenario.hpp"

#include "trafficstl/error.hpp"

#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace trafficstl::sim {

namespace {

using Setter = std::function<void(ScenarioConfig&, std::string_view)>;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out))
    throw std::invalid_argument(fmt::format("'{}' is not a number", v));
  return out;
}

template <class Int>
Int parse_int(std::string_view v) {
  Int out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument(fmt::format("'{}' is not a non-negative integer", v));
  return out;
}

bool parse_bool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument(fmt::format("'{}' is not a boolean", v));
}

#define DOUBLE_KEY(name) {#name, [](ScenarioConfig& c, std::string_view v) { c.name = parse_double(v); }}
#define BOOL_KEY(name) {#name, [](ScenarioConfig& c, std::string_view v) { c.name = parse_bool(v); }}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      DOUBLE_KEY(duration),
      DOUBLE_KEY(dt),
      {"n_vehicles", [](ScenarioConfig& c, std::string_view v) { c.n_vehicles = parse_int<std::size_t>(v); }},
      BOOL_KEY(preload),
      DOUBLE_KEY(mean_headway),
      DOUBLE_KEY(min_headway),
      DOUBLE_KEY(desired_speed),
      DOUBLE_KEY(speed_spread),
      DOUBLE_KEY(offramp_fraction),
      DOUBLE_KEY(corridor_length),
      DOUBLE_KEY(offramp_position),
      DOUBLE_KEY(offramp_length),
      DOUBLE_KEY(offramp_speed_limit),
      DOUBLE_KEY(offramp_approach),
      DOUBLE_KEY(vehicle_length),
      DOUBLE_KEY(sensor_range),
      DOUBLE_KEY(baseline_time_gap),
      DOUBLE_KEY(actuated_time_gap),
      DOUBLE_KEY(a_max),
      DOUBLE_KEY(b_comf),
      DOUBLE_KEY(s0),
      DOUBLE_KEY(delta),
      BOOL_KEY(comm_enabled),
      DOUBLE_KEY(comm_range),
      DOUBLE_KEY(beacon_period),
      DOUBLE_KEY(headway_threshold),
      DOUBLE_KEY(tx_power_mw),
      DOUBLE_KEY(min_power_dbm),
      {"rng_seed", [](ScenarioConfig& c, std::string_view v) { c.rng_seed = parse_int<std::uint64_t>(v); }},
  };
  return table;
}

#undef DOUBLE_KEY
#undef BOOL_KEY

void check(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what, 0);
}

struct Recorder {
  std::string id;
  std::vector<double> t, x, speed, headway, on_ramp;
  std::vector<std::string> leader;

  Trace finish() const {
    Trace::ChannelMap ch;
    auto add = [&](std::string_view name, const std::vector<double>& vals) {
      ch.emplace(std::string(name), Signal(t, vals, default_interpolation(name)));
    };
    add(channel::kPosition, x);
    add(channel::kSpeed, speed);
    add(channel::kHeadway, headway);
    add(channel::kOnOfframp, on_ramp);
    return Trace(id, std::move(ch)).with_leader_ids(leader);
  }
};

struct Spawn {
  VehicleState vehicle;
  double arrival = 0.0;
};

// Draws the whole stream up front so both spawn modes see the same vehicles.
std::vector<Spawn> draw_stream(const ScenarioConfig& c, std::mt19937_64& rng) {
  std::exponential_distribution<double> extra(
      c.mean_headway > c.min_headway ? 1.0 / (c.mean_headway - c.min_headway) : 1.0);
  std::uniform_real_distribution<double> spread(1.0 - c.speed_spread, 1.0 + c.speed_spread);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Spawn> out(c.n_vehicles);
  double arrival = 0.0;
  for (std::size_t k = 0; k < c.n_vehicles; ++k) {
    const double h = c.min_headway + (c.mean_headway > c.min_headway ? extra(rng) : 0.0);
    auto& s = out[k];
    s.vehicle.id = fmt::format("veh{:03d}", k);
    s.vehicle.desired_speed = c.desired_speed * spread(rng);
    s.vehicle.v = s.vehicle.desired_speed;
    s.vehicle.route = unit(rng) < c.offramp_fraction ? Route::Offramp : Route::Mainline;
    if (k > 0) arrival += h;
    s.arrival = arrival;
  }
  return out;
}

void place_preloaded(const ScenarioConfig& c, std::vector<Spawn>& stream) {
  // Front-most first; each follower sits its arrival headway behind.
  double x = 0.0;
  for (std::size_t k = 0; k < stream.size(); ++k) {
    if (k > 0) {
      const double h = stream[k].arrival - stream[k - 1].arrival;
      x -= c.vehicle_length + h * stream[k].vehicle.v;
    }
    stream[k].vehicle.x = x;
  }
  const double shift = stream.empty() ? 0.0 : -stream.back().vehicle.x;
  for (auto& s : stream) {
    s.vehicle.x += shift;
    if (s.vehicle.x > c.offramp_position - c.offramp_approach) s.vehicle.route = Route::Mainline;
  }
}

bool can_enter(const WorldState& w, const VehicleState& v, const Dynamics& dyn) {
  if (w.vehicles.empty()) return true;
  const auto& rear = w.vehicles.back();
  const double gap = rear.x - v.x - dyn.road.vehicle_length;
  if (gap <= 0.0) return false;
  return gap >= std::max(dyn.baseline.s0, desired_gap(v.v, v.v - rear.v, dyn.baseline));
}

}  // namespace

void ScenarioConfig::validate() const {
  if (n_vehicles == 0) throw ConfigError("empty scenario", 0);
  check(dt > 0.0, fmt::format("dt must be positive (got {})", dt));
  check(duration > 0.0, fmt::format("duration must be positive (got {})", duration));
  check(dt <= duration, "dt must not exceed duration");
  check(comm_range > 0.0, fmt::format("comm_range must be positive (got {})", comm_range));
  check(beacon_period > 0.0, fmt::format("beacon_period must be positive (got {})", beacon_period));
  check(headway_threshold > 0.0, "headway_threshold must be positive");
  check(min_headway >= 0.0 && mean_headway >= min_headway,
        "spawn headways need 0 <= min_headway <= mean_headway");
  check(desired_speed > 0.0, "desired_speed must be positive");
  check(speed_spread >= 0.0 && speed_spread < 1.0, "speed_spread must be in [0, 1)");
  check(offramp_fraction >= 0.0 && offramp_fraction <= 1.0, "offramp_fraction must be in [0, 1]");
  check(corridor_length > 0.0 && offramp_position > 0.0 && offramp_length > 0.0,
        "corridor and ramp lengths must be positive");
  check(offramp_speed_limit > 0.0, "offramp_speed_limit must be positive");
  check(offramp_approach >= 0.0, "offramp_approach must be non-negative");
  check(vehicle_length >= 0.0, "vehicle_length must be non-negative");
  check(sensor_range > 0.0, "sensor_range must be positive");
  try {
    const auto d = dynamics();
    d.baseline.validate();
    d.actuated.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what(), 0);
  }
}

Dynamics ScenarioConfig::dynamics() const {
  Dynamics d;
  d.baseline = IdmParams{a_max, b_comf, baseline_time_gap, s0, desired_speed, delta};
  d.actuated = IdmParams{a_max, b_comf, actuated_time_gap, s0, desired_speed, delta};
  d.road = RoadConfig{corridor_length,    offramp_position, offramp_length, offramp_speed_limit,
                      offramp_approach,   vehicle_length,   sensor_range};
  d.comm = CommConfig{comm_enabled, comm_range, beacon_period, headway_threshold, tx_power_mw,
                      min_power_dbm};
  return d;
}

std::vector<std::string> scenario_config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

ScenarioConfig parse_scenario_config(std::string_view text) {
  ScenarioConfig c;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(fmt::format("expected key = value, got '{}'", line), line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end())
      throw ConfigError(fmt::format("unknown key '{}' (valid: {})", key,
                                    fmt::join(scenario_config_keys(), ", ")),
                        line_no);
    try {
      it->second(c, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("{}: {}", key, e.what()), line_no);
    }
  }
  c.validate();
  return c;
}

ScenarioConfig read_scenario_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_config(buf.str());
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  const Dynamics dyn = config.dynamics();
  std::mt19937_64 rng(config.rng_seed);
  auto stream = draw_stream(config, rng);

  WorldState world;
  std::deque<Spawn> pending;
  if (config.preload) {
    place_preloaded(config, stream);
    for (const auto& s : stream) world.vehicles.push_back(s.vehicle);
  } else {
    pending.assign(stream.begin(), stream.end());
  }

  ScenarioResult result;
  result.min_gap = std::numeric_limits<double>::infinity();
  std::vector<Recorder> recs;
  std::unordered_map<std::string, std::size_t> slot;

  auto admit = [&] {
    while (!pending.empty() && pending.front().arrival <= world.time + kTimeEpsilon &&
           can_enter(world, pending.front().vehicle, dyn)) {
      world.vehicles.push_back(pending.front().vehicle);
      pending.pop_front();
    }
  };

  auto record = [&] {
    for (std::size_t i = 0; i < world.vehicles.size(); ++i) {
      const auto& v = world.vehicles[i];
      auto [it, fresh] = slot.try_emplace(v.id, recs.size());
      if (fresh) recs.push_back(Recorder{v.id, {}, {}, {}, {}, {}, {}});
      auto& r = recs[it->second];

      double headway = kNoLeaderHeadway;
      std::string leader;
      if (const auto l = leader_of(world, i, dyn.road.leader_lookahead)) {
        const auto& lv = world.vehicles[*l];
        const double h = time_headway(bumper_gap(v, lv, dyn.road.vehicle_length), v.v);
        headway = std::isfinite(h) ? h : kStoppedHeadway;
        leader = lv.id;
      }
      if (const auto l = leader_of(world, i, std::numeric_limits<double>::infinity()))
        result.min_gap = std::min(result.min_gap,
                                  bumper_gap(v, world.vehicles[*l], dyn.road.vehicle_length));

      r.t.push_back(world.time);
      r.x.push_back(v.x);
      r.speed.push_back(v.v);
      r.headway.push_back(headway);
      r.leader.push_back(std::move(leader));
      r.on_ramp.push_back(v.lane == Lane::Ramp ? 1.0 : 0.0);
    }
  };

  admit();
  record();

  const auto n_steps = static_cast<std::size_t>(std::llround(config.duration / config.dt));
  const auto beacon_every =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(config.beacon_period / config.dt)));
  for (std::size_t k = 1; k <= n_steps; ++k) {
    if (dyn.comm.enabled && (k - 1) % beacon_every == 0) {
      world = comm_round(std::move(world), dyn);
      for (const auto& v : world.vehicles)
        if (v.is_follower) result.ever_followers.insert(v.id);
    }
    world = step(std::move(world), config.dt, dyn);
    world.time = static_cast<double>(k) * config.dt;
    admit();
    record();
  }

  result.steps = n_steps;
  result.traces.reserve(recs.size());
  for (const auto& r : recs) result.traces.push_back(r.finish());
  return result;
}

}  // namespace trafficstl::sim
