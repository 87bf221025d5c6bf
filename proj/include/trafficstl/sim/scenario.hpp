#pragma once

#include "trafficstl/sim/world.hpp"
#include "trafficstl/trace.hpp"

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace trafficstl::sim {

/// Headway recorded for a stopped vehicle that has a leader (gap / 0).
inline constexpr double kStoppedHeadway = 999.0;

/// Flat scenario description. Config-file keys are the field names.
struct ScenarioConfig {
  double duration = 100.0;
  double dt = 0.05;
  std::size_t n_vehicles = 110;

  // Spawn model. Time headways between consecutive vehicles are
  // min_headway + Exp(mean_headway - min_headway); desired speeds are
  // desired_speed * U[1 - speed_spread, 1 + speed_spread].
  bool preload = true;  ///< place the whole stream at t = 0 instead of arrivals at x = 0
  double mean_headway = 6.0;
  double min_headway = 4.0;
  double desired_speed = 28.0;
  double speed_spread = 0.1;
  double offramp_fraction = 0.25;

  double corridor_length = 50000.0;
  double offramp_position = 3000.0;
  double offramp_length = 500.0;
  double offramp_speed_limit = 18.0;
  double offramp_approach = 400.0;
  double vehicle_length = 5.0;
  double sensor_range = 500.0;

  double baseline_time_gap = 1.0;
  double actuated_time_gap = 4.0;
  double a_max = 1.4;
  double b_comf = 2.0;
  double s0 = 2.0;
  double delta = 4.0;

  bool comm_enabled = true;
  double comm_range = 500.0;
  double beacon_period = 0.05;
  double headway_threshold = 4.0;
  double tx_power_mw = 15.0;
  double min_power_dbm = -90.0;

  std::uint64_t rng_seed = 1;

  /// Throws ConfigError (line 0) on inconsistent values; n_vehicles == 0 is
  /// reported as "empty scenario".
  void validate() const;
  Dynamics dynamics() const;
};

/// Every key accepted by the config parser.
std::vector<std::string> scenario_config_keys();

/// `key = value` lines, `#` comments. Unknown keys and bad values raise
/// ConfigError with the 1-based line number. The result is validated.
ScenarioConfig parse_scenario_config(std::string_view text);
ScenarioConfig read_scenario_config(const std::filesystem::path& path);

struct ScenarioResult {
  /// One trace per spawned vehicle, in spawn order.
  std::vector<Trace> traces;
  /// Smallest bumper gap seen between any vehicle and the one it follows.
  double min_gap = 0.0;
  std::size_t steps = 0;
  /// Vehicles that declared a leader in at least one communication round.
  std::set<std::string> ever_followers;
};

/// Runs the scenario to completion. Deterministic in rng_seed. Collisions
/// propagate as CollisionError.
ScenarioResult run_scenario(const ScenarioConfig& config);

}  // namespace trafficstl::sim
