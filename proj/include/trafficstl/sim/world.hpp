#pragma once

#include "trafficstl/sim/idm.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace trafficstl::sim {

enum class Route { Mainline, Offramp };
enum class Lane { Mainline, Ramp };

/// What a follower last heard from the vehicle it declared as its leader.
struct LeaderRecord {
  std::string leader_id;
  double x_leader = 0.0;
  double v_leader = 0.0;
  double received_at = 0.0;
};

/// What a leader last heard from one of its followers.
struct FollowerRecord {
  std::string follower_id;
  double x_follower = 0.0;
  double v_follower = 0.0;
  double received_at = 0.0;
};

struct VehicleState {
  std::string id;
  double x = 0.0;  ///< front bumper position along the corridor, m
  double v = 0.0;  ///< m/s, never negative
  double desired_speed = 31.0;
  Route route = Route::Mainline;
  Lane lane = Lane::Mainline;
  /// Acceleration applied during the last step.
  double accel = 0.0;
  /// Set by a communication round when the time headway to the beaconed
  /// leader fell below the threshold; overrides baseline car-following.
  std::optional<double> accel_cmd;
  bool is_leader = false;
  bool is_follower = false;
  std::optional<LeaderRecord> leader_record;
  std::vector<FollowerRecord> followers;
};

struct RoadConfig {
  double corridor_length = 50000.0;   ///< mainline vehicles leave past this point
  double offramp_position = 3000.0;   ///< diverge point
  double offramp_length = 500.0;      ///< ramp vehicles leave this far past the diverge
  double offramp_speed_limit = 18.0;  ///< m/s
  double offramp_approach = 400.0;    ///< desired speed blends down over this distance
  double vehicle_length = 5.0;
  double leader_lookahead = 500.0;    ///< car-following and headway sensing range
};

struct CommConfig {
  bool enabled = true;
  double range = 500.0;          ///< m, symmetric, lossless
  double beacon_period = 0.05;   ///< s
  double headway_threshold = 4.0;  ///< s, actuation trigger
  double tx_power_mw = 15.0;     ///< metadata only
  double min_power_dbm = -90.0;  ///< metadata only
};

/// Everything that governs motion, shared by all vehicles.
struct Dynamics {
  /// Car-following without communication (short time gap).
  IdmParams baseline{1.4, 2.0, 1.0, 2.0, 31.0, 4.0};
  /// Communication-actuated following.
  IdmParams actuated{};
  RoadConfig road;
  CommConfig comm;
};

/// Active vehicles, kept sorted by position, front-most first.
struct WorldState {
  double time = 0.0;
  std::vector<VehicleState> vehicles;
};

/// Index of the nearest vehicle ahead that `i` follows (same lane; a
/// mainline vehicle bound for the ramp also follows ramp vehicles), or
/// nullopt when none is within `lookahead` metres.
std::optional<std::size_t> leader_of(const WorldState& world, std::size_t i, double lookahead);

/// Bumper-to-bumper gap between a follower and its leader.
double bumper_gap(const VehicleState& follower, const VehicleState& leader, double vehicle_length);

/// gap / v, or +inf for a stationary vehicle.
double time_headway(double gap, double v);

/// For each vehicle, the indices of vehicles whose beacons it receives.
std::vector<std::vector<std::size_t>> beacon_reception(const WorldState& world, double range);

/// Desired speed after blending toward the ramp limit on the approach and on
/// the ramp itself.
double effective_desired_speed(const VehicleState& v, const RoadConfig& road);

/// One beaconing cycle: every vehicle broadcasts (id, x, v); each receiver
/// picks the nearest vehicle ahead among the beacons it heard, and when the
/// time headway to it is below the threshold declares it leader, replies with
/// its own state and sets accel_cmd from the actuated IDM. Roles and
/// commands from the previous cycle are cleared first.
WorldState comm_round(WorldState world, const Dynamics& dyn);

/// Advances by dt: accel_cmd when set, otherwise baseline IDM on the sensed
/// leader. v <- max(0, v + a*dt), x <- x + v*dt, then ramp diverge and
/// exits. Throws CollisionError when a gap closes.
WorldState step(WorldState world, double dt, const Dynamics& dyn);

}  // namespace trafficstl::sim
