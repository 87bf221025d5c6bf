#include "trafficstl/sim/world.hpp"

#include "trafficstl/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trafficstl::sim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool follows(const VehicleState& follower, const VehicleState& candidate) {
  if (candidate.lane == follower.lane) return true;
  return follower.lane == Lane::Mainline && follower.route == Route::Offramp &&
         candidate.lane == Lane::Ramp;
}

IdmParams with_desired_speed(IdmParams p, double v0) {
  p.v0 = v0;
  return p;
}

}  // namespace

std::optional<std::size_t> leader_of(const WorldState& world, std::size_t i, double lookahead) {
  const auto& me = world.vehicles[i];
  std::optional<std::size_t> best;
  for (std::size_t j = i; j-- > 0;) {
    const auto& other = world.vehicles[j];
    if (other.x - me.x > lookahead) break;
    if (!follows(me, other)) continue;
    // Sorted front-most first, so the first match is the nearest ahead.
    best = j;
    break;
  }
  return best;
}

double bumper_gap(const VehicleState& follower, const VehicleState& leader, double vehicle_length) {
  return leader.x - follower.x - vehicle_length;
}

double time_headway(double gap, double v) { return v > 0.0 ? gap / v : kInf; }

std::vector<std::vector<std::size_t>> beacon_reception(const WorldState& world, double range) {
  const auto n = world.vehicles.size();
  std::vector<std::vector<std::size_t>> heard(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && std::abs(world.vehicles[i].x - world.vehicles[j].x) <= range)
        heard[i].push_back(j);
  return heard;
}

double effective_desired_speed(const VehicleState& v, const RoadConfig& road) {
  const double limit = std::min(v.desired_speed, road.offramp_speed_limit);
  if (v.lane == Lane::Ramp) return limit;
  if (v.route != Route::Offramp) return v.desired_speed;
  const double start = road.offramp_position - road.offramp_approach;
  if (v.x <= start) return v.desired_speed;
  const double w = road.offramp_approach > 0.0 ? std::min(1.0, (v.x - start) / road.offramp_approach) : 1.0;
  return v.desired_speed + w * (limit - v.desired_speed);
}

WorldState comm_round(WorldState world, const Dynamics& dyn) {
  auto& cars = world.vehicles;
  for (auto& c : cars) {
    c.accel_cmd.reset();
    c.is_leader = false;
    c.is_follower = false;
    c.leader_record.reset();
    c.followers.clear();
  }
  if (!dyn.comm.enabled) return world;

  const auto heard = beacon_reception(world, dyn.comm.range);
  for (std::size_t i = 0; i < cars.size(); ++i) {
    auto& me = cars[i];
    std::optional<std::size_t> ahead;
    for (std::size_t j : heard[i]) {
      const auto& other = cars[j];
      if (other.x <= me.x || !follows(me, other)) continue;
      if (!ahead || other.x < cars[*ahead].x) ahead = j;
    }
    if (!ahead) continue;

    auto& leader = cars[*ahead];
    const double gap = bumper_gap(me, leader, dyn.road.vehicle_length);
    if (!(time_headway(gap, me.v) < dyn.comm.headway_threshold)) continue;

    me.is_follower = true;
    me.leader_record = LeaderRecord{leader.id, leader.x, leader.v, world.time};
    leader.is_leader = true;
    leader.followers.push_back(FollowerRecord{me.id, me.x, me.v, world.time});
    try {
      me.accel_cmd = idm_acceleration(
          gap, me.v, me.v - leader.v,
          with_desired_speed(dyn.actuated, effective_desired_speed(me, dyn.road)));
    } catch (const CollisionError&) {
      throw CollisionError(world.time, me.id, leader.id, gap);
    }
  }
  return world;
}

WorldState step(WorldState world, double dt, const Dynamics& dyn) {
  auto& cars = world.vehicles;
  const auto n = cars.size();
  const double len = dyn.road.vehicle_length;

  std::vector<std::optional<std::size_t>> nearest(n);
  std::vector<double> accel(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& me = cars[i];
    nearest[i] = leader_of(world, i, kInf);
    if (me.accel_cmd) {
      accel[i] = *me.accel_cmd;
      continue;
    }
    const auto params = with_desired_speed(dyn.baseline, effective_desired_speed(me, dyn.road));
    const auto& lead = nearest[i];
    if (lead && cars[*lead].x - me.x <= dyn.road.leader_lookahead) {
      const auto& other = cars[*lead];
      const double gap = bumper_gap(me, other, len);
      if (!(gap > 0.0)) throw CollisionError(world.time, me.id, other.id, gap);
      accel[i] = idm_acceleration(gap, me.v, me.v - other.v, params);
    } else {
      accel[i] = free_road_acceleration(me.v, params);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto& me = cars[i];
    me.accel = accel[i];
    me.v = std::max(0.0, me.v + accel[i] * dt);
    me.x += me.v * dt;
  }
  world.time += dt;

  for (std::size_t i = 0; i < n; ++i) {
    if (!nearest[i]) continue;
    const double gap = bumper_gap(cars[i], cars[*nearest[i]], len);
    if (!(gap > 0.0)) throw CollisionError(world.time, cars[i].id, cars[*nearest[i]].id, gap);
  }

  for (auto& c : cars)
    if (c.lane == Lane::Mainline && c.route == Route::Offramp && c.x >= dyn.road.offramp_position)
      c.lane = Lane::Ramp;
  std::erase_if(cars, [&](const VehicleState& c) {
    return c.lane == Lane::Ramp ? c.x >= dyn.road.offramp_position + dyn.road.offramp_length
                                : c.x >= dyn.road.corridor_length;
  });
  std::stable_sort(cars.begin(), cars.end(),
                   [](const VehicleState& a, const VehicleState& b) { return a.x > b.x; });
  return world;
}

}  // namespace trafficstl::sim
