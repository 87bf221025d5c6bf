#pragma once

#include "trafficstl/signal.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trafficstl {

/// Well-known channel names used by the CSV schema and the safety specs.
namespace channel {
inline constexpr std::string_view kPosition = "x";
inline constexpr std::string_view kSpeed = "speed";
inline constexpr std::string_view kHeadway = "headway";
inline constexpr std::string_view kAcceleration = "accel";
inline constexpr std::string_view kJerk = "jerk";
inline constexpr std::string_view kOnOfframp = "on_offramp";
}  // namespace channel

/// Headway samples below zero mean "no leader at this instant".
inline constexpr double kNoLeaderHeadway = -1.0;

/// Named, time-aligned signals recorded for one vehicle.
///
/// Every channel spans the same [t_start, t_end]; per-channel sample times
/// may differ. Negative headway is kept as-is (it encodes "no leader").
class Trace {
 public:
  using ChannelMap = std::map<std::string, Signal, std::less<>>;

  Trace(std::string vehicle_id, ChannelMap channels);

  const std::string& vehicle_id() const { return vehicle_id_; }
  const ChannelMap& channels() const { return channels_; }
  bool has(std::string_view name) const { return channels_.find(name) != channels_.end(); }
  /// Throws MissingChannelError when absent.
  const Signal& channel(std::string_view name) const;

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }

  /// Sorted union of every channel's sample times.
  const std::vector<double>& time_grid() const { return grid_; }

  /// Copy with `name` added or replaced.
  Trace with_channel(std::string name, Signal signal) const;

  /// Optional per-sample leader ids, aligned with the headway channel.
  const std::optional<std::vector<std::string>>& leader_ids() const { return leader_ids_; }
  Trace with_leader_ids(std::vector<std::string> ids) const;

 private:
  std::string vehicle_id_;
  ChannelMap channels_;
  double t_start_ = 0.0;
  double t_end_ = 0.0;
  std::vector<double> grid_;
  std::optional<std::vector<std::string>> leader_ids_;
};

/// Which quantity gets smoothed before jerk is differentiated.
enum class SmoothingOrder {
  /// accel = smooth(d speed), jerk = smooth(d accel)
  SmoothAccelerationFirst,
  /// accel = smooth(d speed), jerk = smooth(d raw_accel)
  DifferentiateRawAcceleration,
};

struct KinematicsOptions {
  bool smooth = true;
  double alpha = kDefaultSmoothingAlpha;
  SmoothingOrder order = SmoothingOrder::SmoothAccelerationFirst;
};

/// Adds `accel` and `jerk` channels when absent, derived from `speed` (or
/// from an existing `accel`). Existing channels are left untouched.
Trace with_kinematics(const Trace& trace, const KinematicsOptions& options = {});

/// Default interpolation for a named channel: piecewise-constant for headway
/// and flags, piecewise-linear otherwise.
Interpolation default_interpolation(std::string_view channel_name);

}  // namespace trafficstl
