#include "trafficstl/trace.hpp"

#include "trafficstl/error.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace trafficstl {

Trace::Trace(std::string vehicle_id, ChannelMap channels)
    : vehicle_id_(std::move(vehicle_id)), channels_(std::move(channels)) {
  if (channels_.empty())
    throw InsufficientDataError(fmt::format("trace '{}' has no channels", vehicle_id_));

  const auto& first = channels_.begin()->second;
  t_start_ = first.front_time();
  t_end_ = first.back_time();
  for (const auto& [name, sig] : channels_) {
    if (std::abs(sig.front_time() - t_start_) > kTimeEpsilon ||
        std::abs(sig.back_time() - t_end_) > kTimeEpsilon)
      throw ParameterError(fmt::format(
          "trace '{}': channel '{}' spans [{}, {}] but the trace spans [{}, {}]", vehicle_id_,
          name, sig.front_time(), sig.back_time(), t_start_, t_end_));
  }

  for (const auto& [name, sig] : channels_) grid_.insert(grid_.end(), sig.times().begin(), sig.times().end());
  std::sort(grid_.begin(), grid_.end());
  grid_.erase(std::unique(grid_.begin(), grid_.end(),
                          [](double a, double b) { return std::abs(a - b) <= kTimeEpsilon; }),
              grid_.end());
}

const Signal& Trace::channel(std::string_view name) const {
  auto it = channels_.find(name);
  if (it == channels_.end()) throw MissingChannelError(std::string(name));
  return it->second;
}

Trace Trace::with_channel(std::string name, Signal signal) const {
  ChannelMap copy = channels_;
  copy.insert_or_assign(std::move(name), std::move(signal));
  Trace out(vehicle_id_, std::move(copy));
  out.leader_ids_ = leader_ids_;
  return out;
}

Trace Trace::with_leader_ids(std::vector<std::string> ids) const {
  const auto& hw = channel(channel::kHeadway);
  if (ids.size() != hw.size())
    throw ParameterError(fmt::format("trace '{}': {} leader ids for {} headway samples",
                                     vehicle_id_, ids.size(), hw.size()));
  Trace out = *this;
  out.leader_ids_ = std::move(ids);
  return out;
}

Trace with_kinematics(const Trace& trace, const KinematicsOptions& options) {
  const bool need_accel = !trace.has(channel::kAcceleration);
  const bool need_jerk = !trace.has(channel::kJerk);
  if (!need_accel && !need_jerk) return trace;

  auto smooth = [&](const Signal& s) {
    return options.smooth ? exp_smooth(s, options.alpha) : s;
  };

  Trace out = trace;
  std::optional<Signal> raw_accel;
  if (need_accel) {
    raw_accel = derivative(trace.channel(channel::kSpeed));
    out = out.with_channel(std::string(channel::kAcceleration), smooth(*raw_accel));
  }
  if (need_jerk) {
    const Signal& jerk_source =
        (raw_accel && options.order == SmoothingOrder::DifferentiateRawAcceleration)
            ? *raw_accel
            : out.channel(channel::kAcceleration);
    out = out.with_channel(std::string(channel::kJerk), smooth(derivative(jerk_source)));
  }
  return out;
}

Interpolation default_interpolation(std::string_view name) {
  if (name == channel::kHeadway || name == channel::kOnOfframp)
    return Interpolation::PiecewiseConstant;
  return Interpolation::PiecewiseLinear;
}

}  // namespace trafficstl
