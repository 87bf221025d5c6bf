#pragma once

namespace trafficstl::sim {

/// Intelligent Driver Model parameters.
struct IdmParams {
  double a_max = 1.4;     ///< maximum acceleration, m/s^2
  double b_comf = 2.0;    ///< comfortable deceleration, m/s^2
  double time_gap = 4.0;  ///< safe time gap T, s
  double s0 = 2.0;        ///< jam distance, m
  double v0 = 31.0;       ///< desired speed, m/s
  double delta = 4.0;     ///< free-road exponent

  /// Throws ParameterError unless every field is positive (s0 may be 0).
  void validate() const;
};

/// Desired minimum gap s* = s0 + v*T + v*dv / (2*sqrt(a*b)), unclamped.
/// dv is follower speed minus leader speed (positive when closing in).
double desired_gap(double v, double dv, const IdmParams& p);

/// a * [1 - (v/v0)^delta - (max(s0, s*) / s)^2]. Throws CollisionError when
/// the gap s is not positive.
double idm_acceleration(double s, double v, double dv, const IdmParams& p);

/// Free-road term a * [1 - (v/v0)^delta], used when there is no leader.
double free_road_acceleration(double v, const IdmParams& p);

}  // namespace trafficstl::sim
