#include "trafficstl/sim/idm.hpp"

#include "trafficstl/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace trafficstl::sim {

void IdmParams::validate() const {
  const bool ok = a_max > 0.0 && b_comf > 0.0 && time_gap > 0.0 && s0 >= 0.0 && v0 > 0.0 &&
                  delta > 0.0;
  if (!ok)
    throw ParameterError(fmt::format(
        "IDM parameters must be positive (a_max={}, b_comf={}, time_gap={}, s0={}, v0={}, delta={})",
        a_max, b_comf, time_gap, s0, v0, delta));
}

double desired_gap(double v, double dv, const IdmParams& p) {
  return p.s0 + v * p.time_gap + v * dv / (2.0 * std::sqrt(p.a_max * p.b_comf));
}

double free_road_acceleration(double v, const IdmParams& p) {
  return p.a_max * (1.0 - std::pow(v / p.v0, p.delta));
}

double idm_acceleration(double s, double v, double dv, const IdmParams& p) {
  if (!(s > 0.0))
    throw CollisionError(std::numeric_limits<double>::quiet_NaN(), "?", "?", s);
  const double target = std::max(p.s0, desired_gap(v, dv, p));
  const double ratio = target / s;
  return free_road_acceleration(v, p) - p.a_max * ratio * ratio;
}

}  // namespace trafficstl::sim
