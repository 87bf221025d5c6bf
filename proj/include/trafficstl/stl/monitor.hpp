#pragma once

#include "trafficstl/signal.hpp"
#include "trafficstl/stl/formula.hpp"
#include "trafficstl/trace.hpp"

#include <string>

namespace trafficstl::stl {

/// Result of monitoring one formula over one trace.
struct Verdict {
  std::string vehicle_id;
  /// Quantitative robustness at every trace sample time inside the horizon.
  Signal robustness;
  /// +1 where robustness > 0, -1 otherwise (exactly 0 counts as violating).
  Signal satisfaction;
  /// Robustness at the first sample time.
  double summary = 0.0;
  double horizon_start = 0.0;
  double horizon_end = 0.0;

  bool satisfied() const { return summary > 0.0; }
};

/// Last instant at which `f` is defined on `trace`: t_end - temporal_depth(f).
double horizon_end(const Formula& f, const Trace& trace);

/// Direct recursive evaluation of the robustness of `f` at time `t`.
///
/// Atoms read the trace through interpolation; temporal operators range over
/// the trace sample times inside the closed window [t+a, t+b] (clipped to the
/// operand's horizon for unbounded windows). Throws HorizonError when t is
/// outside [t_start, horizon_end] and MissingChannelError for unknown
/// channels.
double robustness(const Formula& f, const Trace& trace, double t);

/// Robustness signal over the whole horizon. Always/Eventually use monotone
/// wedge sliding-window extrema; the result equals robustness() at every
/// sample time. Throws HorizonError when the trace is shorter than the
/// formula's temporal depth.
Verdict monitor(const Formula& f, const Trace& trace);

}  // namespace trafficstl::stl
