#pragma once

#include "trafficstl/stl/formula.hpp"
#include "trafficstl/stl/monitor.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

namespace trafficstl::stl {

inline constexpr std::string_view kVerdictCsvHeader = "t,robustness,satisfaction";

/// `t,robustness,satisfaction`, one row per sample in the horizon.
void write_verdict_csv(std::ostream& out, const Verdict& v);

/// {vehicle_id, formula, summary_robustness, satisfied, horizon: [t0, t1]}.
/// Infinite robustness is written as the strings "inf" / "-inf".
nlohmann::json verdict_summary_json(const Verdict& v, const Formula& f);

/// Reads a number written by verdict_summary_json (accepts "inf"/"-inf").
double robustness_from_json(const nlohmann::json& value);

}  // namespace trafficstl::stl
