#pragma once

#include "trafficstl/trace.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trafficstl {

/// One row per vehicle per time step. `t` is written with 3 decimals,
/// headway is -1.0 when there is no leader, leader_id is empty when none.
inline constexpr std::string_view kTrajectoryCsvHeader =
    "t,vehicle_id,x,speed,headway,leader_id,on_offramp";

/// Parses the trajectory schema and groups rows into one Trace per vehicle,
/// in order of first appearance. Throws CsvError naming `source` and line.
std::vector<Trace> parse_trajectory_csv(std::istream& in, const std::string& source);
std::vector<Trace> read_trajectory_csv(const std::filesystem::path& path);

/// Writes the traces interleaved by time. Each trace must carry the x, speed,
/// headway and on_offramp channels.
void write_trajectory_csv(std::ostream& out, std::span<const Trace> traces);
void write_trajectory_csv(const std::filesystem::path& path, std::span<const Trace> traces);

}  // namespace trafficstl
