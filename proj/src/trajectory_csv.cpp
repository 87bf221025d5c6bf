#include "trafficstl/trajectory_csv.hpp"

#include "trafficstl/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace trafficstl {

namespace {

struct Columns {
  std::vector<double> t, x, speed, headway, offramp;
  std::vector<std::string> leader;
};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_number(std::string_view field, const char* column, const std::string& source,
                    std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
    throw CsvError(source, line, fmt::format("column '{}': '{}' is not a number", column, field));
  if (!std::isfinite(value))
    throw CsvError(source, line, fmt::format("column '{}': value must be finite", column));
  return value;
}

}  // namespace

std::vector<Trace> parse_trajectory_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw CsvError(source, 1, "empty file, expected header");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryCsvHeader)
    throw CsvError(source, lineno, fmt::format("bad header '{}', expected '{}'", line,
                                               kTrajectoryCsvHeader));

  std::vector<std::string> order;
  std::map<std::string, Columns, std::less<>> by_vehicle;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split(line);
    if (f.size() != 7)
      throw CsvError(source, lineno, fmt::format("expected 7 fields, found {}", f.size()));
    if (f[1].empty()) throw CsvError(source, lineno, "empty vehicle_id");

    const double t = parse_number(f[0], "t", source, lineno);
    const double x = parse_number(f[2], "x", source, lineno);
    const double v = parse_number(f[3], "speed", source, lineno);
    const double h = parse_number(f[4], "headway", source, lineno);
    if (f[6] != "0" && f[6] != "1")
      throw CsvError(source, lineno, fmt::format("column 'on_offramp': '{}' is not 0 or 1", f[6]));

    auto it = by_vehicle.find(f[1]);
    if (it == by_vehicle.end()) {
      order.emplace_back(f[1]);
      it = by_vehicle.emplace(std::string(f[1]), Columns{}).first;
    }
    Columns& c = it->second;
    if (!c.t.empty() && !(t > c.t.back()))
      throw CsvError(source, lineno,
                     fmt::format("time {} for vehicle '{}' does not increase (previous {})", t,
                                 f[1], c.t.back()));
    c.t.push_back(t);
    c.x.push_back(x);
    c.speed.push_back(v);
    c.headway.push_back(h);
    c.leader.emplace_back(f[5]);
    c.offramp.push_back(f[6] == "1" ? 1.0 : 0.0);
  }

  std::vector<Trace> traces;
  traces.reserve(order.size());
  for (const auto& id : order) {
    Columns& c = by_vehicle.at(id);
    auto make = [&](std::string_view name, std::vector<double>& values) {
      return Signal(c.t, std::move(values), default_interpolation(name));
    };
    Trace::ChannelMap channels;
    channels.emplace(std::string(channel::kPosition), make(channel::kPosition, c.x));
    channels.emplace(std::string(channel::kSpeed), make(channel::kSpeed, c.speed));
    channels.emplace(std::string(channel::kHeadway), make(channel::kHeadway, c.headway));
    channels.emplace(std::string(channel::kOnOfframp), make(channel::kOnOfframp, c.offramp));
    traces.push_back(Trace(id, std::move(channels)).with_leader_ids(std::move(c.leader)));
  }
  return traces;
}

std::vector<Trace> read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CsvError(path.string(), 0, "cannot open file");
  return parse_trajectory_csv(in, path.string());
}

void write_trajectory_csv(std::ostream& out, std::span<const Trace> traces) {
  struct Row {
    double t;
    std::size_t trace;
  };
  std::vector<Row> rows;
  for (std::size_t k = 0; k < traces.size(); ++k) {
    const auto& id = traces[k].vehicle_id();
    if (id.empty() || id.find_first_of(",\n\r\"") != std::string::npos)
      throw ParameterError(fmt::format("vehicle id '{}' cannot be written to CSV", id));
    for (double t : traces[k].time_grid()) rows.push_back({t, k});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.t < b.t; });

  fmt::print(out, "{}\n", kTrajectoryCsvHeader);
  for (const auto& row : rows) {
    const Trace& tr = traces[row.trace];
    const auto& hw = tr.channel(channel::kHeadway);
    const double h = value_at(hw, row.t);
    std::string leader;
    if (tr.leader_ids()) {
      auto it = std::lower_bound(hw.times().begin(), hw.times().end(), row.t - kTimeEpsilon);
      if (it != hw.times().end() && std::abs(*it - row.t) <= kTimeEpsilon)
        leader = (*tr.leader_ids())[static_cast<std::size_t>(it - hw.times().begin())];
    }
    const std::string headway = h < 0.0 ? std::string("-1.0") : fmt::format("{:.4f}", h);
    fmt::print(out, "{:.3f},{},{:.3f},{:.4f},{},{},{}\n", row.t, tr.vehicle_id(),
               value_at(tr.channel(channel::kPosition), row.t),
               value_at(tr.channel(channel::kSpeed), row.t), headway, leader,
               value_at(tr.channel(channel::kOnOfframp), row.t) > 0.5 ? 1 : 0);
  }
}

void write_trajectory_csv(const std::filesystem::path& path, std::span<const Trace> traces) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  write_trajectory_csv(out, traces);
}

}  // namespace trafficstl
