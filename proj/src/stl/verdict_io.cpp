#include "trafficstl/stl/verdict_io.hpp"

#include "trafficstl/error.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace trafficstl::stl {

namespace {

nlohmann::json robustness_json(double r) {
  if (std::isinf(r)) return r > 0 ? "inf" : "-inf";
  return r;
}

}  // namespace

void write_verdict_csv(std::ostream& out, const Verdict& v) {
  fmt::print(out, "{}\n", kVerdictCsvHeader);
  const auto& t = v.robustness.times();
  const auto& r = v.robustness.values();
  const auto& s = v.satisfaction.values();
  for (std::size_t i = 0; i < t.size(); ++i)
    fmt::print(out, "{:.3f},{},{}\n", t[i], r[i], s[i] > 0 ? 1 : -1);
}

nlohmann::json verdict_summary_json(const Verdict& v, const Formula& f) {
  return {
      {"vehicle_id", v.vehicle_id},
      {"formula", to_string(f)},
      {"summary_robustness", robustness_json(v.summary)},
      {"satisfied", v.satisfied()},
      {"horizon", {v.horizon_start, v.horizon_end}},
  };
}

double robustness_from_json(const nlohmann::json& value) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    if (s == "inf") return inf;
    if (s == "-inf") return -inf;
  }
  throw ParameterError(fmt::format("not a robustness value: {}", value.dump()));
}

}  // namespace trafficstl::stl
