#pragma once

#include "trafficstl/trace.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

/// n samples at t = k * dt.
inline std::vector<double> grid(std::size_t n, double dt) {
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) t[k] = static_cast<double>(k) * dt;
  return t;
}

inline std::vector<double> sampled(std::size_t n, double dt, const std::function<double(double)>& f) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = f(static_cast<double>(k) * dt);
  return v;
}

/// One trace with the given channels on a shared uniform grid.
inline trafficstl::Trace trace(std::string id, double dt,
                               std::vector<std::pair<std::string, std::vector<double>>> channels) {
  trafficstl::Trace::ChannelMap m;
  for (auto& [name, values] : channels) {
    auto t = grid(values.size(), dt);
    const auto interp = trafficstl::default_interpolation(name);
    m.emplace(name, trafficstl::Signal(std::move(t), std::move(values), interp));
  }
  return trafficstl::Trace(std::move(id), std::move(m));
}

inline trafficstl::Trace constant_speed(double v, double duration = 100.0, double dt = 0.05,
                                        std::string id = "veh") {
  const auto n = static_cast<std::size_t>(duration / dt + 0.5) + 1;
  return trace(std::move(id), dt, {{"speed", std::vector<double>(n, v)}});
}

}  // namespace fixtures
