#include "trafficstl/signal.hpp"

#include "trafficstl/error.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace trafficstl {

namespace {

void validate(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.empty()) throw InsufficientDataError("signal needs at least one sample");
  if (times.size() != values.size())
    throw ParameterError(fmt::format("signal has {} times but {} values", times.size(),
                                     values.size()));
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]))
      throw ParameterError(fmt::format("sample {} has non-finite time", i));
    if (std::isnan(values[i])) throw ParameterError(fmt::format("sample {} has NaN value", i));
    if (i > 0 && !(times[i] > times[i - 1]))
      throw ParameterError(fmt::format("sample times not strictly increasing at index {} ({} after {})",
                                       i, times[i], times[i - 1]));
  }
}

}  // namespace

Signal::Signal(std::vector<double> times, std::vector<double> values,
               Interpolation interpolation, std::string unit)
    : times_(std::move(times)),
      values_(std::move(values)),
      interpolation_(interpolation),
      unit_(std::move(unit)) {
  validate(times_, values_);
}

Signal::Signal(std::span<const Sample> samples, Interpolation interpolation, std::string unit)
    : interpolation_(interpolation), unit_(std::move(unit)) {
  times_.reserve(samples.size());
  values_.reserve(samples.size());
  for (const auto& s : samples) {
    times_.push_back(s.t);
    values_.push_back(s.value);
  }
  validate(times_, values_);
}

Signal Signal::with_values(std::vector<double> values) const {
  return Signal(times_, std::move(values), interpolation_, unit_);
}

double value_at(const Signal& signal, double t) {
  const auto& ts = signal.times();
  const auto& vs = signal.values();
  if (std::isnan(t) || t < ts.front() - kTimeEpsilon || t > ts.back() + kTimeEpsilon)
    throw DomainError(t, ts.front(), ts.back());

  // First sample strictly after t; the bracketing interval is [hi-1, hi].
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  if (it == ts.begin()) return vs.front();
  const auto hi = static_cast<std::size_t>(it - ts.begin());
  const std::size_t lo = hi - 1;
  if (hi == ts.size() || std::abs(t - ts[lo]) <= kTimeEpsilon) return vs[lo];
  if (std::abs(ts[hi] - t) <= kTimeEpsilon) return vs[hi];
  if (signal.interpolation() == Interpolation::PiecewiseConstant) return vs[lo];

  const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
  return vs[lo] + w * (vs[hi] - vs[lo]);
}

Signal derivative(const Signal& signal) {
  const auto n = signal.size();
  if (n < 2) throw InsufficientDataError("derivative needs at least 2 samples");
  const auto& t = signal.times();
  const auto& x = signal.values();

  std::vector<double> d(n);
  d[0] = (x[1] - x[0]) / (t[1] - t[0]);
  d[n - 1] = (x[n - 1] - x[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (x[i + 1] - x[i - 1]) / (t[i + 1] - t[i - 1]);

  return Signal(t, std::move(d), signal.interpolation());
}

Signal exp_smooth(const Signal& signal, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ParameterError(fmt::format("smoothing alpha must be in (0, 1], got {}", alpha));
  if (alpha == 1.0) return signal;
  const auto& x = signal.values();
  std::vector<double> y(x.size());
  y[0] = x[0];
  // Incremental form of alpha*x + (1-alpha)*y; keeps constant inputs exact.
  for (std::size_t i = 1; i < x.size(); ++i) y[i] = y[i - 1] + alpha * (x[i] - y[i - 1]);
  return signal.with_values(std::move(y));
}

}  // namespace trafficstl
