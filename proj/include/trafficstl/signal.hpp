#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace trafficstl {

/// How a signal is read between two consecutive samples.
enum class Interpolation {
  PiecewiseConstant,  ///< left-hold: the value of the most recent sample
  PiecewiseLinear,
};

struct Sample {
  double t = 0.0;
  double value = 0.0;
};

/// Absolute slack (seconds) used when comparing sample times against a
/// requested instant. Keeps 50 ms grids built by repeated addition usable.
inline constexpr double kTimeEpsilon = 1e-9;

/// An immutable, time-ordered sequence of samples.
///
/// Sample times are finite and strictly increasing; there is at least one
/// sample. Values may be any non-NaN double (robustness signals carry +/-inf
/// for vacuous predicates).
class Signal {
 public:
  Signal(std::vector<double> times, std::vector<double> values,
         Interpolation interpolation = Interpolation::PiecewiseLinear, std::string unit = {});
  Signal(std::span<const Sample> samples,
         Interpolation interpolation = Interpolation::PiecewiseLinear, std::string unit = {});

  std::size_t size() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }
  Sample sample(std::size_t i) const { return {times_[i], values_[i]}; }
  double front_time() const { return times_.front(); }
  double back_time() const { return times_.back(); }
  Interpolation interpolation() const { return interpolation_; }
  const std::string& unit() const { return unit_; }

  /// Same grid, same interpolation and unit, new values.
  Signal with_values(std::vector<double> values) const;

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  Interpolation interpolation_;
  std::string unit_;
};

/// Value of the signal at time t. Exact at sample points; between samples the
/// signal's interpolation mode applies. Throws DomainError outside
/// [front_time, back_time].
double value_at(const Signal& signal, double t);

/// Finite-difference derivative on the input grid: central differences at
/// interior points, one-sided differences at both ends. Needs >= 2 samples.
Signal derivative(const Signal& signal);

/// Exponential smoothing y[0] = x[0], y[i] = alpha*x[i] + (1-alpha)*y[i-1].
/// alpha must lie in (0, 1].
Signal exp_smooth(const Signal& signal, double alpha);

inline constexpr double kDefaultSmoothingAlpha = 0.3;

}  // namespace trafficstl
