#include "trafficstl/stl/monitor.hpp"

#include "trafficstl/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

namespace trafficstl::stl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_channels(const Formula& f, const Trace& trace) {
  for (const auto& name : referenced_channels(f))
    if (!trace.has(name)) throw MissingChannelError(name);
}

double atom_robustness(const Predicate& p, const Trace& trace, double t) {
  if (p.mask) {
    const double g = value_at(trace.channel(p.mask->channel), t);
    if (margin(p.mask->comparison, g, p.mask->threshold) > 0.0) return kInf;
  }
  return margin(p.comparison, value_at(trace.channel(p.channel), t), p.threshold);
}

/// Number of grid points with t <= limit (within kTimeEpsilon).
std::size_t count_upto(const std::vector<double>& grid, double limit) {
  return static_cast<std::size_t>(
      std::upper_bound(grid.begin(), grid.end(), limit + kTimeEpsilon) - grid.begin());
}

// ---------------------------------------------------------------------------
// Pointwise evaluation

class PointEvaluator {
 public:
  explicit PointEvaluator(const Trace& trace) : trace_(trace), grid_(trace.time_grid()) {}

  double eval(const Formula& f, double t) const {
    switch (f.op()) {
      case Op::Atom: return atom_robustness(f.predicate(), trace_, t);
      case Op::Not: return -eval(f.child(), t);
      case Op::And: return std::min(eval(f.child(0), t), eval(f.child(1), t));
      case Op::Or: return std::max(eval(f.child(0), t), eval(f.child(1), t));
      case Op::Implies: return std::max(-eval(f.child(0), t), eval(f.child(1), t));
      case Op::Always:
      case Op::Eventually: {
        const bool is_always = f.op() == Op::Always;
        double acc = is_always ? kInf : -kInf;
        const auto [first, last] = window(f.interval(), t, valid(f.child()));
        for (std::size_t j = first; j < last; ++j) {
          const double r = eval(f.child(), grid_[j]);
          acc = is_always ? std::min(acc, r) : std::max(acc, r);
        }
        return acc;
      }
      case Op::Until: {
        const auto limit = std::min(valid(f.child(0)), valid(f.child(1)));
        const auto [first, last] = window(f.interval(), t, limit);
        const auto start = static_cast<std::size_t>(
            std::lower_bound(grid_.begin(), grid_.end(), t - kTimeEpsilon) - grid_.begin());
        double best = -kInf;
        for (std::size_t j = first; j < last; ++j) {
          double hold = kInf;
          for (std::size_t k = start; k <= j; ++k) hold = std::min(hold, eval(f.child(0), grid_[k]));
          best = std::max(best, std::min(eval(f.child(1), grid_[j]), hold));
        }
        return best;
      }
    }
    return 0.0;
  }

 private:
  std::size_t valid(const Formula& f) const { return count_upto(grid_, horizon_end(f, trace_)); }

  // Grid indices [first, last) with t+a <= t_j <= t+b, restricted to j < limit.
  std::pair<std::size_t, std::size_t> window(const Interval& iv, double t, std::size_t limit) const {
    const auto first = static_cast<std::size_t>(
        std::lower_bound(grid_.begin(), grid_.end(), t + iv.lo - kTimeEpsilon) - grid_.begin());
    std::size_t last = limit;
    if (iv.hi) last = std::min(last, count_upto(grid_, t + *iv.hi));
    return {first, std::max(first, last)};
  }

  const Trace& trace_;
  const std::vector<double>& grid_;
};

// ---------------------------------------------------------------------------
// Whole-signal evaluation

/// Extremum of x[lo[i] .. hi[i]] for every i using a monotone wedge; lo and hi
/// must be non-decreasing. Empty windows (hi < lo) yield the identity.
std::vector<double> windowed_extremum(const std::vector<double>& x,
                                      const std::vector<std::ptrdiff_t>& lo,
                                      const std::vector<std::ptrdiff_t>& hi, bool take_min) {
  const double identity = take_min ? kInf : -kInf;
  std::vector<double> out(lo.size(), identity);
  std::vector<std::ptrdiff_t> wedge(x.size());
  std::size_t head = 0;
  std::size_t tail = 0;
  std::ptrdiff_t next = 0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    for (; next <= hi[i]; ++next) {
      const double v = x[static_cast<std::size_t>(next)];
      while (tail > head) {
        const double back = x[static_cast<std::size_t>(wedge[tail - 1])];
        if (take_min ? back >= v : back <= v) --tail;
        else break;
      }
      wedge[tail++] = next;
    }
    while (tail > head && wedge[head] < lo[i]) ++head;
    if (tail > head && lo[i] <= hi[i]) out[i] = x[static_cast<std::size_t>(wedge[head])];
  }
  return out;
}

class SignalEvaluator {
 public:
  explicit SignalEvaluator(const Trace& trace) : trace_(trace), grid_(trace.time_grid()) {}

  /// Robustness at grid indices [0, valid(f)).
  std::vector<double> eval(const Formula& f) const {
    const std::size_t n = valid(f);
    switch (f.op()) {
      case Op::Atom: {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = atom_robustness(f.predicate(), trace_, grid_[i]);
        return out;
      }
      case Op::Not: {
        auto out = eval(f.child());
        for (auto& v : out) v = -v;
        return out;
      }
      case Op::And:
      case Op::Or:
      case Op::Implies: {
        const auto a = eval(f.child(0));
        const auto b = eval(f.child(1));
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
          if (f.op() == Op::And) out[i] = std::min(a[i], b[i]);
          else if (f.op() == Op::Or) out[i] = std::max(a[i], b[i]);
          else out[i] = std::max(-a[i], b[i]);
        }
        return out;
      }
      case Op::Always:
      case Op::Eventually: {
        const auto x = eval(f.child());
        const auto [lo, hi] = windows(f.interval(), n, x.size());
        return windowed_extremum(x, lo, hi, f.op() == Op::Always);
      }
      case Op::Until: return until_signal(f, n);
    }
    return {};
  }

  std::size_t valid(const Formula& f) const { return count_upto(grid_, horizon_end(f, trace_)); }

 private:
  // For i in [0, n): lo[i] = first j with t_j >= t_i + a, hi[i] = last j < limit
  // with t_j <= t_i + b. Both advance monotonically.
  std::pair<std::vector<std::ptrdiff_t>, std::vector<std::ptrdiff_t>> windows(
      const Interval& iv, std::size_t n, std::size_t limit) const {
    std::vector<std::ptrdiff_t> lo(n), hi(n);
    std::size_t l = 0;
    std::size_t h = 0;  // one past the current upper end
    for (std::size_t i = 0; i < n; ++i) {
      const double start = grid_[i] + iv.lo - kTimeEpsilon;
      while (l < grid_.size() && grid_[l] < start) ++l;
      if (iv.hi) {
        const double stop = grid_[i] + *iv.hi + kTimeEpsilon;
        while (h < limit && grid_[h] <= stop) ++h;
      } else {
        h = limit;
      }
      lo[i] = static_cast<std::ptrdiff_t>(l);
      hi[i] = static_cast<std::ptrdiff_t>(h) - 1;
    }
    return {std::move(lo), std::move(hi)};
  }

  std::vector<double> until_signal(const Formula& f, std::size_t n) const {
    const auto hold = eval(f.child(0));
    const auto goal = eval(f.child(1));
    const std::size_t limit = std::min(hold.size(), goal.size());
    const auto [lo, hi] = windows(f.interval(), n, limit);
    std::vector<double> out(n, -kInf);

    if (f.interval().unbounded()) {
      // reach[k] = max_{j >= k} min(goal[j], min hold[k..j]), computed backwards.
      std::vector<double> reach(limit + 1, -kInf);
      for (std::size_t k = limit; k-- > 0;)
        reach[k] = std::min(hold[k], std::max(goal[k], reach[k + 1]));
      // hold must also persist on [i, lo[i]) before the window opens.
      std::vector<std::ptrdiff_t> pre_lo(n), pre_hi(n);
      for (std::size_t i = 0; i < n; ++i) {
        pre_lo[i] = static_cast<std::ptrdiff_t>(i);
        pre_hi[i] = lo[i] - 1;
      }
      const auto prefix = windowed_extremum(hold, pre_lo, pre_hi, true);
      for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(lo[i]);
        if (k < limit) out[i] = std::min(prefix[i], reach[k]);
      }
      return out;
    }

    // Bounded: scan the window once per sample; stop as soon as the running
    // minimum of `hold` cannot beat the best candidate found so far.
    for (std::size_t i = 0; i < n; ++i) {
      double best = -kInf;
      double run = kInf;
      for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i); j <= hi[i]; ++j) {
        const auto u = static_cast<std::size_t>(j);
        run = std::min(run, hold[u]);
        if (run <= best) break;
        if (j >= lo[i]) best = std::max(best, std::min(goal[u], run));
      }
      out[i] = best;
    }
    return out;
  }

  const Trace& trace_;
  const std::vector<double>& grid_;
};

void check_time(const Formula& f, const Trace& trace, double t) {
  const double end = horizon_end(f, trace);
  if (std::isnan(t) || t < trace.t_start() - kTimeEpsilon || t > end + kTimeEpsilon)
    throw HorizonError(fmt::format("time {} is outside the formula horizon [{}, {}] of trace '{}'",
                                   t, trace.t_start(), end, trace.vehicle_id()));
}

}  // namespace

double horizon_end(const Formula& f, const Trace& trace) {
  return trace.t_end() - temporal_depth(f);
}

double robustness(const Formula& f, const Trace& trace, double t) {
  require_channels(f, trace);
  check_time(f, trace, t);
  return PointEvaluator(trace).eval(f, t);
}

Verdict monitor(const Formula& f, const Trace& trace) {
  require_channels(f, trace);
  SignalEvaluator evaluator(trace);
  const std::size_t n = evaluator.valid(f);
  if (n == 0)
    throw HorizonError(fmt::format(
        "trace '{}' spans {} s but the formula needs at least {} s of data", trace.vehicle_id(),
        trace.t_end() - trace.t_start(), temporal_depth(f)));

  auto rho = evaluator.eval(f);
  const auto& grid = trace.time_grid();
  std::vector<double> times(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<double> sat(n);
  for (std::size_t i = 0; i < n; ++i) sat[i] = rho[i] > 0.0 ? 1.0 : -1.0;

  Verdict v{
      trace.vehicle_id(),
      Signal(times, std::move(rho), Interpolation::PiecewiseConstant),
      Signal(times, std::move(sat), Interpolation::PiecewiseConstant),
      0.0,
      times.front(),
      times.back(),
  };
  v.summary = v.robustness.values().front();
  return v;
}

}  // namespace trafficstl::stl
