// One line per acceptance criterion: PASS or FAIL, a name, and the measured
// numbers. Exit status is non-zero when any criterion fails.

#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random_stl.hpp"
#include "trafficstl/error.hpp"
#include "trafficstl/sim/idm.hpp"
#include "trafficstl/sim/scenario.hpp"
#include "trafficstl/specs/specs.hpp"
#include "trafficstl/stl/monitor.hpp"
#include "trafficstl/stl/parser.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

using namespace trafficstl;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, fmt::format("threw: {}", e.what())};
  }
  if (!o.pass) ++failures;
  fmt::print("{} {}: {}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool close(double a, double b, double tol) { return a == b || std::abs(a - b) <= tol; }

constexpr int kRandomFormulas = 1000;
constexpr std::uint64_t kRandomSeed = 20240601;

Outcome oracle_equivalence() {
  random_stl::Generator gen(kRandomSeed);
  const auto t0 = Clock::now();
  std::size_t samples = 0, mismatches = 0;
  double worst = 0.0;
  for (int i = 0; i < kRandomFormulas; ++i) {
    const auto f = gen.formula(4, 20);
    const auto ch = gen.channels(f, 200);
    const auto got = stl::monitor(f, random_stl::to_trace(ch)).robustness.values();
    const auto want = oracle::Oracle(ch).signal(f);
    if (got.size() != want.size()) {
      ++mismatches;
      continue;
    }
    for (std::size_t k = 0; k < got.size(); ++k, ++samples) {
      if (got[k] == want[k]) continue;
      const double err = std::abs(got[k] - want[k]);
      worst = std::max(worst, std::isnan(err) ? INFINITY : err);
      if (!(err <= 1e-9)) ++mismatches;
    }
  }
  const double elapsed = seconds_since(t0);
  return {mismatches == 0 && elapsed < 60.0,
          fmt::format("{} formulas, {} samples, {} mismatches, max error {:.3g}, {:.2f} s", kRandomFormulas,
                      samples, mismatches, worst, elapsed)};
}

Outcome dualities() {
  random_stl::Generator gen(kRandomSeed + 1);
  std::size_t checked = 0, broken = 0;
  for (int i = 0; i < kRandomFormulas; ++i) {
    const auto f = gen.formula(3, 20);
    const auto g = gen.formula(3, 20);
    const auto iv = gen.interval(20);
    const auto ch = gen.channels(stl::always(stl::Interval::bounded(0, 20), stl::conjunction(f, g)), 200);
    const auto tr = random_stl::to_trace(ch);

    const auto rf = stl::monitor(f, tr).robustness.values();
    const auto rg = stl::monitor(g, tr).robustness.values();
    const auto neg = stl::monitor(stl::negation(f), tr).robustness.values();
    const auto ev = stl::monitor(stl::eventually(iv, f), tr).robustness.values();
    const auto al = stl::monitor(stl::always(iv, stl::negation(f)), tr).robustness.values();
    const auto conj = stl::monitor(stl::conjunction(f, g), tr).robustness.values();
    const auto disj = stl::monitor(stl::disjunction(f, g), tr).robustness.values();

    for (std::size_t k = 0; k < neg.size(); ++k, ++checked) broken += neg[k] != -rf[k];
    for (std::size_t k = 0; k < ev.size(); ++k, ++checked) broken += ev[k] != -al[k];
    for (std::size_t k = 0; k < conj.size(); ++k, checked += 2) {
      broken += conj[k] != std::min(rf[k], rg[k]);
      broken += disj[k] != std::max(rf[k], rg[k]);
    }
  }
  return {broken == 0, fmt::format("{} identities checked exactly, {} broken", checked, broken)};
}

Outcome idm_numerics() {
  const sim::IdmParams p{1.4, 2.0, 4.0, 2.0, 31.0, 4.0};
  const double g0 = sim::desired_gap(0, 0, p);
  const double g25 = sim::desired_gap(25, 0, p);
  const double g25_5 = sim::desired_gap(25, 5, p);
  const double a = sim::idm_acceleration(102, 25, 0, p);
  const bool ok = close(g0, 2.0, 1e-12) && close(g25, 102.0, 1e-12) && close(g25_5, 139.35, 0.01) &&
                  close(a, -0.592, 0.005);
  return {ok, fmt::format("s*(0,0)={:.4f} s*(25,0)={:.4f} s*(25,5)={:.4f} a(25,s=102)={:.5f}", g0, g25,
                          g25_5, a)};
}

Outcome simulator_safety() {
  const auto t0 = Clock::now();
  double min_gap = INFINITY;
  std::size_t runs = 0;
  std::string problem;
  for (bool comm : {true, false}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      sim::ScenarioConfig c;
      c.rng_seed = seed;
      c.comm_enabled = comm;
      try {
        const auto r = sim::run_scenario(c);
        if (r.traces.size() != 110) problem = fmt::format("seed {} produced {} traces", seed, r.traces.size());
        min_gap = std::min(min_gap, r.min_gap);
      } catch (const CollisionError& e) {
        problem = e.what();
      }
      ++runs;
    }
  }
  const double elapsed = seconds_since(t0);
  return {problem.empty() && min_gap > 0.0 && elapsed < 10.0,
          fmt::format("{} runs (10 seeds, with and without communication), min gap {:.2f} m, {:.2f} s{}", runs,
                      min_gap, elapsed, problem.empty() ? "" : ", " + problem)};
}

struct HeadwayTally {
  double fraction_ok = 0.0;
  std::size_t violators = 0;
  std::size_t follower_violators = 0;
  std::size_t followers = 0;
};

HeadwayTally headway_tally(const sim::ScenarioConfig& c, const stl::Formula& spec) {
  const auto r = sim::run_scenario(c);
  HeadwayTally out;
  std::size_t led = 0, ok = 0;
  for (const auto& t : r.traces) {
    for (double h : t.channel(channel::kHeadway).values()) {
      if (h < 0) continue;
      ++led;
      ok += h >= 4.0;
    }
    bool violates = false;
    try {
      violates = !stl::monitor(spec, t).satisfied();
    } catch (const HorizonError&) {
      continue;  // left the corridor too early to judge
    }
    out.violators += violates;
    if (r.ever_followers.count(t.vehicle_id())) {
      ++out.followers;
      out.follower_violators += violates;
    }
  }
  out.fraction_ok = led ? static_cast<double>(ok) / static_cast<double>(led) : 0.0;
  return out;
}

Outcome ivc_reproduction() {
  const auto spec = specs::build_headway_spec({});
  bool ok = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    sim::ScenarioConfig c;
    c.rng_seed = seed;
    c.mean_headway = 5.0;
    c.min_headway = 4.0;
    c.speed_spread = 0.15;
    c.comm_enabled = false;
    const auto base = headway_tally(c, spec);
    c.comm_enabled = true;
    const auto ivc = headway_tally(c, spec);
    const bool seed_ok = ivc.fraction_ok > base.fraction_ok && ivc.follower_violators == 0 &&
                         ivc.followers > 0 && base.violators >= 1;
    ok = ok && seed_ok;
    detail += fmt::format("{}seed {}: h>=4 {:.3f} vs {:.3f}, IVC followers {} ({} violating), baseline violators {}",
                          detail.empty() ? "" : "; ", seed, ivc.fraction_ok, base.fraction_ok, ivc.followers,
                          ivc.follower_violators, base.violators);
  }
  return {ok, detail};
}

Outcome classification_fixtures() {
  const auto speed = specs::builtin_spec("speed", {});
  const auto braking = specs::builtin_spec("braking", {});
  auto summary = [](const specs::SpecSelection& s, const Trace& t) {
    return stl::monitor(s.formula, specs::prepare_trace(s, t)).summary;
  };
  auto decel = [](double a) {
    return fixtures::trace("d", 0.05, {{"speed", fixtures::sampled(61, 0.05, [a](double t) { return 30.0 + a * t; })}});
  };
  const double slow = summary(speed, fixtures::constant_speed(19.27));
  const double fine = summary(speed, fixtures::constant_speed(23.66));
  const double hard = summary(braking, decel(-8.0));
  const double soft = summary(braking, decel(-2.0));
  return {slow <= 0 && fine > 0 && hard <= 0 && soft > 0,
          fmt::format("19.27 m/s -> {:.3f}, 23.66 m/s -> {:.3f}, -8 m/s^2 -> {:.3f}, -2 m/s^2 -> {:.3f}", slow,
                      fine, hard, soft)};
}

Outcome parser_round_trip() {
  std::vector<std::string> corpus{
      "always (speed <= 31)",
      "always[0,5] (h >= 4 or (h < 4 => eventually[0,2] h >= 4))",
      "eventually[0,10] speed >= 22.5",
      "not (speed > 33)",
      "always (accel > -7.7 and jerk > -9.9)",
      "always (speed <= 18 or (speed > 18 => ((accel > -7.7 and jerk > -9.9) until speed <= 18)))",
      "(speed > 0 until[0,3.5] speed < 10)",
      "always[1,end] eventually[0,1e1] x >= -2.5e-1",
      "a > 1 => b > 2 => c > 3",
      "a > 1 or b > 2 and not c <= 3",
      "headway >= 4 unless headway < 0",
      "always (headway >= 4 unless headway < 0 or (headway < 4 unless headway < 0 => eventually[0,2] (headway >= 4 unless headway < 0)))",
      "eventually always[0,0] v >= 0",
      "((a > 0 until b > 0) until[2,4] c > 0)",
  };
  for (const auto& name : specs::builtin_spec_names())
    corpus.push_back(stl::to_string(specs::builtin_spec(name, {}).formula));
  corpus.push_back(stl::to_string(specs::build_speed_spec({.literal = true})));
  corpus.push_back(stl::to_string(specs::build_headway_spec({.literal = true})));
  random_stl::Generator gen(kRandomSeed + 2);
  while (corpus.size() < 50) corpus.push_back(stl::to_string(gen.formula(4)));

  std::size_t failed = 0;
  for (const auto& text : corpus) {
    const auto f = stl::parse(text);
    failed += !(stl::parse(stl::to_string(f)) == f);
  }
  return {failed == 0, fmt::format("{} formulas, {} failed to round-trip", corpus.size(), failed)};
}

Outcome performance() {
  const auto spec = specs::build_headway_spec({});
  const auto tr = fixtures::trace("perf", 0.05, {{"headway", fixtures::sampled(2001, 0.05, [](double t) {
                                                   if (t > 40 && t < 45) return -1.0;
                                                   return 4.2 + 1.5 * std::sin(t / 3.0);
                                                 })}});
  std::vector<double> ms;
  double sink = 0.0;
  for (int i = 0; i < 21; ++i) {
    const auto t0 = Clock::now();
    sink += stl::monitor(spec, tr).summary;
    ms.push_back(seconds_since(t0) * 1e3);
  }
  std::sort(ms.begin(), ms.end());
  const double median = ms[ms.size() / 2];
  return {median < 10.0 && std::isfinite(sink),
          fmt::format("2001-sample headway trace, median {:.3f} ms over {} runs", median, ms.size())};
}

}  // namespace

int main() {
  report("stl-oracle-equivalence", oracle_equivalence);
  report("semantic-dualities", dualities);
  report("idm-numerics", idm_numerics);
  report("simulator-safety", simulator_safety);
  report("ivc-headway-reproduction", ivc_reproduction);
  report("spec-classification-fixtures", classification_fixtures);
  report("parser-round-trip", parser_round_trip);
  report("headway-monitor-performance", performance);
  return failures == 0 ? 0 : 1;
}
