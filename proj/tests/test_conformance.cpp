#include "support/fixtures.hpp"
#include "trafficstl/error.hpp"
#include "trafficstl/specs/conformance.hpp"
#include "trafficstl/specs/specs.hpp"
#include "trafficstl/stl/parser.hpp"
#include "trafficstl/stl/verdict_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace trafficstl;

namespace {

const auto kMinSpeed = stl::parse("always speed >= 22.5");

std::vector<Trace> population(std::initializer_list<double> speeds) {
  std::vector<Trace> out;
  int k = 0;
  for (double v : speeds) out.push_back(fixtures::constant_speed(v, 10.0, 0.05, "v" + std::to_string(k++)));
  return out;
}

}  // namespace

TEST_SUITE("conformance") {

TEST_CASE("partition arithmetic") {
  const auto r = specs::evaluate_population(population({25, 25, 19}), kMinSpeed, "speed", "min-speed");
  CHECK(r.conforming.volume == 2);
  CHECK(*r.conforming.mean == doctest::Approx(25.0));
  CHECK(*r.conforming.std == doctest::Approx(0.0));
  CHECK(r.violating.volume == 1);
  CHECK(*r.violating.mean == doctest::Approx(19.0));
  CHECK(*r.violating.std == doctest::Approx(0.0));
  CHECK(r.population() == 3);
}

TEST_CASE("population standard deviation of per-trace means") {
  const auto r = specs::evaluate_population(population({24, 26, 30}), kMinSpeed, "speed");
  CHECK(*r.conforming.mean == doctest::Approx(80.0 / 3.0));
  // divides by N, not N - 1
  CHECK(*r.conforming.std == doctest::Approx(std::sqrt(56.0 / 9.0)));
}

TEST_CASE("degenerate populations") {
  const auto one = specs::evaluate_population(population({25}), kMinSpeed, "speed");
  CHECK(one.conforming.volume == 1);
  CHECK(one.violating.volume == 0);
  CHECK_FALSE(one.violating.mean);
  CHECK_FALSE(one.violating.std);

  const auto same = specs::evaluate_population(population({19, 19, 19, 19}), kMinSpeed, "speed");
  CHECK(same.violating.volume == 4);
  CHECK(same.conforming.volume == 0);

  CHECK_THROWS_AS(specs::evaluate_population({}, kMinSpeed, "speed"), EmptyReportError);
  CHECK_THROWS_AS(specs::build_report("x", "speed", {}), EmptyReportError);
}

TEST_CASE("classification follows the summary sign") {
  const std::vector<specs::Classified> members{{0.0, 1.0}, {1e-12, 2.0}, {-3.0, 3.0}};
  const auto r = specs::build_report("s", "speed", members);
  CHECK(r.conforming.volume == 1);
  CHECK(r.violating.volume == 2);
}

TEST_CASE("headway statistic skips leaderless samples") {
  const auto tr = fixtures::trace("h", 1.0, {{"headway", {-1, 3, 5, -1}}});
  CHECK(*specs::trace_statistic(tr, "headway") == doctest::Approx(4.0));
  const auto none = fixtures::trace("n", 1.0, {{"headway", {-1, -1}}});
  CHECK_FALSE(specs::trace_statistic(none, "headway"));
  CHECK_THROWS_AS(specs::trace_statistic(none, "speed"), MissingChannelError);
}

TEST_CASE("fan-out does not change the result") {
  std::vector<Trace> pop;
  for (int i = 0; i < 40; ++i)
    pop.push_back(fixtures::constant_speed(18.0 + 0.25 * i, 10.0, 0.05, "v" + std::to_string(i)));
  const auto serial = specs::evaluate_population(pop, kMinSpeed, "speed", "s", 1);
  const auto parallel = specs::evaluate_population(pop, kMinSpeed, "speed", "s", 4);
  CHECK(specs::to_json(serial) == specs::to_json(parallel));
}

TEST_CASE("report layouts") {
  const auto r = specs::evaluate_population(population({25, 25, 19}), kMinSpeed, "speed", "min-speed");
  std::ostringstream csv;
  specs::write_report_csv(csv, r);
  CHECK(csv.str() ==
        "Measure,Conforming trajectories,Violating trajectories\n"
        "Volume,2,1\n"
        "Mean Speed (m/s),25.00,19.00\n"
        "Std Dev (Speed),0.00,0.00\n");

  const auto j = specs::to_json(r);
  CHECK(j["spec"] == "min-speed");
  CHECK(j["conforming"]["volume"] == 2);
  CHECK(j["violating"]["mean"] == 19.0);

  const auto one = specs::evaluate_population(population({25}), kMinSpeed, "speed");
  std::ostringstream csv1;
  specs::write_report_csv(csv1, one);
  CHECK(csv1.str().find("Mean Speed (m/s),25.00,NA") != std::string::npos);
  CHECK(specs::to_json(one)["violating"]["mean"].is_null());
}

TEST_CASE("verdict exports") {
  const auto tr = fixtures::constant_speed(20.0, 0.1);
  const auto v = stl::monitor(kMinSpeed, tr);
  std::ostringstream csv;
  stl::write_verdict_csv(csv, v);
  CHECK(csv.str() == "t,robustness,satisfaction\n0.000,-2.5,-1\n0.050,-2.5,-1\n0.100,-2.5,-1\n");

  const auto j = stl::verdict_summary_json(v, kMinSpeed);
  CHECK(j["vehicle_id"] == "veh");
  CHECK(j["satisfied"] == false);
  CHECK(j["summary_robustness"] == -2.5);
  CHECK(j["horizon"][1] == 0.1);
  CHECK(j["formula"] == "always[0,end] (speed >= 22.5)");

  CHECK(std::isinf(stl::robustness_from_json("inf")));
  CHECK(stl::robustness_from_json("-inf") < 0);
  CHECK(stl::robustness_from_json(1.5) == 1.5);
  CHECK_THROWS_AS(stl::robustness_from_json("lots"), ParameterError);
}

}
