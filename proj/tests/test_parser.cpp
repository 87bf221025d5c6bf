#include "support/random_stl.hpp"
#include "trafficstl/error.hpp"
#include "trafficstl/specs/specs.hpp"
#include "trafficstl/stl/formula.hpp"
#include "trafficstl/stl/parser.hpp"

#include <doctest.h>

#include <string>

using namespace trafficstl;
using namespace trafficstl::stl;

namespace {

std::size_t error_position(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.position;
  }
  FAIL("no parse error for: " << text);
  return 0;
}

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("bare always is unbounded") {
  CHECK(parse("always (speed <= 31)") ==
        always(Interval::to_end(), atom("speed", Comparison::LessEqual, 31)));
  CHECK(parse("always speed <= 31") == parse("always[0,end] (speed <= 31)"));
}

TEST_CASE("headway shape") {
  const auto f = parse("always[0,5] (h >= 4 or (h < 4 => eventually[0,2] h >= 4))");
  const auto expected = always(
      Interval::bounded(0, 5),
      disjunction(atom("h", Comparison::GreaterEqual, 4),
                  implies(atom("h", Comparison::Less, 4),
                          eventually(Interval::bounded(0, 2), atom("h", Comparison::GreaterEqual, 4)))));
  CHECK(f == expected);
}

TEST_CASE("precedence") {
  const auto a = atom("a", Comparison::Greater, 0);
  const auto b = atom("b", Comparison::Greater, 0);
  const auto c = atom("c", Comparison::Greater, 0);
  CHECK(parse("a > 0 or b > 0 and c > 0") == disjunction(a, conjunction(b, c)));
  CHECK(parse("a > 0 and b > 0 or c > 0") == disjunction(conjunction(a, b), c));
  CHECK(parse("a > 0 => b > 0 => c > 0") == implies(a, implies(b, c)));
  CHECK(parse("a > 0 or b > 0 => c > 0") == implies(disjunction(a, b), c));
  CHECK(parse("not a > 0 and b > 0") == conjunction(negation(a), b));
  CHECK(parse("(a > 0 until[1,3] b > 0)") == until(Interval::bounded(1, 3), a, b));
  CHECK(parse("(a > 0 until b > 0)") == until(Interval::to_end(), a, b));
}

TEST_CASE("numbers and masks") {
  CHECK(parse("x >= -1.5e2") == atom("x", Comparison::GreaterEqual, -150));
  CHECK(parse("jerk > -9.9") == atom("jerk", Comparison::Greater, -9.9));
  const auto m = parse("headway >= 4 unless headway < 0");
  REQUIRE(m.predicate().mask);
  CHECK(m.predicate().mask->channel == "headway");
  CHECK(m.predicate().mask->threshold == 0.0);
}

TEST_CASE("syntax errors point at the offending token") {
  CHECK(error_position("eventually speed <") == 18);
  CHECK(error_position("") == 1);
  CHECK(error_position("   ") == 1);
  CHECK(error_position("speed") == 6);
  CHECK(error_position("speed < 3 )") == 11);
  CHECK(error_position("always[5,2] x > 0") == 7);
  CHECK(error_position("x > 0 & y > 0") == 7);
  CHECK(error_position("(x > 0") == 7);
  CHECK_THROWS_WITH_AS(parse("eventually speed <"), doctest::Contains("dangling comparison"), ParseError);
}

TEST_CASE("unknown channels parse fine") {
  CHECK_NOTHROW(parse("always (warp_factor < 9)"));
}

TEST_CASE("round trip of the builders") {
  for (const auto& name : specs::builtin_spec_names()) {
    const auto f = specs::builtin_spec(name, {}).formula;
    CHECK(parse(to_string(f)) == f);
  }
  const auto literal = specs::build_speed_spec({.literal = true});
  CHECK(parse(to_string(literal)) == literal);
}

TEST_CASE("round trip of random formulas") {
  random_stl::Generator gen(11);
  for (int i = 0; i < 300; ++i) {
    const auto f = gen.formula(4);
    const auto text = to_string(f);
    CAPTURE(text);
    CHECK(parse(text) == f);
  }
}

}
