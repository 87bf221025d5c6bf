#include "trafficstl/stl/formula.hpp"

#include "trafficstl/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace trafficstl::stl {

std::string_view to_string(Comparison c) {
  switch (c) {
    case Comparison::Greater: return ">";
    case Comparison::GreaterEqual: return ">=";
    case Comparison::Less: return "<";
    case Comparison::LessEqual: return "<=";
  }
  return "?";
}

double margin(Comparison c, double value, double threshold) {
  switch (c) {
    case Comparison::Greater:
    case Comparison::GreaterEqual: return value - threshold;
    case Comparison::Less:
    case Comparison::LessEqual: return threshold - value;
  }
  return 0.0;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.op == y.op && x.predicate == y.predicate && x.interval == y.interval &&
         x.children == y.children;
}

Formula Formula::make(Op op, Predicate p, Interval iv, std::vector<Formula> children) {
  return Formula(std::make_shared<const Node>(Node{op, std::move(p), iv, std::move(children)}));
}

namespace {

void check_interval(const Interval& iv) {
  const bool ok = std::isfinite(iv.lo) && iv.lo >= 0.0 &&
                  (!iv.hi || (std::isfinite(*iv.hi) && *iv.hi >= iv.lo));
  if (!ok)
    throw ParameterError(fmt::format("invalid interval [{}, {}]: need 0 <= a <= b", iv.lo,
                                     iv.hi ? fmt::format("{}", *iv.hi) : "end"));
}

std::string number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string interval_text(const Interval& iv) {
  return fmt::format("[{},{}]", number(iv.lo), iv.hi ? number(*iv.hi) : std::string("end"));
}

void collect(const Formula& f, std::set<std::string>& out) {
  if (f.op() == Op::Atom) {
    out.insert(f.predicate().channel);
    if (f.predicate().mask) out.insert(f.predicate().mask->channel);
  }
  for (const auto& c : f.children()) collect(c, out);
}

}  // namespace

Formula atom(Predicate p) {
  if (p.channel.empty()) throw ParameterError("predicate channel must not be empty");
  if (!std::isfinite(p.threshold)) throw ParameterError("predicate threshold must be finite");
  return Formula::make(Op::Atom, std::move(p), {}, {});
}

Formula atom(std::string channel, Comparison c, double threshold) {
  return atom(Predicate{std::move(channel), c, threshold, std::nullopt});
}

Formula negation(Formula f) { return Formula::make(Op::Not, {}, {}, {std::move(f)}); }

Formula conjunction(Formula a, Formula b) {
  return Formula::make(Op::And, {}, {}, {std::move(a), std::move(b)});
}

Formula disjunction(Formula a, Formula b) {
  return Formula::make(Op::Or, {}, {}, {std::move(a), std::move(b)});
}

Formula implies(Formula a, Formula b) {
  return Formula::make(Op::Implies, {}, {}, {std::move(a), std::move(b)});
}

Formula always(Interval iv, Formula f) {
  check_interval(iv);
  return Formula::make(Op::Always, {}, iv, {std::move(f)});
}

Formula eventually(Interval iv, Formula f) {
  check_interval(iv);
  return Formula::make(Op::Eventually, {}, iv, {std::move(f)});
}

Formula until(Interval iv, Formula lhs, Formula rhs) {
  check_interval(iv);
  return Formula::make(Op::Until, {}, iv, {std::move(lhs), std::move(rhs)});
}

std::string to_string(const Formula& f) {
  switch (f.op()) {
    case Op::Atom: {
      const auto& p = f.predicate();
      std::string s = fmt::format("{} {} {}", p.channel, to_string(p.comparison), number(p.threshold));
      if (p.mask)
        s += fmt::format(" unless {} {} {}", p.mask->channel, to_string(p.mask->comparison),
                         number(p.mask->threshold));
      return s;
    }
    case Op::Not: return fmt::format("not ({})", to_string(f.child()));
    case Op::And: return fmt::format("({} and {})", to_string(f.child(0)), to_string(f.child(1)));
    case Op::Or: return fmt::format("({} or {})", to_string(f.child(0)), to_string(f.child(1)));
    case Op::Implies:
      return fmt::format("({} => {})", to_string(f.child(0)), to_string(f.child(1)));
    case Op::Always:
      return fmt::format("always{} ({})", interval_text(f.interval()), to_string(f.child()));
    case Op::Eventually:
      return fmt::format("eventually{} ({})", interval_text(f.interval()), to_string(f.child()));
    case Op::Until:
      return fmt::format("({} until{} {})", to_string(f.child(0)), interval_text(f.interval()),
                         to_string(f.child(1)));
  }
  return {};
}

std::vector<std::string> referenced_channels(const Formula& f) {
  std::set<std::string> s;
  collect(f, s);
  return {s.begin(), s.end()};
}

double temporal_depth(const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return 0.0;
    case Op::Not: return temporal_depth(f.child());
    case Op::And:
    case Op::Or:
    case Op::Implies: return std::max(temporal_depth(f.child(0)), temporal_depth(f.child(1)));
    case Op::Always:
    case Op::Eventually: {
      const auto& iv = f.interval();
      return iv.hi.value_or(iv.lo) + temporal_depth(f.child());
    }
    case Op::Until: {
      const auto& iv = f.interval();
      return iv.hi.value_or(iv.lo) +
             std::max(temporal_depth(f.child(0)), temporal_depth(f.child(1)));
    }
  }
  return 0.0;
}

std::size_t size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& c : f.children()) n += size(c);
  return n;
}

}  // namespace trafficstl::stl
