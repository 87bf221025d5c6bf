#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trafficstl::stl {

enum class Comparison { Greater, GreaterEqual, Less, LessEqual };

std::string_view to_string(Comparison c);

/// Signed distance to the comparison boundary: value - threshold for > and >=,
/// threshold - value for < and <=. Positive iff the strict comparison holds.
double margin(Comparison c, double value, double threshold);

/// Condition under which a predicate is vacuously true (robustness +inf),
/// e.g. `headway < 0` for "no leader".
struct Guard {
  std::string channel;
  Comparison comparison = Comparison::Less;
  double threshold = 0.0;

  friend bool operator==(const Guard&, const Guard&) = default;
};

/// Atomic proposition `channel cmp threshold`, optionally masked by a guard.
struct Predicate {
  std::string channel;
  Comparison comparison = Comparison::GreaterEqual;
  double threshold = 0.0;
  std::optional<Guard> mask;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// Closed time interval [lo, hi] relative to the evaluation instant.
/// A missing `hi` means "until the end of the trace".
struct Interval {
  double lo = 0.0;
  std::optional<double> hi;

  bool unbounded() const { return !hi.has_value(); }
  static Interval to_end(double lo = 0.0) { return {lo, std::nullopt}; }
  static Interval bounded(double lo, double hi) { return {lo, hi}; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Op { Atom, Not, And, Or, Implies, Always, Eventually, Until };

/// Immutable STL formula. Copies share structure; equality is structural.
class Formula {
 public:
  Op op() const { return node_->op; }
  /// Only meaningful for Op::Atom.
  const Predicate& predicate() const { return node_->predicate; }
  /// Only meaningful for temporal operators.
  const Interval& interval() const { return node_->interval; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op;
    Predicate predicate;
    Interval interval;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, Predicate p, Interval iv, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;

  friend Formula atom(Predicate);
  friend Formula negation(Formula);
  friend Formula conjunction(Formula, Formula);
  friend Formula disjunction(Formula, Formula);
  friend Formula implies(Formula, Formula);
  friend Formula always(Interval, Formula);
  friend Formula eventually(Interval, Formula);
  friend Formula until(Interval, Formula, Formula);
};

Formula atom(Predicate p);
Formula atom(std::string channel, Comparison c, double threshold);
Formula negation(Formula f);
Formula conjunction(Formula a, Formula b);
Formula disjunction(Formula a, Formula b);
/// Kept as its own node; evaluates as disjunction(negation(a), b).
Formula implies(Formula a, Formula b);
/// Throws ParameterError unless 0 <= lo <= hi and both are finite.
Formula always(Interval iv, Formula f);
Formula eventually(Interval iv, Formula f);
Formula until(Interval iv, Formula lhs, Formula rhs);

/// Canonical DSL text; parse(to_string(f)) == f.
std::string to_string(const Formula& f);

/// Sorted, de-duplicated channels referenced by predicates and their guards.
std::vector<std::string> referenced_channels(const Formula& f);

/// How far past t a formula looks: atoms 0, temporal operators add their
/// upper bound (the lower bound for unbounded intervals, whose windows are
/// clipped to the end of the trace), binary operators take the max.
double temporal_depth(const Formula& f);

/// Number of nodes in the tree.
std::size_t size(const Formula& f);

}  // namespace trafficstl::stl
