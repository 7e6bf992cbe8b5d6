#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orth/ground.hpp"

namespace orth {

using Int = std::int64_t;

inline constexpr Int kMaxPeriod = Int{1} << 20;
inline constexpr Int kMaxSpan = Int{1} << 24;

inline Int floor_mod(Int n, Int p) {
  Int r = n % p;
  return r < 0 ? r + p : r;
}
inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}
inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

enum class Direction { right, left };

// {start + k·step : k ≥ 0} to the right, {start − k·step : k ≥ 0} to the left.
struct ProgressionTerm {
  Int start = 0;
  Int step = 1;
  Direction direction = Direction::right;
  bool contains(Int n) const;
  bool operator==(const ProgressionTerm&) const = default;
};

// A subset of ℤ written as progressions plus finitely many points. Membership is evaluated from
// the description itself.
struct LineSetSpec {
  std::vector<ProgressionTerm> terms;
  std::vector<Int> finite;
  bool contains(Int n) const;
};

// A subset of ℤ that is periodic with period p on (−∞, L) and on [R, ∞), with an explicit
// middle part on [L, R). Always kept in canonical form (minimal period, tight thresholds), so
// equal sets compare equal.
class EventuallyPeriodicSet {
 public:
  EventuallyPeriodicSet() = default;

  static EventuallyPeriodicSet integers();
  static EventuallyPeriodicSet naturals();  // {0, 1, 2, ...}
  static EventuallyPeriodicSet finite(const std::vector<Int>& points);
  static EventuallyPeriodicSet interval(Int lo, Int hi);  // [lo, hi]
  static EventuallyPeriodicSet right_ray(Int from);       // [from, ∞)
  static EventuallyPeriodicSet left_ray(Int to);          // (−∞, to]
  static EventuallyPeriodicSet progression(Int start, Int step, Direction dir);
  static EventuallyPeriodicSet residue_class(Int modulus, Int residue);
  static EventuallyPeriodicSet from_spec(const LineSetSpec& spec);

  // pred must repeat with the given period on (−∞, lo) and on [hi, ∞).
  template <class Pred>
  static EventuallyPeriodicSet from_predicate(Int period, Int lo, Int hi, Pred&& pred) {
    check_shape(period, lo, hi);
    if (lo > hi) lo = hi;
    std::vector<char> values(static_cast<std::size_t>(hi - lo + 2 * period));
    for (Int n = lo - period; n < hi + period; ++n)
      values[static_cast<std::size_t>(n - (lo - period))] = pred(n) ? 1 : 0;
    return build(period, lo, hi, values);
  }

  bool contains(Int n) const;
  bool empty() const;
  bool is_finite() const;
  bool right_unbounded() const;
  bool left_unbounded() const;

  Int period() const { return p_; }
  Int left_threshold() const { return l_; }
  Int right_threshold() const { return r_; }

  std::optional<Int> min() const;
  std::optional<Int> max() const;
  std::optional<Int> first_at_or_after(Int n) const;
  std::optional<Int> last_at_or_before(Int n) const;
  std::vector<Int> elements_in(Int lo, Int hi) const;  // [lo, hi]
  // Throws InputError for infinite sets.
  std::vector<Int> elements() const;

  EventuallyPeriodicSet unite(const EventuallyPeriodicSet& o) const;
  EventuallyPeriodicSet intersect(const EventuallyPeriodicSet& o) const;
  EventuallyPeriodicSet subtract(const EventuallyPeriodicSet& o) const;
  EventuallyPeriodicSet complement() const;
  EventuallyPeriodicSet translate(Int t) const;
  EventuallyPeriodicSet reflect() const;  // n ↦ −n
  // {n : |n − a| ≤ r for some a in the set}
  EventuallyPeriodicSet dilate(Int r) const;
  bool subset_of(const EventuallyPeriodicSet& o) const;

  LineSetSpec to_spec() const;
  std::string to_string() const;

  auto operator<=>(const EventuallyPeriodicSet&) const = default;
  bool operator==(const EventuallyPeriodicSet&) const = default;

 private:
  static void check_shape(Int period, Int lo, Int hi);
  // values covers [lo − period, hi + period).
  static EventuallyPeriodicSet build(Int period, Int lo, Int hi, const std::vector<char>& values);

  Int p_ = 1;
  Int l_ = 0;
  Int r_ = 0;
  std::vector<bool> lmask_ = {false};
  std::vector<bool> rmask_ = {false};
  std::vector<bool> mid_;
};

using EPS = EventuallyPeriodicSet;

inline EPS unite(const EPS& a, const EPS& b) { return a.unite(b); }
inline EPS meet(const EPS& a, const EPS& b) { return a.intersect(b); }
inline bool included(const EPS& a, const EPS& b) { return a.subset_of(b); }

// Large-scale relations on ℤ.
bool ls_orth_metric(const EPS& a, const EPS& c);
bool ls_orth_settheoretic(const EPS& a, const EPS& c);

struct GroupVerdict {
  bool orthogonal = true;
  // Smallest k ≤ cap with (A + [−k,k]) ∩ (C + [−k,k]) infinite.
  std::optional<Int> witness_k;
  // False when the metric rule says "not orthogonal" but no k ≤ cap witnesses it.
  bool certificate_complete = true;
};
GroupVerdict group_orth(const EPS& a, const EPS& c, Int k_cap = 64);

// n ↦ intercept + slope·n, slope ≠ 0.
struct AffineEnd {
  Int intercept = 0;
  Int slope = 1;
  Int at(Int n) const { return intercept + slope * n; }
  bool operator==(const AffineEnd&) const = default;
};

struct EndsVerdict {
  bool orthogonal = true;
  // Parallel ends contained in A and C respectively.
  std::optional<std::pair<AffineEnd, AffineEnd>> witness;
};
EndsVerdict simple_ends_orth(const EPS& a, const EPS& c);
// An affine end contained in the set in the given direction, if the set is unbounded there.
std::optional<AffineEnd> affine_end_in(const EPS& s, Direction dir, Int slope_multiple = 1);
bool contains_end(const EPS& s, const AffineEnd& e, Int checked_terms = 256);

// Traces at ±∞ in ℤ ∪ {−∞, +∞}.
bool ends_compactification_orth(const EPS& a, const EPS& c);

enum class LineRule { metric, set_theoretic, group, simple_ends, ends_compactification };
std::string to_string(LineRule r);
std::optional<LineRule> parse_line_rule(const std::string& name);

class SymbolicRelation {
 public:
  explicit SymbolicRelation(LineRule rule = LineRule::metric) : rule_(rule) {}
  bool orth(const EPS& a, const EPS& c) const;
  // Every rule here bounds exactly the finite sets.
  bool is_bounded(const EPS& b) const { return orth(b, EPS::integers()); }
  LineRule rule() const { return rule_; }

 private:
  LineRule rule_;
};

// Window oracle: decides from membership alone, on [−window, window], assuming the pattern has
// settled by window/2. Reports inconclusive rather than guessing.
enum class OracleVerdict { orthogonal, not_orthogonal, inconclusive };
std::string to_string(OracleVerdict v);

struct OracleOptions {
  Int window = 10000;
  Int max_radius = 64;
};

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::inconclusive;
  std::optional<Int> radius;  // smallest radius with an unbounded overlap
  std::string detail;
};

using Membership = std::function<bool(Int)>;
OracleResult metric_ls_oracle(const Membership& a, const Membership& c,
                              const OracleOptions& opts = {});
OracleResult settheoretic_oracle(const Membership& a, const Membership& c,
                                 const OracleOptions& opts = {});

struct AffinePiece {
  Int intercept = 0;
  Int slope = 1;
  Int at(Int n) const { return intercept + slope * n; }
  bool operator==(const AffinePiece&) const = default;
};

// ℤ → ℤ, affine on (−∞, lo) and on [lo + |middle|, ∞), tabulated in between.
class EventuallyAffineMap {
 public:
  EventuallyAffineMap() = default;
  EventuallyAffineMap(AffinePiece left, Int lo, std::vector<Int> middle, AffinePiece right);
  static EventuallyAffineMap affine(Int intercept, Int slope);

  Int operator()(Int n) const;
  const AffinePiece& left() const { return left_; }
  const AffinePiece& right() const { return right_; }
  Int lo() const { return lo_; }
  Int hi() const { return lo_ + static_cast<Int>(mid_.size()); }
  const std::vector<Int>& middle() const { return mid_; }

  EPS preimage(const EPS& s) const;
  EPS image(const EPS& s) const;
  // Preimages of finite sets are finite.
  bool coarse() const { return left_.slope != 0 && right_.slope != 0; }
  // Images of finite sets are finite; always true for maps of this shape.
  bool bornologous() const { return true; }
  std::string to_string() const;

 private:
  AffinePiece left_{0, 1};
  Int lo_ = 0;
  std::vector<Int> mid_;
  AffinePiece right_{0, 1};
};

// ℤ → {0, …, levels−1}: n ↦ (a + b·n) mod levels on the tails, tabulated in between.
class ChainQuantizedMap {
 public:
  ChainQuantizedMap(Int levels, AffinePiece left, Int lo, std::vector<Int> middle,
                    AffinePiece right);
  Int levels() const { return levels_; }
  Int operator()(Int n) const;
  EPS preimage(Mask values) const;
  // Both tails eventually constant.
  bool tails_constant() const;

 private:
  Int levels_;
  AffinePiece left_;
  Int lo_;
  std::vector<Int> mid_;
  AffinePiece right_;
};

}  // namespace orth
