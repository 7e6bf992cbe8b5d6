#include "orth/line.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace orth {

bool ProgressionTerm::contains(Int n) const {
  Int offset = direction == Direction::right ? n - start : start - n;
  return offset >= 0 && offset % step == 0;
}

bool LineSetSpec::contains(Int n) const {
  for (const auto& t : terms)
    if (t.contains(n)) return true;
  return std::find(finite.begin(), finite.end(), n) != finite.end();
}

namespace {

Int checked_lcm(Int a, Int b) {
  Int l = std::lcm(a, b);
  if (l > kMaxPeriod) throw BudgetExceeded("period", static_cast<std::size_t>(l), kMaxPeriod);
  return l;
}

Int minimal_period(const std::vector<bool>& m) {
  Int p = static_cast<Int>(m.size());
  for (Int d = 1; d < p; ++d) {
    if (p % d) continue;
    bool ok = true;
    for (Int i = 0; i < p && ok; ++i) ok = m[i] == m[(i + d) % p];
    if (ok) return d;
  }
  return p;
}

bool any_of(const std::vector<bool>& m) { return std::find(m.begin(), m.end(), true) != m.end(); }

}  // namespace

void EventuallyPeriodicSet::check_shape(Int period, Int lo, Int hi) {
  if (period < 1) throw InputError("period must be positive");
  if (period > kMaxPeriod)
    throw BudgetExceeded("period", static_cast<std::size_t>(period), kMaxPeriod);
  Int span = (hi > lo ? hi - lo : 0) + 2 * period;
  if (span > kMaxSpan) throw BudgetExceeded("set span", static_cast<std::size_t>(span), kMaxSpan);
}

EventuallyPeriodicSet EventuallyPeriodicSet::build(Int period, Int lo, Int hi,
                                                   const std::vector<char>& values) {
  Int base = lo - period;
  auto value = [&](Int n) { return values[static_cast<std::size_t>(n - base)] != 0; };
  std::vector<bool> lmask(period), rmask(period);
  for (Int n = lo - period; n < lo; ++n) lmask[floor_mod(n, period)] = value(n);
  for (Int n = hi; n < hi + period; ++n) rmask[floor_mod(n, period)] = value(n);
  auto member = [&](Int n) {
    if (n >= hi) return bool(rmask[floor_mod(n, period)]);
    if (n < lo) return bool(lmask[floor_mod(n, period)]);
    return value(n);
  };

  Int p = std::lcm(minimal_period(lmask), minimal_period(rmask));
  lmask.resize(p);
  rmask.resize(p);

  EventuallyPeriodicSet s;
  s.p_ = p;
  s.lmask_ = lmask;
  s.rmask_ = rmask;
  std::optional<Int> right;
  for (Int n = hi - 1; n >= lo - p; --n)
    if (member(n) != rmask[floor_mod(n, p)]) {
      right = n + 1;
      break;
    }
  if (!right) {
    // Agrees with the right pattern down into the left periodic region: purely periodic.
    s.l_ = s.r_ = 0;
    s.lmask_ = rmask;
    return s;
  }
  Int left = *right;
  for (Int n = lo; n < hi + p; ++n)
    if (member(n) != lmask[floor_mod(n, p)]) {
      left = std::min(n, *right);
      break;
    }
  s.l_ = left;
  s.r_ = *right;
  s.mid_.resize(static_cast<std::size_t>(s.r_ - s.l_));
  for (Int n = s.l_; n < s.r_; ++n) s.mid_[static_cast<std::size_t>(n - s.l_)] = member(n);
  return s;
}

EPS EPS::integers() { return from_predicate(1, 0, 0, [](Int) { return true; }); }

EPS EPS::naturals() { return right_ray(0); }

EPS EPS::finite(const std::vector<Int>& points) {
  if (points.empty()) return EPS();
  auto [mn, mx] = std::minmax_element(points.begin(), points.end());
  return from_predicate(1, *mn, *mx + 1, [&](Int n) {
    return std::find(points.begin(), points.end(), n) != points.end();
  });
}

EPS EPS::interval(Int lo, Int hi) {
  if (lo > hi) return EPS();
  return from_predicate(1, lo, hi + 1, [&](Int n) { return n >= lo && n <= hi; });
}

EPS EPS::right_ray(Int from) {
  return from_predicate(1, from, from, [&](Int n) { return n >= from; });
}

EPS EPS::left_ray(Int to) {
  return from_predicate(1, to + 1, to + 1, [&](Int n) { return n <= to; });
}

EPS EPS::progression(Int start, Int step, Direction dir) {
  if (step < 1) throw InputError("progression step must be at least 1");
  ProgressionTerm t{start, step, dir};
  return from_predicate(step, start, start + 1, [&](Int n) { return t.contains(n); });
}

EPS EPS::residue_class(Int modulus, Int residue) {
  if (modulus < 1) throw InputError("modulus must be at least 1");
  return from_predicate(modulus, 0, 0,
                        [&](Int n) { return floor_mod(n - residue, modulus) == 0; });
}

EPS EPS::from_spec(const LineSetSpec& spec) {
  Int p = 1;
  bool any = false;
  Int lo = 0, hi = 0;
  auto widen = [&](Int v) {
    if (!any) {
      lo = v;
      hi = v + 1;
      any = true;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v + 1);
    }
  };
  for (const auto& t : spec.terms) {
    if (t.step < 1) throw InputError("progression step must be at least 1");
    p = checked_lcm(p, t.step);
    widen(t.start);
  }
  for (Int v : spec.finite) widen(v);
  if (!any) return EPS();
  return from_predicate(p, lo, hi, [&](Int n) { return spec.contains(n); });
}

bool EPS::contains(Int n) const {
  if (n >= r_) return rmask_[floor_mod(n, p_)];
  if (n < l_) return lmask_[floor_mod(n, p_)];
  return mid_[static_cast<std::size_t>(n - l_)];
}

bool EPS::empty() const { return *this == EPS(); }
bool EPS::is_finite() const { return !right_unbounded() && !left_unbounded(); }
bool EPS::right_unbounded() const { return any_of(rmask_); }
bool EPS::left_unbounded() const { return any_of(lmask_); }

std::optional<Int> EPS::first_at_or_after(Int n) const {
  if (n < l_) {
    if (left_unbounded()) {
      for (Int k = n; k < n + p_; ++k)
        if (contains(k)) return k;
      // No hit within a period cannot happen when the left pattern is nonempty and k < l_;
      // fall through for the part of the period that crosses into the middle.
    }
    n = std::max(n, l_);
  }
  for (Int k = n; k < r_; ++k)
    if (contains(k)) return k;
  if (!right_unbounded()) return std::nullopt;
  Int start = std::max(n, r_);
  for (Int k = start; k < start + p_; ++k)
    if (contains(k)) return k;
  return std::nullopt;
}

std::optional<Int> EPS::last_at_or_before(Int n) const {
  auto r = reflect().first_at_or_after(-n);
  if (!r) return std::nullopt;
  return -*r;
}

std::optional<Int> EPS::min() const {
  if (left_unbounded() || empty()) return std::nullopt;
  return first_at_or_after(l_);
}

std::optional<Int> EPS::max() const {
  if (right_unbounded() || empty()) return std::nullopt;
  return last_at_or_before(r_);
}

std::vector<Int> EPS::elements_in(Int lo, Int hi) const {
  std::vector<Int> out;
  for (Int n = lo; n <= hi; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

std::vector<Int> EPS::elements() const {
  if (!is_finite()) throw InputError("set is infinite");
  return elements_in(l_, r_);
}

EPS EPS::unite(const EPS& o) const {
  return from_predicate(checked_lcm(p_, o.p_), std::min(l_, o.l_), std::max(r_, o.r_),
                        [&](Int n) { return contains(n) || o.contains(n); });
}

EPS EPS::intersect(const EPS& o) const {
  return from_predicate(checked_lcm(p_, o.p_), std::min(l_, o.l_), std::max(r_, o.r_),
                        [&](Int n) { return contains(n) && o.contains(n); });
}

EPS EPS::subtract(const EPS& o) const {
  return from_predicate(checked_lcm(p_, o.p_), std::min(l_, o.l_), std::max(r_, o.r_),
                        [&](Int n) { return contains(n) && !o.contains(n); });
}

EPS EPS::complement() const {
  return from_predicate(p_, l_, r_, [&](Int n) { return !contains(n); });
}

EPS EPS::translate(Int t) const {
  return from_predicate(p_, l_ + t, r_ + t, [&](Int n) { return contains(n - t); });
}

EPS EPS::reflect() const {
  return from_predicate(p_, 1 - r_, 1 - l_, [&](Int n) { return contains(-n); });
}

EPS EPS::dilate(Int r) const {
  if (r < 0) throw InputError("dilation radius must be nonnegative");
  Int lo = l_ - r, hi = r_ + r;
  check_shape(p_, lo, hi + 2 * r);
  // Prefix counts over [lo − p − r, hi + p + r].
  Int base = lo - p_ - r;
  Int len = hi + p_ + r - base + 1;
  std::vector<Int> prefix(static_cast<std::size_t>(len + 1), 0);
  for (Int i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + (contains(base + i) ? 1 : 0);
  std::vector<char> values(static_cast<std::size_t>(hi - lo + 2 * p_));
  for (Int n = lo - p_; n < hi + p_; ++n) {
    Int a = n - r - base, b = n + r - base + 1;
    values[static_cast<std::size_t>(n - (lo - p_))] = prefix[b] - prefix[a] > 0;
  }
  return build(p_, lo, hi, values);
}

bool EPS::subset_of(const EPS& o) const { return subtract(o).empty(); }

LineSetSpec EPS::to_spec() const {
  LineSetSpec spec;
  for (Int n = l_; n < r_; ++n)
    if (contains(n)) spec.finite.push_back(n);
  for (Int n = r_; n < r_ + p_; ++n)
    if (contains(n)) spec.terms.push_back({n, p_, Direction::right});
  for (Int n = l_ - 1; n >= l_ - p_; --n)
    if (contains(n)) spec.terms.push_back({n, p_, Direction::left});
  // Merge a left and right term of the same residue class only for readability of ℤ-like sets.
  return spec;
}

std::string EPS::to_string() const {
  if (empty()) return "∅";
  if (*this == integers()) return "ℤ";
  auto spec = to_spec();
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " ∪ ";
    first = false;
  };
  if (!spec.finite.empty()) {
    sep();
    os << "{";
    for (std::size_t i = 0; i < spec.finite.size(); ++i) os << (i ? "," : "") << spec.finite[i];
    os << "}";
  }
  for (const auto& t : spec.terms) {
    sep();
    os << t.start << (t.direction == Direction::right ? "+" : "-") << t.step << "ℕ";
  }
  return os.str();
}

bool ls_orth_metric(const EPS& a, const EPS& c) {
  return !(a.right_unbounded() && c.right_unbounded()) &&
         !(a.left_unbounded() && c.left_unbounded());
}

bool ls_orth_settheoretic(const EPS& a, const EPS& c) { return a.intersect(c).is_finite(); }

GroupVerdict group_orth(const EPS& a, const EPS& c, Int k_cap) {
  GroupVerdict v;
  v.orthogonal = ls_orth_metric(a, c);
  if (v.orthogonal) return v;
  for (Int k = 0; k <= k_cap; ++k)
    if (!a.dilate(k).intersect(c.dilate(k)).is_finite()) {
      v.witness_k = k;
      return v;
    }
  v.certificate_complete = false;
  return v;
}

std::optional<AffineEnd> affine_end_in(const EPS& s, Direction dir, Int slope_multiple) {
  Int slope = s.period() * slope_multiple;
  if (dir == Direction::right) {
    if (!s.right_unbounded()) return std::nullopt;
    return AffineEnd{*s.first_at_or_after(s.right_threshold()), slope};
  }
  if (!s.left_unbounded()) return std::nullopt;
  return AffineEnd{*s.last_at_or_before(s.left_threshold() - 1), -slope};
}

bool contains_end(const EPS& s, const AffineEnd& e, Int checked_terms) {
  if (e.slope == 0) return false;
  // An end a + b·n lies in s iff it does for the first terms past the thresholds and one period.
  Int past = 0;
  if (e.slope > 0)
    past = std::max<Int>(0, ceil_div(s.right_threshold() - e.intercept, e.slope));
  else
    past = std::max<Int>(0, ceil_div(e.intercept - s.left_threshold() + 1, -e.slope));
  Int upto = std::max(past + s.period(), checked_terms);
  for (Int n = 0; n <= upto; ++n)
    if (!s.contains(e.at(n))) return false;
  return true;
}

EndsVerdict simple_ends_orth(const EPS& a, const EPS& c) {
  EndsVerdict v;
  for (Direction dir : {Direction::right, Direction::left}) {
    auto ea = affine_end_in(a, dir), ec = affine_end_in(c, dir);
    if (!ea || !ec) continue;
    Int slope = std::lcm(a.period(), c.period());
    ea->slope = ec->slope = dir == Direction::right ? slope : -slope;
    v.orthogonal = false;
    v.witness = std::make_pair(*ea, *ec);
    return v;
  }
  return v;
}

bool ends_compactification_orth(const EPS& a, const EPS& c) {
  bool plus = a.right_unbounded() && c.right_unbounded();
  bool minus = a.left_unbounded() && c.left_unbounded();
  return !plus && !minus;
}

std::string to_string(LineRule r) {
  switch (r) {
    case LineRule::metric: return "metric";
    case LineRule::set_theoretic: return "set-theoretic";
    case LineRule::group: return "group";
    case LineRule::simple_ends: return "simple-ends";
    case LineRule::ends_compactification: return "ends-compactification";
  }
  return "?";
}

std::optional<LineRule> parse_line_rule(const std::string& name) {
  for (LineRule r : {LineRule::metric, LineRule::set_theoretic, LineRule::group,
                     LineRule::simple_ends, LineRule::ends_compactification})
    if (to_string(r) == name) return r;
  return std::nullopt;
}

bool SymbolicRelation::orth(const EPS& a, const EPS& c) const {
  switch (rule_) {
    case LineRule::metric: return ls_orth_metric(a, c);
    case LineRule::set_theoretic: return ls_orth_settheoretic(a, c);
    case LineRule::group: return group_orth(a, c).orthogonal;
    case LineRule::simple_ends: return simple_ends_orth(a, c).orthogonal;
    case LineRule::ends_compactification: return ends_compactification_orth(a, c);
  }
  return false;
}

std::string to_string(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::orthogonal: return "orthogonal";
    case OracleVerdict::not_orthogonal: return "not-orthogonal";
    case OracleVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

enum class Tail { absent, present, unsettled };

// Looks at the outer half of one side of the window, split in two quarters.
Tail tail_state(const std::vector<char>& s, Int offset, Int window, bool right) {
  auto in = [&](Int n) { return s[static_cast<std::size_t>(n + offset)] != 0; };
  Int q1 = window / 2, q2 = 3 * window / 4, q3 = window;
  bool inner = false, outer = false;
  for (Int k = q1; k < q2; ++k) inner = inner || in(right ? k : -k);
  for (Int k = q2; k <= q3; ++k) outer = outer || in(right ? k : -k);
  if (inner && outer) return Tail::present;
  if (!inner && !outer) return Tail::absent;
  return Tail::unsettled;
}

struct Sampled {
  std::vector<char> a, c;
  Int offset;
};

Sampled sample(const Membership& a, const Membership& c, Int window, Int margin) {
  Sampled s;
  s.offset = window + margin;
  std::size_t len = static_cast<std::size_t>(2 * s.offset + 1);
  s.a.resize(len);
  s.c.resize(len);
  for (Int n = -s.offset; n <= s.offset; ++n) {
    s.a[static_cast<std::size_t>(n + s.offset)] = a(n);
    s.c[static_cast<std::size_t>(n + s.offset)] = c(n);
  }
  return s;
}

std::vector<char> dilated(const std::vector<char>& v, Int r) {
  std::vector<Int> prefix(v.size() + 1, 0);
  for (std::size_t i = 0; i < v.size(); ++i) prefix[i + 1] = prefix[i] + v[i];
  std::vector<char> out(v.size());
  Int len = static_cast<Int>(v.size());
  for (Int i = 0; i < len; ++i) {
    Int lo = std::max<Int>(0, i - r), hi = std::min(len - 1, i + r);
    out[static_cast<std::size_t>(i)] = prefix[hi + 1] - prefix[lo] > 0;
  }
  return out;
}

std::vector<char> both(const std::vector<char>& x, const std::vector<char>& y) {
  std::vector<char> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] && y[i];
  return out;
}

// Unbounded on some side (present), bounded (absent), or unsettled.
Tail overlap_state(const std::vector<char>& i, const Sampled& s, Int window) {
  Tail r = tail_state(i, s.offset, window, true), l = tail_state(i, s.offset, window, false);
  if (r == Tail::unsettled || l == Tail::unsettled) return Tail::unsettled;
  if (r == Tail::present || l == Tail::present) return Tail::present;
  return Tail::absent;
}

}  // namespace

OracleResult metric_ls_oracle(const Membership& a, const Membership& c,
                              const OracleOptions& opts) {
  OracleResult res;
  Int w = opts.window, rmax = opts.max_radius;
  auto s = sample(a, c, w, rmax);
  for (bool right : {true, false}) {
    if (tail_state(s.a, s.offset, w, right) == Tail::unsettled ||
        tail_state(s.c, s.offset, w, right) == Tail::unsettled) {
      res.detail = "pattern not settled inside the window";
      return res;
    }
  }
  auto at_radius = [&](Int r) {
    return overlap_state(both(dilated(s.a, r), dilated(s.c, r)), s, w);
  };
  Tail top = at_radius(rmax);
  if (top == Tail::unsettled) {
    res.detail = "overlap pattern not settled inside the window";
    return res;
  }
  if (top == Tail::absent) {
    for (bool right : {true, false})
      if (tail_state(s.a, s.offset, w, right) == Tail::present &&
          tail_state(s.c, s.offset, w, right) == Tail::present) {
        res.detail = "both sets extend to the same side but no overlap up to the radius cap";
        return res;
      }
    res.verdict = OracleVerdict::orthogonal;
    res.detail = "overlaps bounded for every radius up to the cap";
    return res;
  }
  Int lo = 0, hi = rmax;
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    if (at_radius(mid) == Tail::present)
      hi = mid;
    else
      lo = mid + 1;
  }
  res.verdict = OracleVerdict::not_orthogonal;
  res.radius = lo;
  res.detail = "overlap reaches the window edge";
  return res;
}

OracleResult settheoretic_oracle(const Membership& a, const Membership& c,
                                 const OracleOptions& opts) {
  OracleResult res;
  auto s = sample(a, c, opts.window, 0);
  Tail t = overlap_state(both(s.a, s.c), s, opts.window);
  if (t == Tail::unsettled) {
    res.detail = "intersection pattern not settled inside the window";
    return res;
  }
  res.verdict = t == Tail::absent ? OracleVerdict::orthogonal : OracleVerdict::not_orthogonal;
  res.detail = t == Tail::absent ? "intersection stays inside the window"
                                 : "intersection reaches the window edge";
  return res;
}

EventuallyAffineMap::EventuallyAffineMap(AffinePiece left, Int lo, std::vector<Int> middle,
                                         AffinePiece right)
    : left_(left), lo_(lo), mid_(std::move(middle)), right_(right) {}

EventuallyAffineMap EventuallyAffineMap::affine(Int intercept, Int slope) {
  return EventuallyAffineMap({intercept, slope}, 0, {}, {intercept, slope});
}

Int EventuallyAffineMap::operator()(Int n) const {
  if (n < lo_) return left_.at(n);
  if (n >= hi()) return right_.at(n);
  return mid_[static_cast<std::size_t>(n - lo_)];
}

EPS EventuallyAffineMap::preimage(const EPS& s) const {
  Int p = s.period();
  Int lo = lo_, hi = this->hi();
  // Beyond these bounds each tail of the map lands in a periodic region of s.
  const AffinePiece& r = right_;
  if (r.slope > 0)
    hi = std::max(hi, ceil_div(s.right_threshold() - r.intercept, r.slope));
  else if (r.slope < 0)
    hi = std::max(hi, floor_div(r.intercept - s.left_threshold(), -r.slope) + 1);
  const AffinePiece& l = left_;
  if (l.slope > 0)
    lo = std::min(lo, floor_div(s.left_threshold() - 1 - l.intercept, l.slope));
  else if (l.slope < 0)
    lo = std::min(lo, floor_div(l.intercept - s.right_threshold(), -l.slope));
  return EPS::from_predicate(p, lo, std::max(lo, hi), [&](Int n) { return s.contains((*this)(n)); });
}

EPS EventuallyAffineMap::image(const EPS& s) const {
  LineSetSpec spec;
  Int p = s.period();
  auto add_progression = [&](const AffinePiece& piece, Int n0, Int step_in) {
    // {piece(n0 + k·step_in) : k ≥ 0}, step_in may be negative.
    Int v = piece.at(n0);
    Int delta = piece.slope * step_in;
    if (delta == 0)
      spec.finite.push_back(v);
    else
      spec.terms.push_back({v, delta > 0 ? delta : -delta,
                            delta > 0 ? Direction::right : Direction::left});
  };
  Int hi = this->hi();
  Int t = std::max(hi, s.right_threshold());
  for (Int n : s.elements_in(hi, t - 1)) spec.finite.push_back(right_.at(n));
  for (Int n = t; n < t + p; ++n)
    if (s.contains(n)) add_progression(right_, n, p);
  Int u = std::min(lo_, s.left_threshold());
  for (Int n : s.elements_in(u, lo_ - 1)) spec.finite.push_back(left_.at(n));
  for (Int n = u - 1; n >= u - p; --n)
    if (s.contains(n)) add_progression(left_, n, -p);
  for (Int n = lo_; n < hi; ++n)
    if (s.contains(n)) spec.finite.push_back((*this)(n));
  return EPS::from_spec(spec);
}

std::string EventuallyAffineMap::to_string() const {
  std::ostringstream os;
  auto piece = [&](const AffinePiece& a) { os << a.intercept << (a.slope < 0 ? "" : "+") << a.slope << "n"; };
  if (mid_.empty() && left_ == right_) {
    piece(left_);
    return os.str();
  }
  os << "n<" << lo_ << ": ";
  piece(left_);
  os << "; table[" << lo_ << "," << hi() << "); n>=" << hi() << ": ";
  piece(right_);
  return os.str();
}

ChainQuantizedMap::ChainQuantizedMap(Int levels, AffinePiece left, Int lo,
                                     std::vector<Int> middle, AffinePiece right)
    : levels_(levels), left_(left), lo_(lo), mid_(std::move(middle)), right_(right) {
  if (levels < 1 || levels > 64) throw InputError("chain must have between 1 and 64 levels");
  for (Int v : mid_)
    if (v < 0 || v >= levels) throw InputError("table value outside the chain");
}

Int ChainQuantizedMap::operator()(Int n) const {
  if (n < lo_) return floor_mod(left_.at(n), levels_);
  Int hi = lo_ + static_cast<Int>(mid_.size());
  if (n >= hi) return floor_mod(right_.at(n), levels_);
  return mid_[static_cast<std::size_t>(n - lo_)];
}

EPS ChainQuantizedMap::preimage(Mask values) const {
  Int hi = lo_ + static_cast<Int>(mid_.size());
  return EPS::from_predicate(levels_, lo_, hi,
                             [&](Int n) { return has(values, static_cast<std::size_t>((*this)(n))); });
}

bool ChainQuantizedMap::tails_constant() const {
  return floor_mod(left_.slope, levels_) == 0 && floor_mod(right_.slope, levels_) == 0;
}

}  // namespace orth
