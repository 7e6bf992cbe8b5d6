#include "orth/boundary.hpp"

#include "orth/functions.hpp"

namespace orth {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

CompactificationCandidate to_candidate(const FiniteSpace& sp, const BoundaryResult<Mask>& b) {
  if (!b.transitive) {
    const auto& w = *b.transitivity_witness;
    throw PreconditionError("∼ is not transitive; no quotient is formed",
                            {b.generator(w[0]), b.generator(w[1]), b.generator(w[2])});
  }
  std::size_t n = sp.points();
  std::size_t k = b.nonprincipal.size();
  require_budget("points of X ∪ ∂₀X", n + k, kMaxFinitePoints);
  std::vector<std::size_t> slot(b.filters.size(), kNone);
  for (std::size_t i = 0; i < k; ++i) slot[b.nonprincipal[i]] = n + i;

  std::vector<Mask> basis;
  for (Mask z : b.lattice.members) {
    Mask u = sp.ground() & ~z;
    Mask bar = u;
    for (std::size_t i = 0; i < b.filters.size(); ++i) {
      if (!included(b.generator(i), u)) continue;
      bar |= b.filters[i].principal_at;
      if (slot[i] != kNone) bar |= bit(slot[i]);
    }
    basis.push_back(bar);
  }
  auto pre_space = FiniteTopology::generated(GroundSet::anonymous(n + k), basis);

  std::size_t c = b.classes.size();
  std::size_t total = n + c;
  require_budget("points of X̄", total, 16);
  std::vector<Mask> opens;
  for (Mask v = 0; v <= full_mask(total); ++v) {
    Mask pre = v & full_mask(n);
    for (std::size_t j = 0; j < c; ++j)
      if (has(v, n + j))
        for (std::size_t f : b.classes[j]) pre |= bit(slot[f]);
    if (pre_space.is_open(pre)) opens.push_back(v);
  }
  std::vector<std::string> names = sp.rel->ground().names();
  for (std::size_t j = 0; j < c; ++j) names.push_back("∂" + std::to_string(j));
  return {n, FiniteTopology(GroundSet(std::move(names)), std::move(opens))};
}

CompactificationReport verify_ls_compactification(const FiniteRelation& rel,
                                                  const CompactificationCandidate& cand,
                                                  const Budget& budget) {
  std::size_t n = cand.x_points;
  if (n != rel.size() || cand.space.size() < n)
    throw InputError("candidate does not contain the relation's ground set");
  require_budget("compactification points", n, budget.axiom_scan_n);
  const auto& t = cand.space;
  Mask x = full_mask(n);
  CompactificationReport r;
  r.dense = {t.closure(x) == t.full(), {}, ""};
  if (!r.dense.holds) r.dense = {false, {t.full() & ~t.closure(x)}, "points outside cl X"};
  auto compact = ls_compact_check(t);
  r.ls_compact = {compact.holds, {}, compact.note};

  r.bounded_clopen.holds = true;
  for (Mask b = 0; b <= x; ++b)
    if (is_bounded(rel, b) && !(t.is_open(b) && t.is_closed(b))) {
      r.bounded_clopen = {false, {b}, "bounded set is not open and closed"};
      break;
    }

  std::vector<Mask> cl(std::size_t{1} << n);
  for (Mask c = 0; c <= x; ++c) cl[c] = t.closure(c);
  r.closure_criterion.holds = true;
  for (Mask c = 0; c <= x && r.closure_criterion.holds; ++c)
    for (Mask d = c; d <= x; ++d) {
      Mask meet = cl[c] & cl[d];
      bool criterion = (meet & ~x) == 0 && is_bounded(rel, meet);
      if (criterion != rel.orth(c, d)) {
        r.closure_criterion = {false, {c, d},
                               criterion ? "closures meet in a bounded part of X, yet not orthogonal"
                                         : "orthogonal, yet closures meet at " + t.ground().format(meet)};
        break;
      }
    }
  r.hausdorff = t.is_hausdorff();
  if (r.passed() && r.hausdorff) r.normality_consistent = is_normal(rel, budget);
  return r;
}

CanonicalForm canonical_form(const CompactificationCandidate& cand) {
  std::size_t n = cand.x_points;
  const auto& t = cand.space;
  CanonicalForm out;
  std::vector<Mask> cl(std::size_t{1} << n);
  for (Mask c = 0; c <= full_mask(n); ++c) {
    cl[c] = t.closure(c);
    out.traces.push_back(cl[c] & full_mask(n));
  }
  for (std::size_t p = n; p < t.size(); ++p) {
    std::vector<Mask> sig;
    for (Mask c = 0; c <= full_mask(n); ++c)
      if (has(cl[c], p)) sig.push_back(c);
    out.signatures.push_back(std::move(sig));
  }
  std::sort(out.signatures.begin(), out.signatures.end());
  return out;
}

ObservableLattice<Mask> zero_set_lattice(const FiniteRelation& rel) {
  ObservableLattice<Mask> lat;
  lat.members = zero_sets(rel);
  for (Mask m : lat.members) lat.bounded.push_back(is_bounded(rel, m));
  return lat;
}

BoundaryResult<Mask> finite_boundary(const FiniteRelation& rel, const Budget& budget) {
  return boundary(FiniteSpace(rel), zero_set_lattice(rel), is_normal(rel, budget));
}

std::string to_string(EndsModel m) {
  switch (m) {
    case EndsModel::integers: return "integers";
    case EndsModel::two_ends: return "two-ends";
    case EndsModel::glued_ends: return "glued-ends";
  }
  return "?";
}

LineClosure line_closure(EndsModel model, const EPS& c) {
  LineClosure out{c, false, false};
  switch (model) {
    case EndsModel::integers: break;
    case EndsModel::two_ends:
      out.plus = c.right_unbounded();
      out.minus = c.left_unbounded();
      break;
    case EndsModel::glued_ends: out.plus = c.right_unbounded() || c.left_unbounded(); break;
  }
  return out;
}

LineCompactificationReport verify_ls_compactification(const SymbolicRelation& rel, EndsModel model,
                                                      const std::vector<EPS>& family) {
  LineCompactificationReport r;
  r.closure_criterion.holds = true;
  for (std::size_t i = 0; i < family.size() && r.closure_criterion.holds; ++i)
    for (std::size_t j = i; j < family.size(); ++j) {
      auto a = line_closure(model, family[i]), c = line_closure(model, family[j]);
      bool shared_end = (a.plus && c.plus) || (a.minus && c.minus);
      bool criterion = !shared_end && rel.is_bounded(a.trace.intersect(c.trace));
      if (criterion != rel.orth(family[i], family[j])) {
        r.closure_criterion = {false, {}, criterion ? "closures meet in a bounded set, yet not orthogonal"
                                                    : "orthogonal, yet closures share an end"};
        r.witness = std::make_pair(family[i], family[j]);
        break;
      }
    }
  r.bounded_clopen.holds = true;
  for (const auto& s : family)
    if (rel.is_bounded(s)) {
      auto cl = line_closure(model, s);
      if (cl.plus || cl.minus) {
        r.bounded_clopen = {false, {}, "bounded set " + s.to_string() + " is not closed"};
        break;
      }
    }
  return r;
}

namespace {

bool holds_right_tail(const EPS& s) { return !s.complement().right_unbounded(); }
bool holds_left_tail(const EPS& s) { return !s.complement().left_unbounded(); }

void check_open(EndsModel model, const LineOpen& u) {
  if (model == EndsModel::integers && (u.plus || u.minus))
    throw InputError("the integers model has no ends");
  if (model == EndsModel::glued_ends && u.minus)
    throw InputError("the glued model has a single end; use plus");
  bool ok = true;
  if (model == EndsModel::two_ends) {
    ok = (!u.plus || holds_right_tail(u.trace)) && (!u.minus || holds_left_tail(u.trace));
  } else if (model == EndsModel::glued_ends && u.plus) {
    ok = holds_right_tail(u.trace) && holds_left_tail(u.trace);
  }
  if (!ok) throw InputError("member " + u.trace.to_string() + " is not an open neighbourhood of its ends");
}

}  // namespace

CompactnessVerdict ls_compact_check(EndsModel model, const LineCover& cover) {
  EPS covered;
  bool plus = false, minus = false;
  for (const auto& u : cover.members) {
    check_open(model, u);
    covered = covered.unite(u.trace);
    plus = plus || u.plus;
    minus = minus || u.minus;
  }
  EPS residual = EPS::integers().subtract(covered);
  bool ends_ok = model == EndsModel::integers || (plus && (model == EndsModel::glued_ends || minus));
  if (!ends_ok) throw InputError("the family does not cover the ends");
  if (!cover.all_singletons && !residual.empty())
    throw InputError("the family does not cover " + residual.to_string());
  if (residual.is_finite())
    return {true, "the listed members leave the bounded residual " + residual.to_string()};
  return {false, "every finite subfamily leaves an unbounded part of " + residual.to_string()};
}

CompactnessVerdict ls_compact_check(const FiniteTopology&) {
  return {true, "the whole cover is a finite subfamily and leaves ∅, which is bounded"};
}

PropertyVerdict regular_ends_audit(EndsModel model, const std::vector<EPS>& family) {
  if (model == EndsModel::integers) return {true, {}, "no ends"};
  for (const auto& a : family) {
    auto cl = line_closure(model, a);
    auto separated = [&](const LineOpen& u, const LineOpen& v) {
      check_open(model, u);
      check_open(model, v);
      bool disjoint = u.trace.intersect(v.trace).empty() && !(u.plus && v.plus) &&
                      !(u.minus && v.minus);
      bool holds_closed = cl.trace.subset_of(v.trace) && (!cl.plus || v.plus) &&
                          (!cl.minus || v.minus);
      return disjoint && holds_closed;
    };
    if (model == EndsModel::two_ends) {
      if (!cl.plus) {
        Int m = a.last_at_or_before(kMaxSpan).value_or(0);
        LineOpen u{EPS::right_ray(m + 1), true, false};
        LineOpen v{EPS::left_ray(m), false, cl.minus};
        if (!separated(u, v)) return {false, {}, "+∞ not separated from " + a.to_string()};
      }
      if (!cl.minus) {
        Int m = a.first_at_or_after(-kMaxSpan).value_or(0);
        LineOpen u{EPS::left_ray(m - 1), false, true};
        LineOpen v{EPS::right_ray(m), cl.plus, false};
        if (!separated(u, v)) return {false, {}, "−∞ not separated from " + a.to_string()};
      }
    } else if (!cl.plus) {
      Int lo = a.min().value_or(0), hi = a.max().value_or(0);
      LineOpen u{EPS::interval(lo, hi).complement(), true, false};
      LineOpen v{EPS::interval(lo, hi), false, false};
      if (!separated(u, v)) return {false, {}, "∞ not separated from " + a.to_string()};
    }
  }
  return {true, {}, ""};
}

ObservableLattice<EPS> ends_lattice() {
  return lattice_close(LineSpace(), {EPS::naturals(), EPS::naturals().reflect()});
}

BoundaryResult<EPS> line_boundary(const std::vector<EPS>& seeds, LineRule rule, std::size_t cap) {
  LineSpace sp(rule);
  return boundary(sp, lattice_close(sp, seeds, cap));
}

InducedBoundaryMap induced_boundary_map(const EventuallyAffineMap& f, const BoundaryResult<EPS>& bx,
                                        const BoundaryResult<EPS>& by, LineRule rule) {
  InducedBoundaryMap out;
  if (!f.coarse()) {
    out.defined = false;
    out.diagnostic = "a bounded set has an unbounded preimage";
    return out;
  }
  LineSpace sp(rule);
  auto family = observable_family(f);
  family.insert(family.end(), by.lattice.members.begin(), by.lattice.members.end());
  auto cont = continuity_check(f, sp.rel, sp.rel, family);
  if (!cont.continuous) {
    out.defined = false;
    out.diagnostic = "map is not continuous: preimages of " + cont.counterexample->first.to_string() +
                     " and " + cont.counterexample->second.to_string() + " are not orthogonal";
    return out;
  }
  return induced_boundary_map(sp, bx, sp, by, [&](const EPS& d) { return f.preimage(d); });
}

InducedBoundaryMap induced_boundary_map(const GroundMap& f, const FiniteRelation& x,
                                        const BoundaryResult<Mask>& bx, const FiniteRelation& y,
                                        const BoundaryResult<Mask>& by) {
  InducedBoundaryMap out;
  if (!continuity_check(f, x, y).continuous) {
    out.defined = false;
    out.diagnostic = "map is not continuous";
    return out;
  }
  for (Mask b = 0; b <= y.full(); ++b)
    if (is_bounded(y, b) && !is_bounded(x, f.preimage(b))) {
      out.defined = false;
      out.diagnostic = "bounded set " + y.ground().format(b) + " has an unbounded preimage";
      return out;
    }
  return induced_boundary_map(FiniteSpace(x), bx, FiniteSpace(y), by,
                              [&](Mask d) { return f.preimage(d); });
}

}  // namespace orth
