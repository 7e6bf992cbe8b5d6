#include "orth/functions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace orth {

ChainFunction ChainFunction::constant(std::size_t n, int resolution, int level) {
  return {resolution, std::vector<int>(n, level)};
}

Mask ChainFunction::preimage(int lo, int hi) const {
  Mask out = 0;
  for (std::size_t x = 0; x < levels.size(); ++x)
    if (levels[x] >= lo && levels[x] <= hi) out |= bit(x);
  return out;
}

std::vector<Mask> nonorthogonality_components(const FiniteRelation& rel) {
  std::size_t n = rel.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (!rel.point_orth(x, y)) parent[find(x)] = find(y);
  std::map<std::size_t, Mask> groups;
  for (std::size_t x = 0; x < n; ++x) groups[find(x)] |= bit(x);
  std::vector<Mask> out;
  for (const auto& [root, m] : groups) out.push_back(m);
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    return std::countr_zero(a) < std::countr_zero(b);
  });
  return out;
}

namespace {

void check_size(const FiniteRelation& rel, std::size_t n) {
  if (rel.size() != n) throw InputError("function and relation have different ground sets");
}

// Continuity of a labelling into a finite set carrying the disjointness relation, restricted to
// the points of domain.
ChainContinuity label_continuity(const FiniteRelation& rel, const std::vector<long>& labels,
                                 Mask domain) {
  ChainContinuity out;
  if (rel.backend() == FiniteRelation::Backend::pair_generated) {
    for (std::size_t x = 0; x < labels.size(); ++x)
      for (std::size_t y = x + 1; y < labels.size(); ++y)
        if (has(domain, x) && has(domain, y) && labels[x] != labels[y] && !rel.point_orth(x, y)) {
          out.continuous = false;
          out.witness = std::make_pair(bit(x), bit(y));
          return out;
        }
    return out;
  }
  std::vector<long> distinct;
  for (std::size_t x = 0; x < labels.size(); ++x)
    if (has(domain, x)) distinct.push_back(labels[x]);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<Mask> fibers(distinct.size(), 0);
  for (std::size_t x = 0; x < labels.size(); ++x)
    if (has(domain, x)) {
      auto i = std::lower_bound(distinct.begin(), distinct.end(), labels[x]) - distinct.begin();
      fibers[static_cast<std::size_t>(i)] |= bit(x);
    }
  auto pre = [&](Mask values) {
    Mask m = 0;
    for_each_point(values, [&](std::size_t i) { m |= fibers[i]; });
    return m;
  };
  Mask all = full_mask(distinct.size());
  for (Mask v = 1; v <= all; ++v)
    for_each_submask(all & ~v, [&](Mask w) {
      if (out.continuous && w != 0 && !rel.orth(pre(v), pre(w))) {
        out.continuous = false;
        out.witness = std::make_pair(pre(v), pre(w));
      }
    });
  return out;
}

std::vector<long> labels_of(const ChainFunction& f) {
  return std::vector<long>(f.levels.begin(), f.levels.end());
}

Mask largest_bounded(const FiniteRelation& rel) {
  if (rel.backend() == FiniteRelation::Backend::pair_generated) return bounded_points(rel);
  Mask out = 0;
  for (Mask b = 0; b <= rel.full(); ++b)
    if (is_bounded(rel, b)) out |= b;
  return out;
}

}  // namespace

ChainContinuity is_chain_continuous(const FiniteRelation& rel, const ChainFunction& f) {
  check_size(rel, f.size());
  return label_continuity(rel, labels_of(f), rel.full());
}

ChainContinuity is_pair_continuous(const FiniteRelation& rel, const ChainFunction& f,
                                   const ChainFunction& g) {
  check_size(rel, f.size());
  check_size(rel, g.size());
  std::vector<long> labels(f.size());
  for (std::size_t x = 0; x < f.size(); ++x)
    labels[x] = static_cast<long>(f.levels[x]) * (g.resolution + 1) + g.levels[x];
  return label_continuity(rel, labels, rel.full());
}

std::optional<ChainFunction> separating_function(const FiniteRelation& rel, Mask c, Mask d,
                                                 int resolution) {
  ChainFunction f = ChainFunction::constant(rel.size(), resolution, 0);
  for (Mask k : nonorthogonality_components(rel)) {
    if ((k & c) && (k & d)) return std::nullopt;
    if (k & d) for_each_point(k, [&](std::size_t x) { f.levels[x] = resolution; });
  }
  if (!is_chain_continuous(rel, f).continuous) return std::nullopt;
  return f;
}

FiniteRelation functional_relation(const FiniteRelation& rel) {
  auto comps = nonorthogonality_components(rel);
  std::vector<std::size_t> comp_of(rel.size());
  for (std::size_t i = 0; i < comps.size(); ++i)
    for_each_point(comps[i], [&](std::size_t x) { comp_of[x] = i; });
  return FiniteRelation::from_point_rule(
      rel.ground(), [&](std::size_t x, std::size_t y) { return comp_of[x] != comp_of[y]; },
      "functional relation of " + rel.provenance());
}

bool is_functionally_hausdorff(const FiniteRelation& rel) {
  for (Mask k : nonorthogonality_components(rel))
    if (std::popcount(k) > 1) return false;
  return true;
}

PasteResult paste(const FiniteRelation& rel, const std::vector<PartialChain>& parts,
                  int resolution, const std::optional<PasteCuts>& cuts) {
  std::size_t n = rel.size();
  std::vector<int> levels(n, -1);
  for (const auto& part : parts) {
    if (!included(part.domain, rel.full()) || part.levels.size() != n)
      throw InputError("part does not match the ground set");
    for_each_point(part.domain, [&](std::size_t x) {
      int v = part.levels[x];
      if (v < 0 || v > resolution) throw InputError("part level outside the chain");
      if (levels[x] >= 0 && levels[x] != v)
        throw InputError("parts disagree at " + rel.ground().name(x));
      levels[x] = v;
    });
  }
  for (std::size_t x = 0; x < n; ++x)
    if (levels[x] < 0) throw InputError("parts leave " + rel.ground().name(x) + " uncovered");
  ChainFunction f{resolution, levels};
  PasteResult out;
  if (cuts) {
    const auto& k = *cuts;
    if (!(0 <= k.a && k.a < k.c && k.c < k.d && k.d < k.b && k.b <= resolution))
      throw InputError("cuts must satisfy a < c < d < b inside the chain");
    if (f.preimage(k.a, k.b) != rel.full()) throw InputError("function leaves [a, b]");
    Mask lower = f.preimage(k.a, k.d), upper = f.preimage(k.c, k.b);
    if (auto v = label_continuity(rel, labels_of(f), lower); !v.continuous) {
      out.failed = "lower part";
      out.witness = v.witness;
      return out;
    }
    if (auto v = label_continuity(rel, labels_of(f), upper); !v.continuous) {
      out.failed = "upper part";
      out.witness = v.witness;
      return out;
    }
    Mask low_end = f.preimage(k.a, k.c), high_end = f.preimage(k.d, k.b);
    if (!rel.orth(low_end, high_end)) {
      out.failed = "overlap";
      out.witness = std::make_pair(low_end, high_end);
      return out;
    }
  }
  out.certificate = is_chain_continuous(rel, f);
  if (!out.certificate.continuous) {
    out.failed = "continuity";
    out.witness = out.certificate.witness;
    return out;
  }
  out.function = std::move(f);
  return out;
}

ExtensionResult extend_function(const FiniteRelation& rel, const PartialChain& partial,
                                int resolution, int default_level, const Budget& budget) {
  if (partial.levels.size() != rel.size() || !included(partial.domain, rel.full()))
    throw InputError("partial function does not match the ground set");
  if (default_level < 0 || default_level > resolution)
    throw InputError("default level outside the chain");
  ExtensionResult out;
  out.relation_normal = is_normal(rel, budget);
  ChainFunction f = ChainFunction::constant(rel.size(), resolution, default_level);
  for (Mask k : nonorthogonality_components(rel)) {
    Mask seen = k & partial.domain;
    if (seen == 0) continue;
    int v = partial.levels[static_cast<std::size_t>(std::countr_zero(seen))];
    bool agree = true;
    for_each_point(seen, [&](std::size_t x) { agree = agree && partial.levels[x] == v; });
    if (!agree) {
      out.conflict = k;
      return out;
    }
    for_each_point(k, [&](std::size_t x) { f.levels[x] = v; });
  }
  if (!is_chain_continuous(rel, f).continuous) return out;
  out.function = std::move(f);
  return out;
}

std::vector<Mask> zero_sets(const FiniteRelation& rel) {
  auto comps = nonorthogonality_components(rel);
  require_budget("components", comps.size(), 20);
  std::vector<Mask> out;
  for (Mask pick = 0; pick <= full_mask(comps.size()); ++pick) {
    Mask z = 0;
    for_each_point(pick, [&](std::size_t i) { z |= comps[i]; });
    out.push_back(z);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mask> cozero_sets(const FiniteRelation& rel) {
  auto z = zero_sets(rel);
  for (Mask& m : z) m = rel.full() & ~m;
  std::sort(z.begin(), z.end());
  return z;
}

bool closed_under_union_and_meet(const std::vector<Mask>& family) {
  auto in = [&](Mask m) { return std::binary_search(family.begin(), family.end(), m); };
  for (Mask a : family)
    for (Mask b : family)
      if (!in(a | b) || !in(a & b)) return false;
  return true;
}

CompatibilityReport compatibility_conditions(const FiniteRelation& ls, const FiniteRelation& ss,
                                             const std::optional<FiniteTopology>& topology,
                                             const Budget& budget) {
  if (!(ls.ground() == ss.ground())) throw InputError("relations live on different ground sets");
  require_budget("compatibility points", ls.size(), budget.axiom_scan_n);
  Mask full = ls.full();
  CompatibilityReport r;
  r.ls_normal = separation_profile(ls, budget).normal;

  std::vector<Mask> bounded;
  for (Mask b = 0; b <= full; ++b)
    if (is_bounded(ls, b)) bounded.push_back(b);
  Mask big = 0;
  for (Mask b : bounded) big |= b;

  r.standing_hypothesis.holds = true;
  for (Mask b : bounded) {
    bool found = false;
    for (Mask u : bounded)
      if (included(b, u) && ss.orth(full & ~u, b)) {
        found = true;
        break;
      }
    if (!found) {
      r.standing_hypothesis = {false, {b}, "no bounded neighbourhood"};
      break;
    }
  }

  r.separation_after_bounded.holds = true;
  for (Mask a = 0; a <= full && r.separation_after_bounded.holds; ++a)
    for_each_submask(full & ~a, [&](Mask c) {
      if (!r.separation_after_bounded.holds || !ls.orth(a, c)) return;
      // orthogonality only improves as B grows, so the largest bounded set decides
      if (!ss.orth(a & ~big, c & ~big))
        r.separation_after_bounded = {false, {a, c, big}, "fails even after removing " +
                                                              ls.ground().format(big)};
    });

  auto meet = intersect_relations(ls, ss);
  r.intersection_normal = separation_profile(meet, budget).normal;

  if (topology) {
    const auto& t = *topology;
    PropertyVerdict closures{true, {}, ""};
    for (Mask a = 0; a <= full && closures.holds; ++a)
      for (Mask c = a; c <= full; ++c)
        if (ls.orth(a, c) && !ls.orth(t.closure(a), t.closure(c))) {
          closures = {false, {a, c}, "closures are not orthogonal"};
          break;
        }
    r.closures_orthogonal = closures;
    PropertyVerdict nbhd{true, {}, ""};
    for (Mask b : bounded) {
      Mask u = 0;
      for_each_point(b, [&](std::size_t x) { u |= t.minimal_open(x); });
      if (!is_bounded(ls, u)) {
        nbhd = {false, {b, u}, "smallest open neighbourhood is unbounded"};
        break;
      }
    }
    r.bounded_open_neighbourhoods = nbhd;
  }
  return r;
}

std::optional<Approximation> approximate(const FiniteRelation& ls, const FiniteRelation& ss,
                                         const ChainFunction& f, int tolerance_levels) {
  check_size(ls, f.size());
  auto meet = intersect_relations(ls, ss);
  Approximation out{ChainFunction::constant(f.size(), f.resolution, 0), largest_bounded(ls), 0};
  for (Mask k : nonorthogonality_components(meet)) {
    Mask outside = k & ~out.bounded;
    if (outside == 0) continue;
    int lo = f.resolution, hi = 0;
    for_each_point(outside, [&](std::size_t x) {
      lo = std::min(lo, f.levels[x]);
      hi = std::max(hi, f.levels[x]);
    });
    int mid = (lo + hi) / 2;
    int dev = std::max(mid - lo, hi - mid);
    if (dev > tolerance_levels) return std::nullopt;
    out.deviation = std::max(out.deviation, dev);
    for_each_point(k, [&](std::size_t x) { out.g.levels[x] = mid; });
  }
  return out;
}

}  // namespace orth
