#include "orth/induced.hpp"

#include <algorithm>

namespace orth {

Mask perp(const FiniteRelation& rel, Mask a) {
  return rel.full() & ~a & ~rel.non_orthogonal_to(a);
}

namespace {

std::vector<Mask> union_closure(std::size_t n, const std::vector<Mask>& basis) {
  std::vector<char> seen(std::size_t{1} << n, 0);
  std::vector<Mask> opens{0};
  seen[0] = 1;
  for (Mask b : basis) {
    std::size_t k = opens.size();
    for (std::size_t i = 0; i < k; ++i) {
      Mask u = opens[i] | b;
      if (!seen[u]) {
        seen[u] = 1;
        opens.push_back(u);
      }
    }
  }
  std::sort(opens.begin(), opens.end());
  return opens;
}

}  // namespace

TopologyView induced_topology(const FiniteRelation& rel, const Budget& budget) {
  require_budget("induced topology points", rel.size(), budget.pair_scan_n);
  TopologyView v;
  v.origin = TopologyView::Origin::perp_basis;
  std::vector<char> seen(std::size_t{1} << rel.size(), 0);
  seen[0] = 1;
  v.basis.push_back(0);
  for (Mask a = 0; a <= rel.full(); ++a) {
    Mask p = perp(rel, a);
    if (!seen[p]) {
      seen[p] = 1;
      v.basis.push_back(p);
    }
  }
  std::sort(v.basis.begin(), v.basis.end());
  v.opens = union_closure(rel.size(), v.basis);
  return v;
}

TopologyView closed_variant_topology(const FiniteRelation& rel, const Budget& budget) {
  require_budget("closed-set topology points", rel.size(), budget.pair_scan_n);
  TopologyView v;
  v.origin = TopologyView::Origin::closed_sets;
  Mask full = rel.full();
  for (Mask a = 0; a <= full; ++a)
    if (perp(rel, a) == (full & ~a)) v.opens.push_back(full & ~a);
  std::sort(v.opens.begin(), v.opens.end());
  v.basis = v.opens;
  return v;
}

bool thickening_holds(const FiniteRelation& rel, Mask c, Mask d, Mask e, Mask f) {
  Mask pe = perp(rel, e), pf = perp(rel, f);
  return included(c, pe) && included(d, pf) && rel.orth(pe, pf);
}

namespace {

// From orthogonal C, D: E = D′ ∖ B, where B = C ∩ D and (C′, D′) is a disjoint cover with
// C′ ⊇ C ∖ B, D′ ⊇ D ∖ B, C′ ⊥ D, D′ ⊥ C.
std::optional<Mask> thicken_step(const FiniteRelation& rel, Mask c, Mask d, ThickenResult& out) {
  Mask b = c & d;
  if (!is_bounded(rel, b)) {
    out.diagnostic = "overlap of the orthogonal pair is not bounded";
    out.witness = {b};
    return std::nullopt;
  }
  auto span = span_witness(rel, c, d);
  if (!span) {
    out.diagnostic = "orthogonal pair has no separating cover (relation is not normal)";
    out.witness = {c, d};
    return std::nullopt;
  }
  Mask c1 = (span->first & ~d) | (c & ~b);
  Mask d1 = rel.full() & ~c1;
  return d1 & ~b;
}

}  // namespace

ThickenResult thicken_orthogonal(const FiniteRelation& rel, Mask c, Mask d) {
  if (!rel.orth(c, d))
    throw InputError("thickening requested for non-orthogonal sets " + rel.ground().format(c) +
                     ", " + rel.ground().format(d));
  ThickenResult out;
  auto e = thicken_step(rel, c, d, out);
  if (!e) return out;
  Mask pe = perp(rel, *e);
  if (!rel.orth(d, pe)) {
    out.diagnostic = "first thickening is not orthogonal to the second set";
    out.witness = {d, pe};
    return out;
  }
  auto f = thicken_step(rel, d, pe, out);
  if (!f) return out;
  if (!thickening_holds(rel, c, d, *e, *f)) {
    out.diagnostic = "constructed sets fail the thickening conditions";
    out.witness = {*e, *f};
    return out;
  }
  out.sets = std::make_pair(*e, *f);
  return out;
}

std::optional<std::pair<Mask, Mask>> thicken_exhaustive(const FiniteRelation& rel, Mask c,
                                                        Mask d) {
  require_budget("thickening search points", rel.size(), 8);
  std::vector<Mask> perps(std::size_t{1} << rel.size());
  for (Mask a = 0; a <= rel.full(); ++a) perps[a] = perp(rel, a);
  for (Mask e = 0; e <= rel.full(); ++e) {
    if (!included(c, perps[e])) continue;
    for (Mask f = 0; f <= rel.full(); ++f)
      if (included(d, perps[f]) && rel.orth(perps[e], perps[f])) return std::make_pair(e, f);
  }
  return std::nullopt;
}

bool points_separated_by(const FiniteRelation& rel, std::size_t x, std::size_t y,
                         const PerpSeparation& s) {
  Mask pc = perp(rel, s.c), pd = perp(rel, s.d);
  return has(pc, x) && has(pd, y) && rel.orth(bit(x), pd) && rel.orth(bit(y), pc) &&
         (pc & pd) == 0;
}

bool point_set_separated_by(const FiniteRelation& rel, std::size_t x, Mask a,
                            const PerpSeparation& s) {
  Mask pc = perp(rel, s.c), pd = perp(rel, s.d);
  return has(pc, x) && included(a, pd) && rel.orth(bit(x), pd) && rel.orth(a, pc) &&
         (pc & pd) == 0;
}

std::optional<PerpSeparation> separate_points(const FiniteRelation& rel, std::size_t x,
                                              std::size_t y) {
  if (x == y || !rel.orth(bit(x), bit(y))) return std::nullopt;
  auto span = span_witness(rel, bit(x), bit(y));
  if (!span) return std::nullopt;
  PerpSeparation s;
  s.c = (span->second & ~bit(x)) | bit(y);
  s.d = rel.full() & ~s.c;
  if (!points_separated_by(rel, x, y, s)) return std::nullopt;
  return s;
}

std::optional<PerpSeparation> separate_point_from_set(const FiniteRelation& rel, std::size_t x,
                                                      Mask a) {
  if (has(a, x) || !rel.orth(bit(x), a)) return std::nullopt;
  auto span = span_witness(rel, bit(x), a);
  if (!span) return std::nullopt;
  PerpSeparation s;
  s.c = (span->second & ~bit(x)) | a;
  s.d = rel.full() & ~s.c;
  if (!point_set_separated_by(rel, x, a, s)) return std::nullopt;
  return s;
}

}  // namespace orth
