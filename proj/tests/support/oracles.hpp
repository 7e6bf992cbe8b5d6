#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "orth/line.hpp"
#include "orth/models.hpp"
#include "support/corpus.hpp"

// Direct evaluations of the defining rules, written without the library's data structures.
namespace orth::testing {

inline Mask closure_from_opens(const std::vector<Mask>& opens, Mask full, Mask a) {
  Mask outside = 0;
  for (Mask u : opens)
    if ((u & a) == 0) outside |= u;
  return full & ~outside;
}

inline bool bornology_rule(const Bornology& b, Mask a, Mask c) {
  auto members = b.members();
  return std::find(members.begin(), members.end(), a & c) != members.end();
}

inline bool topology_rule(const FiniteTopology& t, Mask a, Mask c) {
  return (closure_from_opens(t.opens(), t.full(), a) & closure_from_opens(t.opens(), t.full(), c)) ==
         0;
}

inline bool embedded_rule(const EmbeddedPair& p, bool large, Mask a, Mask c) {
  Mask ca = closure_from_opens(p.ambient.opens(), p.ambient.full(), p.lift(a));
  Mask cc = closure_from_opens(p.ambient.opens(), p.ambient.full(), p.lift(c));
  Mask meet = ca & cc;
  if (large) meet &= ~p.inner;
  return meet == 0;
}

// Set-level rule of a corpus model; metric models use disjointness.
inline bool model_rule(const CorpusModel& m, Mask a, Mask c) {
  switch (m.kind) {
    case ModelKind::bornology: return bornology_rule(*m.bornology, a, c);
    case ModelKind::topology: return topology_rule(*m.topology, a, c);
    case ModelKind::metric: return (a & c) == 0;
    case ModelKind::embedded_ss: return embedded_rule(*m.pair, false, a, c);
    case ModelKind::embedded_ls: return embedded_rule(*m.pair, true, a, c);
  }
  return false;
}

inline bool spec_has(const LineSetSpec& s, Direction d) {
  return std::any_of(s.terms.begin(), s.terms.end(),
                     [&](const ProgressionTerm& t) { return t.direction == d; });
}

// Unions of progressions are a bounded distance from the half-lines they point along.
inline bool line_metric_rule(const LineSetSpec& a, const LineSetSpec& c) {
  for (Direction d : {Direction::right, Direction::left})
    if (spec_has(a, d) && spec_has(c, d)) return false;
  return true;
}

// Two progressions in the same direction meet infinitely often iff their starts agree modulo
// the gcd of the steps.
inline bool line_settheoretic_rule(const LineSetSpec& a, const LineSetSpec& c) {
  for (const auto& s : a.terms)
    for (const auto& t : c.terms) {
      if (s.direction != t.direction) continue;
      Int g = std::gcd(s.step, t.step);
      if (floor_mod(s.start - t.start, g) == 0) return false;
    }
  return true;
}

// dirs(A) ⊆ dirs(C)
inline bool line_directions_contained(const LineSetSpec& a, const LineSetSpec& c) {
  for (Direction d : {Direction::right, Direction::left})
    if (spec_has(a, d) && !spec_has(c, d)) return false;
  return true;
}

// Floyd–Warshall over an adjacency list.
inline std::vector<std::vector<int>> graph_distances(const std::vector<std::vector<int>>& adj) {
  std::size_t n = adj.size();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j : adj[i]) d[i][static_cast<std::size_t>(j)] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// 4 · max over x, y, z of min(⟨x,z⟩, ⟨z,y⟩) − ⟨x,y⟩, in doubled products.
inline int delta_by_definition(const std::vector<std::vector<int>>& d, std::size_t a) {
  std::size_t n = d.size();
  auto gp2 = [&](std::size_t x, std::size_t y) { return d[x][a] + d[y][a] - d[x][y]; };
  int best = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        best = std::max(best, std::min(gp2(x, z), gp2(z, y)) - gp2(x, y));
  return 2 * best;
}

}  // namespace orth::testing
