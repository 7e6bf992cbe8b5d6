#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orth/relation.hpp"

namespace orth {

// A^⊥ = {x ∉ A : {x} ⊥ A}
Mask perp(const FiniteRelation& rel, Mask a);

struct TopologyView {
  enum class Origin { perp_basis, closed_sets };
  Origin origin = Origin::perp_basis;
  std::vector<Mask> basis;  // sorted, deduplicated, contains ∅
  std::vector<Mask> opens;  // sorted
  bool is_discrete(std::size_t n) const { return opens.size() == (std::size_t{1} << n); }
  bool same_opens(const TopologyView& other) const { return opens == other.opens; }
};

TopologyView induced_topology(const FiniteRelation& rel, const Budget& budget = {});
// Closed sets are the A with x ⊥ A for every x ∉ A.
TopologyView closed_variant_topology(const FiniteRelation& rel, const Budget& budget = {});

struct ThickenResult {
  std::optional<std::pair<Mask, Mask>> sets;  // (E, F)
  std::string diagnostic;
  std::vector<Mask> witness;  // sets showing why the construction stopped
};

// E, F with C ⊆ E^⊥, D ⊆ F^⊥ and E^⊥ ⊥ F^⊥, built by splitting off the bounded overlap and
// spanning twice. Throws InputError when C and D are not orthogonal.
ThickenResult thicken_orthogonal(const FiniteRelation& rel, Mask c, Mask d);
bool thickening_holds(const FiniteRelation& rel, Mask c, Mask d, Mask e, Mask f);
// Searches every (E, F); only for small ground sets.
std::optional<std::pair<Mask, Mask>> thicken_exhaustive(const FiniteRelation& rel, Mask c, Mask d);

struct PerpSeparation {
  Mask c = 0, d = 0;
};

// x ∈ C^⊥, y ∈ D^⊥, x ⊥ D^⊥, y ⊥ C^⊥, C^⊥ ∩ D^⊥ = ∅. nullopt when {x}, {y} do not span.
std::optional<PerpSeparation> separate_points(const FiniteRelation& rel, std::size_t x,
                                              std::size_t y);
bool points_separated_by(const FiniteRelation& rel, std::size_t x, std::size_t y,
                         const PerpSeparation& s);
// x ∈ C^⊥, A ⊆ D^⊥, x ⊥ D^⊥, A ⊥ C^⊥, C^⊥ ∩ D^⊥ = ∅ for x ∉ A with x ⊥ A.
std::optional<PerpSeparation> separate_point_from_set(const FiniteRelation& rel, std::size_t x,
                                                      Mask a);
bool point_set_separated_by(const FiniteRelation& rel, std::size_t x, Mask a,
                            const PerpSeparation& s);

}  // namespace orth
