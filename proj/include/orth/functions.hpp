#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orth/models.hpp"
#include "orth/relation.hpp"

namespace orth {

// A function into the chain {0, 1/m, …, 1}, stored as levels 0..m.
struct ChainFunction {
  int resolution = 1;
  std::vector<int> levels;

  static ChainFunction constant(std::size_t n, int resolution, int level);
  std::size_t size() const { return levels.size(); }
  // f⁻¹ of the levels in [lo, hi]
  Mask preimage(int lo, int hi) const;
  Mask zero_set() const { return preimage(0, 0); }
  bool operator==(const ChainFunction&) const = default;
};

// Connected components of the graph joining x, y whenever {x} is not orthogonal to {y}.
std::vector<Mask> nonorthogonality_components(const FiniteRelation& rel);

struct ChainContinuity {
  bool continuous = true;
  std::optional<std::pair<Mask, Mask>> witness;  // orthogonal in the chain, preimages are not
};

// Pair-generated relations: every non-orthogonal point pair has equal levels. Explicit relations:
// preimages of disjoint level sets are orthogonal.
ChainContinuity is_chain_continuous(const FiniteRelation& rel, const ChainFunction& f);
// The pairing x ↦ (f(x), g(x)) into the product of chains.
ChainContinuity is_pair_continuous(const FiniteRelation& rel, const ChainFunction& f,
                                   const ChainFunction& g);

// f(C) = {0}, f(D) = {m}, continuous; absent when a component meets both.
std::optional<ChainFunction> separating_function(const FiniteRelation& rel, Mask c, Mask d,
                                                 int resolution);
// C ⊥ D iff a continuous chain function separates them.
FiniteRelation functional_relation(const FiniteRelation& rel);
bool is_functionally_hausdorff(const FiniteRelation& rel);

struct PartialChain {
  Mask domain = 0;
  std::vector<int> levels;  // indexed by point; only domain entries are read
};

// Cut levels a < c < d < b.
struct PasteCuts {
  int a = 0, c = 0, d = 0, b = 0;
};

struct PasteResult {
  std::optional<ChainFunction> function;
  ChainContinuity certificate;
  // Which hypothesis failed ("lower part", "upper part", "overlap") and on which sets.
  std::string failed;
  std::optional<std::pair<Mask, Mask>> witness;
};

// Throws InputError when parts disagree on shared points or leave points uncovered.
PasteResult paste(const FiniteRelation& rel, const std::vector<PartialChain>& parts,
                  int resolution, const std::optional<PasteCuts>& cuts = std::nullopt);

struct ExtensionResult {
  std::optional<ChainFunction> function;
  std::optional<Mask> conflict;  // component on which the partial function takes two levels
  bool relation_normal = true;
};

// Untouched components receive default_level.
ExtensionResult extend_function(const FiniteRelation& rel, const PartialChain& partial,
                                int resolution, int default_level = 0,
                                const Budget& budget = {});

// f⁻¹(0) over all continuous chain functions; sorted ascending.
std::vector<Mask> zero_sets(const FiniteRelation& rel);
// X ∖ Z over the zero sets.
std::vector<Mask> cozero_sets(const FiniteRelation& rel);
bool closed_under_union_and_meet(const std::vector<Mask>& family);

struct CompatibilityReport {
  PropertyVerdict ls_normal;
  // For every bounded B a bounded U ⊇ B with (X ∖ U) ⊥_ss B.
  PropertyVerdict standing_hypothesis;
  // A ⊥ C, A ∩ C = ∅ ⟹ (A ∖ B) ⊥_ss (C ∖ B) for some bounded B.
  PropertyVerdict separation_after_bounded;
  // The intersection relation is normal.
  PropertyVerdict intersection_normal;
  // Only when the small-scale relation is topological.
  std::optional<PropertyVerdict> closures_orthogonal;
  std::optional<PropertyVerdict> bounded_open_neighbourhoods;
  bool passed() const { return separation_after_bounded.holds && intersection_normal.holds; }
};

CompatibilityReport compatibility_conditions(const FiniteRelation& ls, const FiniteRelation& ss,
                                             const std::optional<FiniteTopology>& topology = {},
                                             const Budget& budget = {});

struct Approximation {
  ChainFunction g;  // continuous for ls ∩ ss
  Mask bounded;     // ls-bounded set outside which |f − g| ≤ tolerance
  int deviation = 0;
};

// Best approximation outside the largest ls-bounded set; absent when some component of the
// intersection relation spreads f by more than twice the tolerance there.
std::optional<Approximation> approximate(const FiniteRelation& ls, const FiniteRelation& ss,
                                         const ChainFunction& f, int tolerance_levels);

}  // namespace orth
