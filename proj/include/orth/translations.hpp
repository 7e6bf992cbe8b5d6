#pragma once

#include <functional>
#include <string>
#include <vector>

#include "orth/line.hpp"
#include "orth/relation.hpp"

namespace orth {

struct AxiomVerdict {
  std::string name;
  bool holds = true;
  std::vector<Mask> witness;
};

struct AxiomSuite {
  std::vector<AxiomVerdict> axioms;
  bool passed() const;
  // Throws std::out_of_range for unknown names.
  const AxiomVerdict& at(const std::string& name) const;
};

// Nearness between subsets of a finite set.
class Proximity {
 public:
  Proximity() = default;
  Proximity(GroundSet ground, PairTable near);
  template <class F>
  static Proximity tabulate(GroundSet ground, F&& near) {
    PairTable t(ground.size());
    for (Mask a = 0; a <= ground.full(); ++a)
      for (Mask b = 0; b <= ground.full(); ++b) t.set(a, b, near(a, b));
    return Proximity(std::move(ground), std::move(t));
  }

  bool near(Mask a, Mask b) const { return near_.get(a, b); }
  const GroundSet& ground() const { return ground_; }
  const PairTable& table() const { return near_; }

 private:
  GroundSet ground_;
  PairTable near_;
};

// Axioms "1".."5": symmetry, only nonempty sets are near, meeting sets are near,
// union additivity, and the separating-set axiom (exhausted over every E).
AxiomSuite check_proximity_axioms(const Proximity& p, const Budget& budget = {});
// A near C iff not A ⊥ C. Requires a small-scale normal relation (PreconditionError otherwise).
Proximity orth_to_proximity(const FiniteRelation& rel, const Budget& budget = {});
// A ⊥ C iff not A near C. Requires the proximity axioms.
FiniteRelation proximity_to_orth(const Proximity& p, const Budget& budget = {});

// A relation ≺ between subsets of a finite set.
class NeighborhoodOperator {
 public:
  NeighborhoodOperator() = default;
  NeighborhoodOperator(GroundSet ground, PairTable prec);
  template <class F>
  static NeighborhoodOperator tabulate(GroundSet ground, F&& prec) {
    PairTable t(ground.size());
    for (Mask a = 0; a <= ground.full(); ++a)
      for (Mask b = 0; b <= ground.full(); ++b) t.set(a, b, prec(a, b));
    return NeighborhoodOperator(std::move(ground), std::move(t));
  }

  bool precedes(Mask a, Mask b) const { return prec_.get(a, b); }
  const GroundSet& ground() const { return ground_; }
  std::size_t size() const { return ground_.size(); }
  Mask full() const { return ground_.full(); }
  const PairTable& table() const { return prec_; }

 private:
  GroundSet ground_;
  PairTable prec_;
};

// Axioms "N0".."N3", the derived "N0'", "N2'", "N3'", and the normality axiom "N4".
AxiomSuite check_operator_axioms(const NeighborhoodOperator& op, const Budget& budget = {});
// A ≺ U iff A ⊥ X∖U and A ⊆ U.
NeighborhoodOperator orth_to_nbhd(const FiniteRelation& rel);
// A ⊥ U iff A ≺ X∖U. Requires N0–N3 (PreconditionError with the failing axiom's witness).
FiniteRelation nbhd_to_orth(const NeighborhoodOperator& op, const Budget& budget = {});
// The operator induced on the subsets of A (points of A keep their relative order).
// S ≺_A T iff S ≺ T' for some T' with T = T' ∩ A.
NeighborhoodOperator sub_operator(const NeighborhoodOperator& op, Mask a);

// Pairs of orthogonal sets that admit a separating cover; the part of normality that survives
// translation to neighbourhood operators.
bool orthogonal_pairs_span(const FiniteRelation& rel);

// An equivalence relation on subsets of a finite set, given as a pair classifier.
struct FiniteResemblance {
  GroundSet ground;
  std::function<bool(Mask, Mask)> lambda;
};

// "reflexive", "symmetric", "transitive" exhaustively (n <= triple budget); "union" and
// "splitting" on seeded samples.
AxiomSuite check_resemblance(const FiniteResemblance& lam, std::size_t samples,
                             std::uint64_t seed, const Budget& budget = {});
// A ≤ C iff C λ (A ∪ C); B bounded iff B ≤ A for every nonempty A;
// A ⊥ C iff every B with B ≤ A and B ≤ C is bounded. Returns the explicit table.
// Requires x λ y for all points (PreconditionError with the pair otherwise).
FiniteRelation resemblance_to_orth(const FiniteResemblance& lam, const Budget& budget = {});

// A resemblance on subsets of ℤ. The quantifiers over all subsets are read over probes: the
// bounded test runs over the nonempty probes, the orthogonality test over the probes, A, C and
// A ∩ C.
struct LineResemblance {
  std::function<bool(const EPS&, const EPS&)> lambda;
  std::vector<EPS> probes;
};

// λ = finite Hausdorff distance, decided by containment radii up to cap.
LineResemblance hausdorff_resemblance(Int cap = 4096);
std::optional<Int> hausdorff_distance(const EPS& a, const EPS& b, Int cap = 4096);

// Sampled over triples and quadruples of the corpus; splitting searches A ∩ (B_i + [−r, r]).
AxiomSuite check_resemblance(const LineResemblance& lam, const std::vector<EPS>& corpus,
                             std::size_t samples, std::uint64_t seed);

class ResemblanceRelation {
 public:
  // Throws PreconditionError when two of the sample points do not resemble each other.
  explicit ResemblanceRelation(LineResemblance lam, const std::vector<Int>& sample_points = {-2, -1, 0, 1, 2});
  bool below(const EPS& a, const EPS& c) const { return lam_.lambda(c, a.unite(c)); }
  bool is_bounded(const EPS& b) const;
  bool orth(const EPS& a, const EPS& c) const;

 private:
  LineResemblance lam_;
};

}  // namespace orth
