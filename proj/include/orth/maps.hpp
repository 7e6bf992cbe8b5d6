#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "orth/line.hpp"
#include "orth/relation.hpp"

namespace orth {

// A total map between finite ground sets, by point index.
class GroundMap {
 public:
  GroundMap() = default;
  GroundMap(std::size_t source_size, std::size_t target_size, std::vector<std::size_t> images);
  static GroundMap identity(std::size_t n);
  // (g ∘ f)(x) = g(f(x))
  static GroundMap compose(const GroundMap& g, const GroundMap& f);

  std::size_t operator()(std::size_t x) const { return images_.at(x); }
  std::size_t source_size() const { return images_.size(); }
  std::size_t target_size() const { return target_size_; }
  const std::vector<std::size_t>& images() const { return images_; }

  Mask image(Mask a) const;
  Mask preimage(Mask b) const;
  bool surjective() const;

 private:
  std::size_t target_size_ = 0;
  std::vector<std::size_t> images_;
};

struct ContinuityVerdict {
  bool continuous = true;
  std::optional<std::pair<Mask, Mask>> counterexample;  // orthogonal in the target
};

// Pair-generated targets: every orthogonal pair of points; explicit targets: every pair of sets.
ContinuityVerdict continuity_check(const GroundMap& f, const FiniteRelation& x,
                                   const FiniteRelation& y);

// C ⊥ D iff f⁻¹(C) ⊥ f⁻¹(D). Requires f surjective.
FiniteRelation quotient_relation(const FiniteRelation& x, const GroundMap& f, GroundSet target);

struct Factorization {
  GroundMap g;                       // h = g ∘ f
  ContinuityVerdict g_continuous;    // against the quotient relation and z
  ContinuityVerdict h_continuous;    // against x and z
};

// Throws PreconditionError with the offending fiber when h is not constant on fibers of f.
Factorization universal_factor(const FiniteRelation& x, const GroundMap& f, const GroundMap& h,
                               const FiniteRelation& z);

struct ParallelVerdict {
  bool parallel = true;
  std::optional<Mask> witness;  // unbounded B ⊆ A with B ⊥ C
};

// A is parallel to C: every B ⊆ A with B ⊥ C is bounded.
ParallelVerdict parallel_sets(const FiniteRelation& rel, Mask a, Mask c,
                              const Budget& budget = {});
bool mutually_parallel(const FiniteRelation& rel, Mask a, Mask c, const Budget& budget = {});

struct ParallelMapsVerdict {
  bool parallel = true;
  std::optional<Mask> witness;  // A with f(A), g(A) not mutually parallel
};

ParallelMapsVerdict parallel_maps(const FiniteRelation& y, const GroundMap& f, const GroundMap& g,
                                  const Budget& budget = {});
bool preserves_bounded_sets(const GroundMap& f, const FiniteRelation& x, const FiniteRelation& y);

// Maps on the symbolic line.

struct LineContinuity {
  bool continuous = true;
  std::optional<std::pair<EPS, EPS>> counterexample;  // orthogonal in the target
  std::size_t pairs_checked = 0;
};

// Probe sets: ∅, ℤ, both half-lines, parity classes, a few points, and images of the probes.
std::vector<EPS> observable_family(const EventuallyAffineMap& f);
LineContinuity continuity_check(const EventuallyAffineMap& f, const SymbolicRelation& x,
                                const SymbolicRelation& y, const std::vector<EPS>& family);
// Target is the chain {0, …, levels−1} with the given relation.
LineContinuity continuity_check(const ChainQuantizedMap& q, const SymbolicRelation& x,
                                const FiniteRelation& y);

// One-sided parallelism under the given rule, decided in closed form.
bool parallel_sets(const SymbolicRelation& rel, const EPS& a, const EPS& c);
// Smallest r ≤ cap with A inside the r-dilation of C.
std::optional<Int> containment_radius(const EPS& a, const EPS& c, Int cap = 4096);

// Tails, residue-class progressions and small finite sets.
std::vector<EPS> generating_family();

struct LineParallelMaps {
  bool parallel = true;           // sup |f − g| over the generating family is finite
  std::optional<EPS> witness;     // family member on which |f − g| is unbounded
  std::optional<Int> bound;       // sup |f − g| when parallel
  bool images_parallel_on_family = true;  // f(A), g(A) mutually parallel for every member
  std::optional<EPS> images_witness;
};

LineParallelMaps parallel_maps(const EventuallyAffineMap& f, const EventuallyAffineMap& g,
                               const std::vector<EPS>& family);

}  // namespace orth
