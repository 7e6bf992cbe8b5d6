#pragma once

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "orth/ground.hpp"

namespace orth {

// Dense boolean table over pairs of subsets of an n-point set (n <= 10).
class PairTable {
 public:
  PairTable() = default;
  explicit PairTable(std::size_t n);

  std::size_t points() const { return n_; }
  bool get(Mask a, Mask c) const {
    std::size_t i = (static_cast<std::size_t>(a) << n_) | static_cast<std::size_t>(c);
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(Mask a, Mask c, bool v) {
    std::size_t i = (static_cast<std::size_t>(a) << n_) | static_cast<std::size_t>(c);
    if (v)
      bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  bool operator==(const PairTable&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> bits_ = std::vector<std::uint64_t>(1, 0);
};

// An orthogonality relation on a finite ground set.
//
// Pair-generated relations store, for each point x, the points y with {x} ⊥ {y}; a pair of sets
// is orthogonal when every cross pair of points is. Explicit relations store the full subset
// table and exist to test inputs that may not satisfy the axioms.
class FiniteRelation {
 public:
  enum class Backend { pair_generated, explicit_table };

  FiniteRelation() = default;

  // rows[x] = {y : {x} ⊥ {y}}; must be symmetric.
  static FiniteRelation from_pairs(GroundSet ground, std::vector<Mask> rows,
                                   std::string provenance);
  template <class F>
  static FiniteRelation from_point_rule(GroundSet ground, F&& rule, std::string provenance) {
    std::vector<Mask> rows(ground.size(), 0);
    for (std::size_t x = 0; x < ground.size(); ++x)
      for (std::size_t y = 0; y < ground.size(); ++y)
        if (rule(x, y)) rows[x] |= bit(y);
    return from_pairs(std::move(ground), std::move(rows), std::move(provenance));
  }
  static FiniteRelation from_table(GroundSet ground, PairTable table, std::string provenance);
  template <class F>
  static FiniteRelation tabulate(GroundSet ground, F&& rule, std::string provenance) {
    std::size_t n = ground.size();
    PairTable t(n);
    for (Mask a = 0; a <= full_mask(n); ++a)
      for (Mask c = 0; c <= full_mask(n); ++c) t.set(a, c, rule(a, c));
    return from_table(std::move(ground), std::move(t), std::move(provenance));
  }

  bool orth(Mask a, Mask c) const;
  bool point_orth(std::size_t x, std::size_t y) const { return has(orth_row(x), y); }
  // {y : {x} ⊥ {y}}
  Mask orth_row(std::size_t x) const { return rows_.at(x); }
  // N(S): the points x with {x} not orthogonal to S.
  Mask non_orthogonal_to(Mask s) const;

  Backend backend() const { return backend_; }
  const GroundSet& ground() const { return ground_; }
  std::size_t size() const { return ground_.size(); }
  Mask full() const { return ground_.full(); }
  const std::string& provenance() const { return provenance_; }

  // The pair-generated relation with the same singleton pairs.
  FiniteRelation reduce_to_pairs() const;
  PairTable table() const;
  bool same_table(const FiniteRelation& other) const;

 private:
  GroundSet ground_;
  Backend backend_ = Backend::pair_generated;
  std::vector<Mask> rows_;
  std::vector<Mask> non_rows_;
  std::vector<Mask> n_cache_;
  std::shared_ptr<const PairTable> table_;
  std::string provenance_;
};

FiniteRelation intersect_relations(const FiniteRelation& a, const FiniteRelation& b);

enum class Axiom { symmetry, empty_orthogonal_to_ground, union_splitting };
std::string to_string(Axiom a);

// Witness layout: symmetry (A, C); empty-vs-ground (); union splitting (A, C, C').
template <class Set>
struct AxiomViolation {
  Axiom axiom;
  std::vector<Set> witness;
};

template <class Set>
struct BasicAxiomReport {
  bool passed = true;
  bool sampled = false;
  std::uint64_t checks = 0;
  std::vector<AxiomViolation<Set>> violations;
};

using AxiomReport = BasicAxiomReport<Mask>;

// Exhaustive over all subset triples; throws BudgetExceeded when n > budget.axiom_scan_n.
AxiomReport verify_axioms(const FiniteRelation& rel, const Budget& budget = {});
// Uniformly sampled triples, for ground sets too large to scan.
AxiomReport verify_axioms_sampled(const FiniteRelation& rel, std::size_t samples,
                                  std::uint64_t seed);
bool replays(const FiniteRelation& rel, const AxiomViolation<Mask>& v);

template <class Set, class Orth>
bool replays_with(Orth&& orth, const Set& empty, const Set& ground, const AxiomViolation<Set>& v) {
  switch (v.axiom) {
    case Axiom::symmetry:
      return orth(v.witness.at(0), v.witness.at(1)) != orth(v.witness.at(1), v.witness.at(0));
    case Axiom::empty_orthogonal_to_ground:
      return !orth(empty, ground);
    case Axiom::union_splitting: {
      const auto& a = v.witness.at(0);
      const auto& c = v.witness.at(1);
      const auto& c2 = v.witness.at(2);
      return orth(a, unite(c, c2)) != (orth(a, c) && orth(a, c2));
    }
  }
  return false;
}

// Axiom check over sampled subsets for relations on infinite grounds. draw(rng) returns a set.
template <class Set, class Orth, class Draw>
BasicAxiomReport<Set> sample_axioms(Orth&& orth, const Set& empty, const Set& ground, Draw&& draw,
                                    std::size_t samples, std::uint64_t seed) {
  BasicAxiomReport<Set> r;
  r.sampled = true;
  std::mt19937_64 rng(seed);
  ++r.checks;
  if (!orth(empty, ground)) {
    r.passed = false;
    r.violations.push_back({Axiom::empty_orthogonal_to_ground, {}});
  }
  bool sym_seen = false, split_seen = false;
  for (std::size_t i = 0; i < samples; ++i) {
    Set a = draw(rng), c = draw(rng), c2 = draw(rng);
    r.checks += 2;
    if (!sym_seen && orth(a, c) != orth(c, a)) {
      sym_seen = true;
      r.violations.push_back({Axiom::symmetry, {a, c}});
    }
    if (!split_seen && orth(a, unite(c, c2)) != (orth(a, c) && orth(a, c2))) {
      split_seen = true;
      r.violations.push_back({Axiom::union_splitting, {a, c, c2}});
    }
  }
  r.passed = r.violations.empty();
  return r;
}

bool is_bounded(const FiniteRelation& rel, Mask b);
Mask bounded_points(const FiniteRelation& rel);

enum class ScaleClass { small, large, neither };
std::string to_string(ScaleClass s);
ScaleClass scale_class(const FiniteRelation& rel);

// A decomposition (C', D') with C' ∪ D' = X, C ⊥ D', C' ⊥ D; nullopt if none exists.
// Throws InputError if C and D are not orthogonal.
std::optional<std::pair<Mask, Mask>> span_witness(const FiniteRelation& rel, Mask c, Mask d);
// Enumerates all covers; used for explicit relations and as an independent check.
std::optional<std::pair<Mask, Mask>> span_witness_exhaustive(const FiniteRelation& rel, Mask c,
                                                             Mask d);
bool is_span_pair(const FiniteRelation& rel, Mask c, Mask d, Mask c2, Mask d2);

struct PropertyVerdict {
  bool holds = false;
  std::vector<Mask> witness;
  std::string note;
};

struct SeparationProfile {
  PropertyVerdict frechet;
  PropertyVerdict hausdorff;
  PropertyVerdict regular;
  PropertyVerdict normal;
};

SeparationProfile separation_profile(const FiniteRelation& rel, const Budget& budget = {});
bool is_normal(const FiniteRelation& rel, const Budget& budget = {});

// Set-valued pairings on subsets of an n-point set with values in subsets of an m-point set.
class DotProduct {
 public:
  DotProduct() = default;
  DotProduct(std::size_t n, std::size_t value_points, std::vector<Mask> table);
  template <class F>
  static DotProduct tabulate(std::size_t n, std::size_t value_points, F&& f) {
    require_budget("dot product points", n, 8);
    std::vector<Mask> t(std::size_t{1} << (2 * n));
    for (Mask a = 0; a <= full_mask(n); ++a)
      for (Mask c = 0; c <= full_mask(n); ++c) t[(a << n) | c] = f(a, c);
    return DotProduct(n, value_points, std::move(t));
  }

  Mask operator()(Mask a, Mask c) const { return table_[(a << n_) | c]; }
  std::size_t points() const { return n_; }
  std::size_t value_points() const { return m_; }
  // Values are only ∅ and the ground set itself.
  bool is_basic() const;

 private:
  std::size_t n_ = 0, m_ = 0;
  std::vector<Mask> table_;
};

struct DotReport {
  bool symmetric = true;
  bool empty_against_ground = true;
  bool bilinear = true;
  std::vector<Mask> witness;
  bool passed() const { return symmetric && empty_against_ground && bilinear; }
};

DotReport verify_dot(const DotProduct& d);
DotProduct intersection_dot(std::size_t n);
// C·D = ∅ when C ⊥ D, X otherwise.
DotProduct basic_dot(const FiniteRelation& rel);
// Zero stays zero, any nonzero value becomes X.
DotProduct basic_reduction(const DotProduct& d);
// C ⊥ D iff C·D = ∅.
FiniteRelation relation_from_dot(const GroundSet& ground, const DotProduct& d);

}  // namespace orth
