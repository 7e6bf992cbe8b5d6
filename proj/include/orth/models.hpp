#pragma once

#include <vector>

#include "orth/relation.hpp"

namespace orth {

// A topology on a finite set, stored by its open sets. Closure uses the smallest open
// neighbourhood of each point.
class FiniteTopology {
 public:
  FiniteTopology() = default;
  // Throws InputError with a witness pair if the family is not union/intersection closed.
  FiniteTopology(GroundSet ground, std::vector<Mask> opens);
  static FiniteTopology discrete(GroundSet ground);
  static FiniteTopology indiscrete(GroundSet ground);
  // Smallest topology containing the given sets.
  static FiniteTopology generated(GroundSet ground, const std::vector<Mask>& subbasis);

  const GroundSet& ground() const { return ground_; }
  std::size_t size() const { return ground_.size(); }
  Mask full() const { return ground_.full(); }
  const std::vector<Mask>& opens() const { return opens_; }

  bool is_open(Mask a) const;
  bool is_closed(Mask a) const { return is_open(full() & ~a); }
  Mask closure(Mask a) const;
  Mask interior(Mask a) const;
  Mask minimal_open(std::size_t x) const { return minimal_open_.at(x); }

  // Separation axioms in the usual sense; regular and normal include T1.
  bool is_t1() const;
  bool is_hausdorff() const;
  bool is_regular() const;
  bool is_normal() const;

 private:
  void index();

  GroundSet ground_;
  std::vector<Mask> opens_;
  std::vector<Mask> minimal_open_;
};

class FiniteMetric {
 public:
  FiniteMetric() = default;
  // Throws InputError unless d is a metric (symmetric, zero exactly on the diagonal,
  // triangle inequality up to 1e-9).
  FiniteMetric(GroundSet ground, std::vector<std::vector<double>> d);
  // Points on the real line at the given coordinates.
  static FiniteMetric on_line(GroundSet ground, const std::vector<double>& coords);

  const GroundSet& ground() const { return ground_; }
  std::size_t size() const { return ground_.size(); }
  double distance(std::size_t x, std::size_t y) const { return d_.at(x).at(y); }
  double set_distance(Mask a, Mask c) const;
  Mask closed_ball(Mask a, double r) const;

 private:
  GroundSet ground_;
  std::vector<std::vector<double>> d_;
};

// A bornology on a finite set: subset-closed, union-closed, containing ∅.
class Bornology {
 public:
  Bornology() = default;
  Bornology(GroundSet ground, std::vector<Mask> members);
  static Bornology generated(GroundSet ground, const std::vector<Mask>& seeds);

  const GroundSet& ground() const { return ground_; }
  bool contains(Mask b) const { return included(b, top_); }
  // Every member is a subset of this one.
  Mask largest_member() const { return top_; }
  std::vector<Mask> members() const;

 private:
  GroundSet ground_;
  Mask top_ = 0;
};

struct EmbeddedPair {
  FiniteTopology ambient;
  Mask inner = 0;

  Mask corona() const { return ambient.full() & ~inner; }
  // Ground set of the inner space, points ordered by their ambient index.
  GroundSet inner_ground() const;
  // Inner point index -> ambient point index.
  std::vector<std::size_t> inner_points() const;
  // Ambient mask of an inner-space subset.
  Mask lift(Mask inner_subset) const;
};

struct EmbeddedRelations {
  FiniteRelation ss;
  FiniteRelation ls;
};

FiniteRelation from_bornology(const Bornology& b);
FiniteRelation from_topology(const FiniteTopology& t);
FiniteRelation from_metric(const FiniteMetric& m);
EmbeddedRelations from_embedded_pair(const EmbeddedPair& p);

// A radius r > 0 with closed r-balls around A and C disjoint, or nullopt when A and C meet.
// Infinity when either set is empty.
std::optional<double> metric_separation_radius(const FiniteMetric& m, Mask a, Mask c);

// C·D = cl(C) ∩ cl(D).
DotProduct closure_dot(const FiniteTopology& t);

}  // namespace orth
