#include "orth/translations.hpp"

#include "orth/maps.hpp"

#include <bitset>
#include <random>
#include <stdexcept>

namespace orth {

bool AxiomSuite::passed() const {
  for (const auto& a : axioms)
    if (!a.holds) return false;
  return true;
}

const AxiomVerdict& AxiomSuite::at(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.name == name) return a;
  throw std::out_of_range("no axiom named " + name);
}

namespace {

AxiomVerdict fail(std::string name, std::vector<Mask> witness) {
  return {std::move(name), false, std::move(witness)};
}

}  // namespace

Proximity::Proximity(GroundSet ground, PairTable near)
    : ground_(std::move(ground)), near_(std::move(near)) {
  if (near_.points() != ground_.size()) throw InputError("proximity table size mismatch");
}

AxiomSuite check_proximity_axioms(const Proximity& p, const Budget& budget) {
  require_budget("proximity axiom points", p.ground().size(), budget.axiom_scan_n);
  Mask full = p.ground().full();
  AxiomVerdict a1{"1"}, a2{"2"}, a3{"3"}, a4{"4"}, a5{"5"};
  for (Mask a = 0; a <= full; ++a)
    for (Mask b = 0; b <= full; ++b) {
      bool ab = p.near(a, b);
      if (a1.holds && ab && !p.near(b, a)) a1 = fail("1", {a, b});
      if (a2.holds && ab && a == 0) a2 = fail("2", {a, b});
      if (a3.holds && (a & b) && !ab) a3 = fail("3", {a, b});
      if (a4.holds)
        for (Mask c = b; c <= full; ++c)
          if (p.near(a, b | c) != (ab || p.near(a, c))) {
            a4 = fail("4", {a, b, c});
            break;
          }
      if (a5.holds && !ab) {
        bool separated = false;
        for (Mask e = 0; e <= full && !separated; ++e)
          separated = !p.near(a, e) && !p.near(b, full & ~e);
        if (!separated) a5 = fail("5", {a, b});
      }
    }
  return {{a1, a2, a3, a4, a5}};
}

Proximity orth_to_proximity(const FiniteRelation& rel, const Budget& budget) {
  if (scale_class(rel) != ScaleClass::small) {
    Mask self = 0;
    for (std::size_t x = 0; x < rel.size(); ++x)
      if (rel.orth(bit(x), bit(x))) self = bit(x);
    throw PreconditionError("proximity translation needs a small-scale relation", {self});
  }
  auto profile = separation_profile(rel, budget);
  if (!profile.normal.holds)
    throw PreconditionError("proximity translation needs a normal relation: " +
                                profile.normal.note,
                            profile.normal.witness);
  return Proximity::tabulate(rel.ground(), [&](Mask a, Mask c) { return !rel.orth(a, c); });
}

FiniteRelation proximity_to_orth(const Proximity& p, const Budget& budget) {
  auto suite = check_proximity_axioms(p, budget);
  for (const auto& a : suite.axioms)
    if (!a.holds) throw PreconditionError("proximity axiom " + a.name + " fails", a.witness);
  auto table = FiniteRelation::tabulate(
      p.ground(), [&](Mask a, Mask c) { return !p.near(a, c); }, "proximity");
  return table.reduce_to_pairs();
}

NeighborhoodOperator::NeighborhoodOperator(GroundSet ground, PairTable prec)
    : ground_(std::move(ground)), prec_(std::move(prec)) {
  if (prec_.points() != ground_.size()) throw InputError("operator table size mismatch");
}

AxiomSuite check_operator_axioms(const NeighborhoodOperator& op, const Budget& budget) {
  require_budget("operator axiom points", op.size(), budget.triple_claim_n);
  Mask full = op.full();
  std::vector<std::pair<Mask, Mask>> rel;
  for (Mask a = 0; a <= full; ++a)
    for (Mask b = 0; b <= full; ++b)
      if (op.precedes(a, b)) rel.emplace_back(a, b);

  AxiomVerdict n0{"N0"}, n1{"N1"}, n2{"N2"}, n3{"N3"}, n0p{"N0'"}, n2p{"N2'"}, n3p{"N3'"},
      n4{"N4"};
  for (Mask a = 0; a <= full; ++a) {
    if (n0.holds && !op.precedes(a, full)) n0 = fail("N0", {a, full});
    if (n0p.holds && !op.precedes(0, a)) n0p = fail("N0'", {0, a});
  }
  for (auto [a, b] : rel) {
    if (n1.holds && !op.precedes(full & ~b, full & ~a)) n1 = fail("N1", {a, b});
    Mask rest = full & ~b;
    if (n2.holds)
      for_each_submask(rest, [&](Mask extra) {
        if (n2.holds && !op.precedes(a, b | extra)) n2 = fail("N2", {a, b, b | extra});
      });
    if (n2p.holds)
      for_each_submask(a, [&](Mask sub) {
        if (n2p.holds && !op.precedes(sub, b)) n2p = fail("N2'", {sub, a, b});
      });
    if (n4.holds) {
      bool found = false;
      for (Mask m = 0; m <= full && !found; ++m) found = op.precedes(a, m) && op.precedes(m, b);
      if (!found) n4 = fail("N4", {a, b});
    }
  }
  for (auto [a, n] : rel)
    for (auto [a2, n2v] : rel) {
      if (n3.holds && !op.precedes(a | a2, n | n2v)) n3 = fail("N3", {a, n, a2, n2v});
      if (n3p.holds && !op.precedes(a & a2, n & n2v)) n3p = fail("N3'", {a, n, a2, n2v});
      if (!n3.holds && !n3p.holds) break;
    }
  return {{n0, n1, n2, n3, n0p, n2p, n3p, n4}};
}

NeighborhoodOperator orth_to_nbhd(const FiniteRelation& rel) {
  Mask full = rel.full();
  return NeighborhoodOperator::tabulate(rel.ground(), [&](Mask a, Mask u) {
    return included(a, u) && rel.orth(a, full & ~u);
  });
}

FiniteRelation nbhd_to_orth(const NeighborhoodOperator& op, const Budget& budget) {
  auto suite = check_operator_axioms(op, budget);
  for (const auto& name : {"N0", "N1", "N2", "N3"}) {
    const auto& v = suite.at(name);
    if (!v.holds) throw PreconditionError(std::string("operator axiom ") + name + " fails", v.witness);
  }
  Mask full = op.full();
  auto table = FiniteRelation::tabulate(
      op.ground(), [&](Mask a, Mask u) { return op.precedes(a, full & ~u); },
      "neighbourhood operator");
  return table.reduce_to_pairs();
}

NeighborhoodOperator sub_operator(const NeighborhoodOperator& op, Mask a) {
  if (a == 0) throw InputError("induced operator needs a nonempty subset");
  if (!included(a, op.full())) throw InputError("subset outside the ground set");
  GroundSet sub = op.ground().restrict_to(a);
  PairTable t(sub.size());
  for (Mask s = 0; s <= sub.full(); ++s) {
    Mask big_s = expand(s, a);
    for (Mask t2 = 0; t2 <= op.full(); ++t2)
      if (op.precedes(big_s, t2)) t.set(s, compress(t2 & a, a), true);
  }
  return NeighborhoodOperator(std::move(sub), std::move(t));
}

bool orthogonal_pairs_span(const FiniteRelation& rel) {
  for (Mask c = 0; c <= rel.full(); ++c)
    for (Mask d = 0; d <= rel.full(); ++d)
      if (rel.orth(c, d) && !span_witness(rel, c, d)) return false;
  return true;
}

AxiomSuite check_resemblance(const FiniteResemblance& lam, std::size_t samples,
                             std::uint64_t seed, const Budget& budget) {
  std::size_t n = lam.ground.size();
  require_budget("resemblance points", n, budget.triple_claim_n);
  Mask full = lam.ground.full();
  AxiomVerdict refl{"reflexive"}, sym{"symmetric"}, trans{"transitive"}, uni{"union"},
      split{"splitting"};
  for (Mask a = 0; a <= full; ++a) {
    if (refl.holds && !lam.lambda(a, a)) refl = fail("reflexive", {a});
    for (Mask b = 0; b <= full; ++b) {
      if (!lam.lambda(a, b)) continue;
      if (sym.holds && !lam.lambda(b, a)) sym = fail("symmetric", {a, b});
      if (trans.holds)
        for (Mask c = 0; c <= full; ++c)
          if (lam.lambda(b, c) && !lam.lambda(a, c)) {
            trans = fail("transitive", {a, b, c});
            break;
          }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Mask> pick(0, full);
  for (std::size_t i = 0; i < samples; ++i) {
    Mask a1 = pick(rng), b1 = pick(rng), a2 = pick(rng), b2 = pick(rng);
    if (uni.holds && lam.lambda(a1, b1) && lam.lambda(a2, b2) && !lam.lambda(a1 | a2, b1 | b2))
      uni = fail("union", {a1, b1, a2, b2});
    Mask a = a1;
    if (split.holds && b1 && b2 && lam.lambda(a, b1 | b2)) {
      bool found = false;
      for_each_submask(a, [&](Mask x1) {
        if (found || x1 == 0 || !lam.lambda(x1, b1)) return;
        Mask rest = a & ~x1;
        for_each_submask(x1, [&](Mask extra) {
          Mask x2 = rest | extra;
          if (!found && x2 != 0 && lam.lambda(x2, b2)) found = true;
        });
      });
      if (!found) split = fail("splitting", {a, b1, b2});
    }
  }
  return {{refl, sym, trans, uni, split}};
}

FiniteRelation resemblance_to_orth(const FiniteResemblance& lam, const Budget& budget) {
  std::size_t n = lam.ground.size();
  require_budget("resemblance points", n, budget.axiom_scan_n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (!lam.lambda(bit(x), bit(y)))
        throw PreconditionError("points " + lam.ground.name(x) + " and " + lam.ground.name(y) +
                                    " do not resemble each other",
                                {bit(x), bit(y)});
  Mask full = lam.ground.full();
  std::size_t count = std::size_t{1} << n;
  // below[a] = {b : b ≤ a}
  std::vector<std::bitset<256>> below(count);
  for (Mask a = 0; a <= full; ++a)
    for (Mask c = 0; c <= full; ++c)
      if (lam.lambda(c, a | c)) below[c].set(a);
  std::bitset<256> unbounded;
  for (Mask b = 0; b <= full; ++b) {
    bool bounded = true;
    for (Mask a = 1; a <= full && bounded; ++a) bounded = below[a].test(b);
    if (!bounded) unbounded.set(b);
  }
  return FiniteRelation::tabulate(
      lam.ground, [&](Mask a, Mask c) { return (below[a] & below[c] & unbounded).none(); },
      "asymptotic resemblance");
}

std::optional<Int> hausdorff_distance(const EPS& a, const EPS& b, Int cap) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? std::optional<Int>(0) : std::nullopt;
  auto ab = containment_radius(a, b, cap);
  auto ba = containment_radius(b, a, cap);
  if (!ab || !ba) return std::nullopt;
  return std::max(*ab, *ba);
}

LineResemblance hausdorff_resemblance(Int cap) {
  return {[cap](const EPS& a, const EPS& b) { return hausdorff_distance(a, b, cap).has_value(); },
          {EPS::finite({0}), EPS::naturals(), EPS::left_ray(0), EPS::integers()}};
}

// Witnesses index into the corpus.
AxiomSuite check_resemblance(const LineResemblance& lam, const std::vector<EPS>& corpus,
                             std::size_t samples, std::uint64_t seed) {
  if (corpus.empty()) throw InputError("resemblance corpus is empty");
  AxiomVerdict refl{"reflexive"}, sym{"symmetric"}, trans{"transitive"}, uni{"union"},
      split{"splitting"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (refl.holds && !lam.lambda(corpus[i], corpus[i])) refl = fail("reflexive", {i});
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t i = pick(rng), j = pick(rng), k = pick(rng), l = pick(rng);
    const EPS &a = corpus[i], &b = corpus[j], &c = corpus[k], &d = corpus[l];
    bool ab = lam.lambda(a, b);
    if (sym.holds && ab != lam.lambda(b, a)) sym = fail("symmetric", {i, j});
    if (trans.holds && ab && lam.lambda(b, c) && !lam.lambda(a, c)) trans = fail("transitive", {i, j, k});
    if (uni.holds && ab && lam.lambda(c, d) && !lam.lambda(a.unite(c), b.unite(d)))
      uni = fail("union", {i, j, k, l});
    // A λ (B₁ ∪ B₂) with A = a, B₁ = c, B₂ = d
    if (split.holds && !c.empty() && !d.empty() && lam.lambda(a, c.unite(d))) {
      bool found = false;
      for (Int r = 0; r <= 1024 && !found; r = r ? 2 * r : 1) {
        EPS a1 = a.intersect(c.dilate(r)), a2 = a.intersect(d.dilate(r));
        found = !a1.empty() && !a2.empty() && a1.unite(a2) == a && lam.lambda(a1, c) &&
                lam.lambda(a2, d);
      }
      if (!found) split = fail("splitting", {i, k, l});
    }
  }
  return {{refl, sym, trans, uni, split}};
}

ResemblanceRelation::ResemblanceRelation(LineResemblance lam, const std::vector<Int>& sample_points)
    : lam_(std::move(lam)) {
  for (Int x : sample_points)
    for (Int y : sample_points)
      if (!lam_.lambda(EPS::finite({x}), EPS::finite({y})))
        throw PreconditionError("points " + std::to_string(x) + " and " + std::to_string(y) +
                                    " do not resemble each other",
                                {});
}

bool ResemblanceRelation::is_bounded(const EPS& b) const {
  for (const auto& p : lam_.probes)
    if (!p.empty() && !below(b, p)) return false;
  return true;
}

bool ResemblanceRelation::orth(const EPS& a, const EPS& c) const {
  std::vector<EPS> candidates = lam_.probes;
  candidates.push_back(a);
  candidates.push_back(c);
  candidates.push_back(a.intersect(c));
  for (const auto& b : candidates)
    if (below(b, a) && below(b, c) && !is_bounded(b)) return false;
  return true;
}

}  // namespace orth
