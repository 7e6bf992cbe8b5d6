#include "orth/maps.hpp"

#include <algorithm>
#include <cstdlib>

namespace orth {

GroundMap::GroundMap(std::size_t source_size, std::size_t target_size,
                     std::vector<std::size_t> images)
    : target_size_(target_size), images_(std::move(images)) {
  if (images_.size() != source_size) throw InputError("map must send every source point somewhere");
  for (std::size_t y : images_)
    if (y >= target_size_) throw InputError("map image outside the target set");
}

GroundMap GroundMap::identity(std::size_t n) {
  std::vector<std::size_t> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = i;
  return GroundMap(n, n, std::move(im));
}

GroundMap GroundMap::compose(const GroundMap& g, const GroundMap& f) {
  if (f.target_size() != g.source_size()) throw InputError("maps are not composable");
  std::vector<std::size_t> im(f.source_size());
  for (std::size_t x = 0; x < im.size(); ++x) im[x] = g(f(x));
  return GroundMap(f.source_size(), g.target_size(), std::move(im));
}

Mask GroundMap::image(Mask a) const {
  Mask out = 0;
  for_each_point(a, [&](std::size_t x) { out |= bit(images_.at(x)); });
  return out;
}

Mask GroundMap::preimage(Mask b) const {
  Mask out = 0;
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (has(b, images_[x])) out |= bit(x);
  return out;
}

bool GroundMap::surjective() const { return image(full_mask(source_size())) == full_mask(target_size_); }

ContinuityVerdict continuity_check(const GroundMap& f, const FiniteRelation& x,
                                   const FiniteRelation& y) {
  if (f.source_size() != x.size() || f.target_size() != y.size())
    throw InputError("map does not match the relations' ground sets");
  ContinuityVerdict v;
  if (y.backend() == FiniteRelation::Backend::pair_generated) {
    for (std::size_t a = 0; a < y.size(); ++a)
      for (std::size_t c = a; c < y.size(); ++c)
        if (y.point_orth(a, c) && !x.orth(f.preimage(bit(a)), f.preimage(bit(c)))) {
          v.continuous = false;
          v.counterexample = std::make_pair(bit(a), bit(c));
          return v;
        }
    return v;
  }
  for (Mask a = 0; a <= y.full(); ++a)
    for (Mask c = a; c <= y.full(); ++c)
      if (y.orth(a, c) && !x.orth(f.preimage(a), f.preimage(c))) {
        v.continuous = false;
        v.counterexample = std::make_pair(a, c);
        return v;
      }
  return v;
}

FiniteRelation quotient_relation(const FiniteRelation& x, const GroundMap& f, GroundSet target) {
  if (f.source_size() != x.size() || f.target_size() != target.size())
    throw InputError("map does not match the ground sets");
  if (!f.surjective()) {
    Mask missed = target.full() & ~f.image(x.full());
    throw PreconditionError("quotient map is not surjective: misses " + target.format(missed),
                            {missed});
  }
  std::string prov = "quotient of " + x.provenance();
  if (x.backend() == FiniteRelation::Backend::pair_generated)
    return FiniteRelation::from_point_rule(
        std::move(target),
        [&](std::size_t a, std::size_t c) {
          return x.orth(f.preimage(bit(a)), f.preimage(bit(c)));
        },
        prov);
  return FiniteRelation::tabulate(
      std::move(target), [&](Mask a, Mask c) { return x.orth(f.preimage(a), f.preimage(c)); },
      prov);
}

Factorization universal_factor(const FiniteRelation& x, const GroundMap& f, const GroundMap& h,
                               const FiniteRelation& z) {
  if (f.source_size() != x.size() || h.source_size() != x.size() || h.target_size() != z.size())
    throw InputError("maps do not match the relations' ground sets");
  std::vector<std::size_t> g(f.target_size(), 0);
  for (std::size_t y = 0; y < f.target_size(); ++y) {
    Mask fiber = f.preimage(bit(y));
    if (fiber == 0) throw PreconditionError("f is not surjective", {bit(y)});
    std::size_t value = h(static_cast<std::size_t>(std::countr_zero(fiber)));
    for_each_point(fiber, [&](std::size_t p) {
      if (h(p) != value)
        throw PreconditionError("h is not constant on the fiber over " + std::to_string(y),
                                {fiber});
    });
    g[y] = value;
  }
  Factorization out;
  out.g = GroundMap(f.target_size(), h.target_size(), std::move(g));
  auto q = quotient_relation(x, f, GroundSet::anonymous(f.target_size()));
  out.g_continuous = continuity_check(out.g, q, z);
  out.h_continuous = continuity_check(h, x, z);
  return out;
}

ParallelVerdict parallel_sets(const FiniteRelation& rel, Mask a, Mask c, const Budget& budget) {
  require_budget("parallelism points", rel.size(), budget.pair_scan_n);
  ParallelVerdict v;
  for_each_submask(a, [&](Mask b) {
    if (v.parallel && rel.orth(b, c) && !is_bounded(rel, b)) {
      v.parallel = false;
      v.witness = b;
    }
  });
  return v;
}

bool mutually_parallel(const FiniteRelation& rel, Mask a, Mask c, const Budget& budget) {
  return parallel_sets(rel, a, c, budget).parallel && parallel_sets(rel, c, a, budget).parallel;
}

ParallelMapsVerdict parallel_maps(const FiniteRelation& y, const GroundMap& f, const GroundMap& g,
                                  const Budget& budget) {
  if (f.source_size() != g.source_size() || f.target_size() != y.size() ||
      g.target_size() != y.size())
    throw InputError("maps do not match the relation's ground set");
  require_budget("parallel map source points", f.source_size(), budget.pair_scan_n);
  ParallelMapsVerdict v;
  for (Mask a = 0; a <= full_mask(f.source_size()); ++a)
    if (!mutually_parallel(y, f.image(a), g.image(a), budget)) {
      v.parallel = false;
      v.witness = a;
      return v;
    }
  return v;
}

bool preserves_bounded_sets(const GroundMap& f, const FiniteRelation& x, const FiniteRelation& y) {
  require_budget("bounded-set scan points", x.size(), 16);
  for (Mask b = 0; b <= x.full(); ++b)
    if (is_bounded(x, b) && !is_bounded(y, f.image(b))) return false;
  return true;
}

std::vector<EPS> observable_family(const EventuallyAffineMap& f) {
  std::vector<EPS> fam = {EPS(),
                          EPS::integers(),
                          EPS::naturals(),
                          EPS::left_ray(0),
                          EPS::residue_class(2, 0),
                          EPS::residue_class(2, 1),
                          EPS::finite({0}),
                          EPS::finite({1})};
  for (const EPS& probe : {EPS::naturals(), EPS::left_ray(0), EPS::integers()})
    fam.push_back(f.image(probe));
  if (f.right().slope == 0) fam.push_back(EPS::finite({f.right().intercept}));
  if (f.left().slope == 0) fam.push_back(EPS::finite({f.left().intercept}));
  std::sort(fam.begin(), fam.end());
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  return fam;
}

LineContinuity continuity_check(const EventuallyAffineMap& f, const SymbolicRelation& x,
                                const SymbolicRelation& y, const std::vector<EPS>& family) {
  LineContinuity v;
  std::vector<EPS> pre;
  pre.reserve(family.size());
  for (const auto& s : family) pre.push_back(f.preimage(s));
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i; j < family.size(); ++j) {
      ++v.pairs_checked;
      if (y.orth(family[i], family[j]) && !x.orth(pre[i], pre[j])) {
        v.continuous = false;
        v.counterexample = std::make_pair(family[i], family[j]);
        return v;
      }
    }
  return v;
}

LineContinuity continuity_check(const ChainQuantizedMap& q, const SymbolicRelation& x,
                                const FiniteRelation& y) {
  if (static_cast<Int>(y.size()) != q.levels())
    throw InputError("chain relation size does not match the number of levels");
  LineContinuity v;
  auto report = [&](Mask a, Mask c) {
    v.continuous = false;
    v.counterexample = std::make_pair(EPS::finite(std::vector<Int>{std::countr_zero(a)}),
                                      EPS::finite(std::vector<Int>{std::countr_zero(c)}));
  };
  if (y.backend() == FiniteRelation::Backend::pair_generated) {
    for (std::size_t a = 0; a < y.size(); ++a)
      for (std::size_t c = a; c < y.size(); ++c) {
        ++v.pairs_checked;
        if (y.point_orth(a, c) && !x.orth(q.preimage(bit(a)), q.preimage(bit(c)))) {
          report(bit(a), bit(c));
          return v;
        }
      }
    return v;
  }
  for (Mask a = 1; a <= y.full(); ++a)
    for (Mask c = a; c <= y.full(); ++c) {
      ++v.pairs_checked;
      if (y.orth(a, c) && !x.orth(q.preimage(a), q.preimage(c))) {
        v.continuous = false;
        v.counterexample = std::make_pair(q.preimage(a), q.preimage(c));
        return v;
      }
    }
  return v;
}

bool parallel_sets(const SymbolicRelation& rel, const EPS& a, const EPS& c) {
  if (rel.rule() == LineRule::set_theoretic) return a.subtract(c).is_finite();
  return (!a.right_unbounded() || c.right_unbounded()) &&
         (!a.left_unbounded() || c.left_unbounded());
}

std::optional<Int> containment_radius(const EPS& a, const EPS& c, Int cap) {
  auto fits = [&](Int r) { return a.subset_of(c.dilate(r)); };
  if (fits(0)) return 0;
  Int lo = 0, hi = 1;
  while (!fits(hi)) {
    if (hi >= cap) return std::nullopt;
    lo = hi;
    hi = std::min(cap, hi * 2);
  }
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    if (fits(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::vector<EPS> generating_family() {
  return {EPS::naturals(),
          EPS::left_ray(0),
          EPS::integers(),
          EPS::right_ray(7),
          EPS::left_ray(-7),
          EPS::residue_class(2, 0),
          EPS::residue_class(3, 1),
          EPS::progression(0, 3, Direction::right),
          EPS::progression(1, 2, Direction::left),
          EPS::finite({0}),
          EPS::finite({-3, 4}),
          EPS()};
}

LineParallelMaps parallel_maps(const EventuallyAffineMap& f, const EventuallyAffineMap& g,
                               const std::vector<EPS>& family) {
  LineParallelMaps v;
  bool right_drift = f.right().slope != g.right().slope;
  bool left_drift = f.left().slope != g.left().slope;
  for (const auto& a : family)
    if ((right_drift && a.right_unbounded()) || (left_drift && a.left_unbounded())) {
      v.parallel = false;
      v.witness = a;
      break;
    }
  if (v.parallel) {
    Int lo = std::min(f.lo(), g.lo()) - 1, hi = std::max(f.hi(), g.hi()) + 1;
    Int bound = 0;
    for (const auto& a : family) {
      if (a.right_unbounded())
        bound = std::max(bound, std::abs(f.right().intercept - g.right().intercept));
      if (a.left_unbounded())
        bound = std::max(bound, std::abs(f.left().intercept - g.left().intercept));
      for (Int n : a.elements_in(lo, hi)) bound = std::max(bound, std::abs(f(n) - g(n)));
    }
    v.bound = bound;
  }
  SymbolicRelation metric(LineRule::metric);
  for (const auto& a : family) {
    EPS fa = f.image(a), ga = g.image(a);
    if (!parallel_sets(metric, fa, ga) || !parallel_sets(metric, ga, fa)) {
      v.images_parallel_on_family = false;
      v.images_witness = a;
      break;
    }
  }
  return v;
}

}  // namespace orth
