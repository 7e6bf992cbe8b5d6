#include "orth/relation.hpp"

#include <algorithm>

namespace orth {

PairTable::PairTable(std::size_t n) : n_(n) {
  if (n > 10) throw BudgetExceeded("explicit table points", n, 10);
  std::size_t cells = std::size_t{1} << (2 * n);
  bits_.assign((cells + 63) / 64, 0);
}

FiniteRelation FiniteRelation::from_pairs(GroundSet ground, std::vector<Mask> rows,
                                          std::string provenance) {
  std::size_t n = ground.size();
  if (rows.size() != n)
    throw InputError("pair table has " + std::to_string(rows.size()) + " rows for " +
                     std::to_string(n) + " points");
  for (std::size_t x = 0; x < n; ++x) {
    if (!included(rows[x], full_mask(n))) throw InputError("pair table row out of range");
    for (std::size_t y = 0; y < n; ++y)
      if (has(rows[x], y) != has(rows[y], x))
        throw InputError("pair table is not symmetric at (" + ground.name(x) + ", " +
                         ground.name(y) + ")");
  }
  FiniteRelation r;
  r.ground_ = std::move(ground);
  r.backend_ = Backend::pair_generated;
  r.rows_ = std::move(rows);
  r.non_rows_.resize(n);
  for (std::size_t x = 0; x < n; ++x) r.non_rows_[x] = full_mask(n) & ~r.rows_[x];
  r.provenance_ = std::move(provenance);
  if (n <= 12) {
    r.n_cache_.assign(std::size_t{1} << n, 0);
    for (Mask m = 1; m <= full_mask(n); ++m)
      r.n_cache_[m] = r.n_cache_[m & (m - 1)] | r.non_rows_[std::countr_zero(m)];
  }
  return r;
}

FiniteRelation FiniteRelation::from_table(GroundSet ground, PairTable table,
                                          std::string provenance) {
  std::size_t n = ground.size();
  if (table.points() != n) throw InputError("explicit table size does not match ground set");
  FiniteRelation r;
  r.ground_ = std::move(ground);
  r.backend_ = Backend::explicit_table;
  r.rows_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (table.get(bit(x), bit(y))) r.rows_[x] |= bit(y);
  r.table_ = std::make_shared<const PairTable>(std::move(table));
  r.provenance_ = std::move(provenance);
  return r;
}

bool FiniteRelation::orth(Mask a, Mask c) const {
  if (backend_ == Backend::explicit_table) return table_->get(a, c);
  return (a & non_orthogonal_to(c)) == 0;
}

Mask FiniteRelation::non_orthogonal_to(Mask s) const {
  if (backend_ == Backend::explicit_table) {
    Mask out = 0;
    for (std::size_t x = 0; x < size(); ++x)
      if (!table_->get(bit(x), s)) out |= bit(x);
    return out;
  }
  if (!n_cache_.empty()) return n_cache_[s];
  Mask out = 0;
  for_each_point(s, [&](std::size_t c) { out |= non_rows_[c]; });
  return out;
}

FiniteRelation FiniteRelation::reduce_to_pairs() const {
  std::vector<Mask> rows = rows_;
  // Explicit tables need not be symmetric on singletons; keep only symmetric pairs.
  for (std::size_t x = 0; x < rows.size(); ++x)
    for (std::size_t y = 0; y < rows.size(); ++y)
      if (!has(rows_[y], x)) rows[x] &= ~bit(y);
  return from_pairs(ground_, std::move(rows), provenance_);
}

PairTable FiniteRelation::table() const {
  if (table_) return *table_;
  PairTable t(size());
  for (Mask a = 0; a <= full(); ++a) {
    Mask na = non_orthogonal_to(a);
    for (Mask c = 0; c <= full(); ++c) t.set(c, a, (c & na) == 0);
  }
  return t;
}

bool FiniteRelation::same_table(const FiniteRelation& other) const {
  if (size() != other.size()) return false;
  require_budget("table comparison points", size(), 10);
  for (Mask a = 0; a <= full(); ++a)
    for (Mask c = 0; c <= full(); ++c)
      if (orth(a, c) != other.orth(a, c)) return false;
  return true;
}

FiniteRelation intersect_relations(const FiniteRelation& a, const FiniteRelation& b) {
  if (!(a.ground() == b.ground())) throw InputError("relations live on different ground sets");
  std::string prov = a.provenance() + " ∩ " + b.provenance();
  if (a.backend() == FiniteRelation::Backend::pair_generated &&
      b.backend() == FiniteRelation::Backend::pair_generated) {
    std::vector<Mask> rows(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) rows[x] = a.orth_row(x) & b.orth_row(x);
    return FiniteRelation::from_pairs(a.ground(), std::move(rows), prov);
  }
  return FiniteRelation::tabulate(
      a.ground(), [&](Mask s, Mask t) { return a.orth(s, t) && b.orth(s, t); }, prov);
}

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::symmetry: return "symmetry";
    case Axiom::empty_orthogonal_to_ground: return "empty-set-orthogonal-to-ground";
    case Axiom::union_splitting: return "union-splitting";
  }
  return "?";
}

namespace {

template <class Orth>
AxiomReport scan_axioms(std::size_t n, Orth&& orth) {
  AxiomReport r;
  Mask full = full_mask(n);
  ++r.checks;
  if (!orth(Mask{0}, full)) r.violations.push_back({Axiom::empty_orthogonal_to_ground, {}});

  bool found = false;
  for (Mask a = 0; a <= full && !found; ++a)
    for (Mask c = a + 1; c <= full; ++c) {
      ++r.checks;
      if (orth(a, c) != orth(c, a)) {
        r.violations.push_back({Axiom::symmetry, {a, c}});
        found = true;
        break;
      }
    }

  found = false;
  for (Mask a = 0; a <= full && !found; ++a)
    for (Mask c = 0; c <= full && !found; ++c) {
      bool oc = orth(a, c);
      for (Mask c2 = c; c2 <= full; ++c2) {
        ++r.checks;
        if (orth(a, c | c2) != (oc && orth(a, c2))) {
          r.violations.push_back({Axiom::union_splitting, {a, c, c2}});
          found = true;
          break;
        }
      }
    }
  r.passed = r.violations.empty();
  return r;
}

}  // namespace

AxiomReport verify_axioms(const FiniteRelation& rel, const Budget& budget) {
  require_budget("axiom scan points", rel.size(), budget.axiom_scan_n);
  return scan_axioms(rel.size(), [&](Mask a, Mask c) { return rel.orth(a, c); });
}

AxiomReport verify_axioms_sampled(const FiniteRelation& rel, std::size_t samples,
                                  std::uint64_t seed) {
  Mask full = rel.full();
  std::uniform_int_distribution<Mask> pick(0, full);
  return sample_axioms<Mask>([&](Mask a, Mask c) { return rel.orth(a, c); }, Mask{0}, full,
                             [&](std::mt19937_64& g) { return pick(g); }, samples, seed);
}

bool replays(const FiniteRelation& rel, const AxiomViolation<Mask>& v) {
  return replays_with<Mask>([&](Mask a, Mask c) { return rel.orth(a, c); }, Mask{0}, rel.full(),
                            v);
}

bool is_bounded(const FiniteRelation& rel, Mask b) { return rel.orth(b, rel.full()); }

Mask bounded_points(const FiniteRelation& rel) {
  Mask out = 0;
  for (std::size_t x = 0; x < rel.size(); ++x)
    if (rel.orth(bit(x), rel.full())) out |= bit(x);
  return out;
}

std::string to_string(ScaleClass s) {
  switch (s) {
    case ScaleClass::small: return "small-scale";
    case ScaleClass::large: return "large-scale";
    case ScaleClass::neither: return "neither";
  }
  return "?";
}

ScaleClass scale_class(const FiniteRelation& rel) {
  std::size_t n = rel.size();
  if (n == 0) return ScaleClass::small;
  bool small = true;
  if (rel.backend() == FiniteRelation::Backend::pair_generated) {
    for (std::size_t x = 0; x < n; ++x)
      if (rel.point_orth(x, x)) small = false;
  } else {
    for (Mask s = 1; s <= rel.full(); ++s)
      if (rel.orth(s, s)) {
        small = false;
        break;
      }
  }
  if (small) return ScaleClass::small;
  if (bounded_points(rel) == rel.full()) return ScaleClass::large;
  return ScaleClass::neither;
}

bool is_span_pair(const FiniteRelation& rel, Mask c, Mask d, Mask c2, Mask d2) {
  return (c2 | d2) == rel.full() && rel.orth(c, d2) && rel.orth(c2, d);
}

std::optional<std::pair<Mask, Mask>> span_witness_exhaustive(const FiniteRelation& rel, Mask c,
                                                             Mask d) {
  require_budget("span search points", rel.size(), 12);
  Mask full = rel.full();
  for (Mask c2 = 0; c2 <= full; ++c2) {
    if (!rel.orth(c2, d)) continue;
    Mask base = full & ~c2;
    std::optional<std::pair<Mask, Mask>> hit;
    for_each_submask(c2, [&](Mask extra) {
      if (!hit && rel.orth(c, base | extra)) hit = std::make_pair(c2, base | extra);
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

std::optional<std::pair<Mask, Mask>> span_witness(const FiniteRelation& rel, Mask c, Mask d) {
  if (!rel.orth(c, d))
    throw InputError("span witness requested for non-orthogonal sets " + rel.ground().format(c) +
                     ", " + rel.ground().format(d));
  if (rel.backend() == FiniteRelation::Backend::explicit_table)
    return span_witness_exhaustive(rel, c, d);
  Mask nc = rel.non_orthogonal_to(c);
  Mask nd = rel.non_orthogonal_to(d);
  if (nc & nd) return std::nullopt;
  return std::make_pair(rel.full() & ~nd, rel.full() & ~nc);
}

namespace {

PropertyVerdict check_frechet(const FiniteRelation& rel) {
  for (std::size_t x = 0; x < rel.size(); ++x)
    for (std::size_t y = x + 1; y < rel.size(); ++y)
      if (!rel.orth(bit(x), bit(y)))
        return {false, {bit(x), bit(y)}, "distinct points are not orthogonal"};
  return {true, {}, ""};
}

PropertyVerdict check_hausdorff(const FiniteRelation& rel, const PropertyVerdict& frechet) {
  if (!frechet.holds) return frechet;
  for (std::size_t x = 0; x < rel.size(); ++x)
    for (std::size_t y = x + 1; y < rel.size(); ++y)
      if (!span_witness(rel, bit(x), bit(y)))
        return {false, {bit(x), bit(y)}, "distinct points have no separating cover"};
  return {true, {}, ""};
}

PropertyVerdict check_regular(const FiniteRelation& rel, const PropertyVerdict& frechet) {
  if (!frechet.holds) return frechet;
  for (std::size_t x = 0; x < rel.size(); ++x) {
    if (rel.orth(bit(x), bit(x)) && !is_bounded(rel, bit(x)))
      return {false, {bit(x)}, "self-orthogonal point is not bounded"};
    Mask nx = rel.non_orthogonal_to(bit(x));
    Mask allowed = rel.backend() == FiniteRelation::Backend::pair_generated ? rel.full() & ~nx
                                                                           : rel.full();
    std::optional<PropertyVerdict> fail;
    for_each_submask(allowed, [&](Mask a) {
      if (fail || !rel.orth(bit(x), a)) return;
      if (!span_witness(rel, bit(x), a))
        fail = PropertyVerdict{false, {bit(x), a}, "point and orthogonal set have no separating cover"};
    });
    if (fail) return *fail;
  }
  return {true, {}, ""};
}

PropertyVerdict check_normal(const FiniteRelation& rel, const PropertyVerdict& frechet) {
  if (!frechet.holds) return frechet;
  Mask full = rel.full();
  for (Mask b = 1; b <= full; ++b)
    if (rel.orth(b, b) && !is_bounded(rel, b))
      return {false, {b}, "self-orthogonal set is not bounded"};
  for (Mask c = 0; c <= full; ++c)
    for (Mask d = 0; d <= full; ++d)
      if (rel.orth(c, d) && !span_witness(rel, c, d))
        return {false, {c, d}, "orthogonal sets have no separating cover"};
  return {true, {}, ""};
}

void profile_budget(const FiniteRelation& rel, const Budget& budget) {
  if (rel.backend() == FiniteRelation::Backend::explicit_table)
    require_budget("separation scan points (explicit)", rel.size(), budget.triple_claim_n);
  else
    require_budget("separation scan points", rel.size(), budget.pair_scan_n);
}

}  // namespace

SeparationProfile separation_profile(const FiniteRelation& rel, const Budget& budget) {
  profile_budget(rel, budget);
  SeparationProfile p;
  p.frechet = check_frechet(rel);
  p.hausdorff = check_hausdorff(rel, p.frechet);
  p.regular = check_regular(rel, p.frechet);
  p.normal = check_normal(rel, p.frechet);
  return p;
}

bool is_normal(const FiniteRelation& rel, const Budget& budget) {
  profile_budget(rel, budget);
  return check_normal(rel, check_frechet(rel)).holds;
}

DotProduct::DotProduct(std::size_t n, std::size_t value_points, std::vector<Mask> table)
    : n_(n), m_(value_points), table_(std::move(table)) {
  if (table_.size() != (std::size_t{1} << (2 * n))) throw InputError("dot product table size");
  for (Mask v : table_)
    if (!included(v, full_mask(m_))) throw InputError("dot product value out of range");
}

bool DotProduct::is_basic() const {
  return std::all_of(table_.begin(), table_.end(),
                     [&](Mask v) { return v == 0 || v == full_mask(m_); });
}

DotReport verify_dot(const DotProduct& d) {
  DotReport r;
  Mask full = full_mask(d.points());
  if (d(0, full) != 0) {
    r.empty_against_ground = false;
    r.witness = {0, full};
  }
  for (Mask a = 0; a <= full && r.symmetric; ++a)
    for (Mask c = a + 1; c <= full; ++c)
      if (d(a, c) != d(c, a)) {
        r.symmetric = false;
        if (r.witness.empty()) r.witness = {a, c};
        break;
      }
  for (Mask a = 0; a <= full && r.bilinear; ++a)
    for (Mask c = 0; c <= full && r.bilinear; ++c)
      for (Mask c2 = c; c2 <= full; ++c2)
        if (d(a, c | c2) != (d(a, c) | d(a, c2))) {
          r.bilinear = false;
          if (r.witness.empty()) r.witness = {a, c, c2};
          break;
        }
  return r;
}

DotProduct intersection_dot(std::size_t n) {
  return DotProduct::tabulate(n, n, [](Mask a, Mask c) { return a & c; });
}

DotProduct basic_dot(const FiniteRelation& rel) {
  Mask full = rel.full();
  return DotProduct::tabulate(rel.size(), rel.size(),
                              [&](Mask a, Mask c) { return rel.orth(a, c) ? Mask{0} : full; });
}

DotProduct basic_reduction(const DotProduct& d) {
  Mask full = full_mask(d.points());
  return DotProduct::tabulate(d.points(), d.points(),
                              [&](Mask a, Mask c) { return d(a, c) == 0 ? Mask{0} : full; });
}

FiniteRelation relation_from_dot(const GroundSet& ground, const DotProduct& d) {
  if (ground.size() != d.points()) throw InputError("dot product size does not match ground set");
  return FiniteRelation::tabulate(
      ground, [&](Mask a, Mask c) { return d(a, c) == 0; }, "dot product");
}

}  // namespace orth
