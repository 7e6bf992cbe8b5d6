#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orth/line.hpp"
#include "orth/maps.hpp"
#include "orth/models.hpp"
#include "orth/relation.hpp"

namespace orth {

// Set algebra plus the relation, for finite ground sets.
struct FiniteSpace {
  using Set = Mask;
  const FiniteRelation* rel;

  explicit FiniteSpace(const FiniteRelation& r) : rel(&r) {}
  Set empty() const { return 0; }
  Set ground() const { return rel->full(); }
  bool orth(Set a, Set c) const { return rel->orth(a, c); }
  bool bounded(Set b) const { return is_bounded(*rel, b); }
  Set unite(Set a, Set b) const { return a | b; }
  Set meet(Set a, Set b) const { return a & b; }
  Set minus(Set a, Set b) const { return a & ~b; }
  bool subset(Set a, Set b) const { return included(a, b); }
  std::size_t points() const { return rel->size(); }
  Set point(std::size_t x) const { return bit(x); }
  Set from_points(Mask m) const { return m; }
  std::string format(Set s) const { return rel->ground().format(s); }
};

// The symbolic line: no point is unbounded, so nothing is principal.
struct LineSpace {
  using Set = EPS;
  SymbolicRelation rel;

  explicit LineSpace(LineRule r = LineRule::metric) : rel(r) {}
  Set empty() const { return EPS(); }
  Set ground() const { return EPS::integers(); }
  bool orth(const Set& a, const Set& c) const { return rel.orth(a, c); }
  bool bounded(const Set& b) const { return rel.is_bounded(b); }
  Set unite(const Set& a, const Set& b) const { return a.unite(b); }
  Set meet(const Set& a, const Set& b) const { return a.intersect(b); }
  Set minus(const Set& a, const Set& b) const { return a.subtract(b); }
  bool subset(const Set& a, const Set& b) const { return a.subset_of(b); }
  std::size_t points() const { return 0; }
  Set point(std::size_t) const { return EPS(); }
  Set from_points(Mask) const { return EPS(); }
  std::string format(const Set& s) const { return s.to_string(); }
};

inline constexpr std::size_t kDefaultLatticeCap = 1024;

template <class Set>
struct ObservableLattice {
  std::vector<Set> members;  // sorted
  std::vector<bool> bounded;

  std::size_t size() const { return members.size(); }
  std::optional<std::size_t> index_of(const Set& s) const {
    auto it = std::lower_bound(members.begin(), members.end(), s);
    if (it == members.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - members.begin());
  }
};

// Closes seeds ∪ {∅, X} under pairwise unions and intersections.
template <class Space>
ObservableLattice<typename Space::Set> lattice_close(const Space& sp,
                                                     const std::vector<typename Space::Set>& seeds,
                                                     std::size_t cap = kDefaultLatticeCap) {
  using Set = typename Space::Set;
  std::set<Set> all{sp.empty(), sp.ground()};
  for (const auto& s : seeds) {
    if (!sp.subset(s, sp.ground())) throw InputError("seed outside the ground set");
    all.insert(s);
  }
  std::vector<Set> frontier(all.begin(), all.end());
  while (!frontier.empty()) {
    if (all.size() > cap) throw BudgetExceeded("lattice members", all.size(), cap);
    std::vector<Set> next;
    std::vector<Set> current(all.begin(), all.end());
    for (const auto& a : frontier)
      for (const auto& b : current)
        for (Set c : {sp.unite(a, b), sp.meet(a, b)})
          if (all.insert(c).second) next.push_back(std::move(c));
    frontier = std::move(next);
  }
  if (all.size() > cap) throw BudgetExceeded("lattice members", all.size(), cap);
  ObservableLattice<Set> out;
  out.members.assign(all.begin(), all.end());
  for (const auto& m : out.members) out.bounded.push_back(sp.bounded(m));
  return out;
}

// Every filter of a finite lattice is generated by its smallest member, so maximal filters
// avoiding bounded members are generated by the minimal unbounded members.
template <class Set>
struct LatticeFilter {
  std::size_t generator = 0;         // lattice index of the smallest member
  std::vector<std::size_t> members;  // lattice indices
  Mask principal_at = 0;             // points this filter is identified with
  bool principal() const { return principal_at != 0; }
};

template <class Space>
std::vector<LatticeFilter<typename Space::Set>> ultrafilters(
    const Space& sp, const ObservableLattice<typename Space::Set>& lat) {
  using Set = typename Space::Set;
  std::vector<LatticeFilter<Set>> out;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (lat.bounded[i]) continue;
    bool minimal = true;
    for (std::size_t j = 0; j < lat.size() && minimal; ++j)
      if (j != i && !lat.bounded[j] && sp.subset(lat.members[j], lat.members[i])) minimal = false;
    if (!minimal) continue;
    LatticeFilter<Set> f;
    f.generator = i;
    for (std::size_t j = 0; j < lat.size(); ++j)
      if (sp.subset(lat.members[i], lat.members[j])) f.members.push_back(j);
    for (std::size_t x = 0; x < sp.points(); ++x) {
      Set px = sp.point(x);
      if (sp.bounded(px)) continue;
      // smallest member containing x
      Set hull = sp.ground();
      for (const auto& m : lat.members)
        if (sp.subset(px, m)) hull = sp.meet(hull, m);
      if (sp.subset(lat.members[i], hull)) f.principal_at |= bit(x);
    }
    out.push_back(std::move(f));
  }
  return out;
}

template <class Set>
struct Closure {
  Set trace;                          // points of X
  std::vector<std::size_t> filters;   // ultrafilter indices
  std::vector<std::size_t> classes;   // boundary classes
};

template <class Set>
struct BoundaryResult {
  ObservableLattice<Set> lattice;
  std::vector<LatticeFilter<Set>> filters;
  std::vector<std::size_t> nonprincipal;  // filter indices
  bool transitive = true;
  std::optional<std::array<std::size_t, 3>> transitivity_witness;  // F1 ∼ F2 ∼ F3, F1 ≁ F3
  std::optional<bool> relation_normal;
  std::vector<std::vector<std::size_t>> classes;  // ∂X; empty when ∼ is not transitive
  std::vector<std::size_t> class_of;              // per filter; npos for principal ones

  std::size_t boundary_size() const { return classes.size(); }
  const Set& generator(std::size_t filter) const {
    return lattice.members[filters[filter].generator];
  }
};

template <class Space>
bool resembles(const Space& sp, const BoundaryResult<typename Space::Set>& b, std::size_t f1,
               std::size_t f2) {
  return !sp.orth(b.generator(f1), b.generator(f2));
}

// Ultrafilters, the ∼ relation and its classes over the given lattice.
template <class Space>
BoundaryResult<typename Space::Set> boundary(const Space& sp,
                                             ObservableLattice<typename Space::Set> lat,
                                             std::optional<bool> relation_normal = std::nullopt) {
  using Set = typename Space::Set;
  BoundaryResult<Set> b;
  b.lattice = std::move(lat);
  b.filters = ultrafilters(sp, b.lattice);
  b.relation_normal = relation_normal;
  for (std::size_t i = 0; i < b.filters.size(); ++i)
    if (!b.filters[i].principal()) b.nonprincipal.push_back(i);
  const auto& np = b.nonprincipal;
  // ∼ lives on all of ∂₀X, principal filters included
  std::size_t nf = b.filters.size();
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < nf; ++j)
      for (std::size_t k = 0; k < nf; ++k)
        if (b.transitive && resembles(sp, b, i, j) && resembles(sp, b, j, k) &&
            !resembles(sp, b, i, k)) {
          b.transitive = false;
          b.transitivity_witness = std::array<std::size_t, 3>{i, j, k};
        }
  b.class_of.assign(b.filters.size(), static_cast<std::size_t>(-1));
  if (!b.transitive) return b;
  for (std::size_t i : np) {
    if (b.class_of[i] != static_cast<std::size_t>(-1)) continue;
    std::size_t id = b.classes.size();
    b.classes.emplace_back();
    for (std::size_t j : np)
      if (resembles(sp, b, i, j)) {
        b.class_of[j] = id;
        b.classes[id].push_back(j);
      }
  }
  return b;
}

// C̄: C, the points of principal ultrafilters holding a subset of C, and the classes of the
// non-principal ones.
template <class Space>
Closure<typename Space::Set> closure_of(const Space& sp,
                                        const BoundaryResult<typename Space::Set>& b,
                                        const typename Space::Set& c) {
  Closure<typename Space::Set> out{c, {}, {}};
  Mask pts = 0;
  for (std::size_t i = 0; i < b.filters.size(); ++i) {
    if (!sp.subset(b.generator(i), c)) continue;
    out.filters.push_back(i);
    pts |= b.filters[i].principal_at;
    std::size_t k = b.class_of[i];
    if (k != static_cast<std::size_t>(-1) &&
        std::find(out.classes.begin(), out.classes.end(), k) == out.classes.end())
      out.classes.push_back(k);
  }
  out.trace = sp.unite(c, sp.from_points(pts));
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

struct InducedBoundaryMap {
  bool defined = true;
  std::vector<std::size_t> image;  // boundary class of X ↦ boundary class of Y
  std::string diagnostic;
};

// Sends the class of F to the class of the ultrafilters inside
// {D ∈ lattice_Y : f⁻¹(D) contains a member of F up to a bounded set}.
template <class SpaceX, class SpaceY, class Preimage>
InducedBoundaryMap induced_boundary_map(const SpaceX& sx,
                                        const BoundaryResult<typename SpaceX::Set>& bx,
                                        const SpaceY& sy,
                                        const BoundaryResult<typename SpaceY::Set>& by,
                                        Preimage&& preimage) {
  InducedBoundaryMap out;
  if (!bx.transitive || !by.transitive) {
    out.defined = false;
    out.diagnostic = "boundary is not a quotient: ∼ is not transitive";
    return out;
  }
  std::vector<typename SpaceX::Set> pulled;
  for (const auto& d : by.lattice.members) pulled.push_back(preimage(d));
  for (const auto& cls : bx.classes) {
    std::optional<std::size_t> target;
    for (std::size_t f : cls) {
      auto g = sy.ground();
      for (std::size_t j = 0; j < by.lattice.size(); ++j)
        if (sx.bounded(sx.minus(bx.generator(f), pulled[j])))
          g = sy.meet(g, by.lattice.members[j]);
      std::vector<std::size_t> hits;
      bool lands_in_points = false;
      for (std::size_t u = 0; u < by.filters.size(); ++u) {
        if (!sy.subset(by.generator(u), g)) continue;
        std::size_t k = by.class_of[u];
        if (k == static_cast<std::size_t>(-1))
          lands_in_points = true;
        else if (std::find(hits.begin(), hits.end(), k) == hits.end())
          hits.push_back(k);
      }
      if (hits.size() != 1 || lands_in_points || (target && *target != hits[0])) {
        out.defined = false;
        out.diagnostic = "class " + std::to_string(out.image.size()) + " has " +
                         std::to_string(hits.size()) +
                         " candidate images; the lattices are too coarse";
        return out;
      }
      target = hits[0];
    }
    out.image.push_back(*target);
  }
  return out;
}

// Finite candidates X̄ ⊇ X: points 0..n−1 are X, the rest lie at infinity.
struct CompactificationCandidate {
  std::size_t x_points = 0;
  FiniteTopology space;
};

struct CompactificationReport {
  PropertyVerdict dense;
  PropertyVerdict ls_compact;
  PropertyVerdict bounded_clopen;    // bounded subsets of X are open and closed in X̄
  PropertyVerdict closure_criterion;  // C ⊥ D ⟺ cl C ∩ cl D ⊆ X and bounded
  bool hausdorff = false;
  // A Hausdorff compactification forces a normal relation.
  std::optional<bool> normality_consistent;
  bool passed() const {
    return dense.holds && ls_compact.holds && bounded_clopen.holds && closure_criterion.holds;
  }
};

// X̄ = X ∪ ∂X with the quotient of the topology whose basis is {Ū : U cozero in the lattice}.
CompactificationCandidate to_candidate(const FiniteSpace& sp, const BoundaryResult<Mask>& b);
CompactificationReport verify_ls_compactification(const FiniteRelation& rel,
                                                  const CompactificationCandidate& cand,
                                                  const Budget& budget = {});

// Closures of the subsets of X and, per point at infinity, the subsets whose closure holds it.
struct CanonicalForm {
  std::vector<Mask> traces;
  std::vector<std::vector<Mask>> signatures;  // sorted
  bool operator==(const CanonicalForm&) const = default;
};
CanonicalForm canonical_form(const CompactificationCandidate& cand);

// The zero-set lattice of a finite relation.
ObservableLattice<Mask> zero_set_lattice(const FiniteRelation& rel);
BoundaryResult<Mask> finite_boundary(const FiniteRelation& rel, const Budget& budget = {});

// ℤ with ends: discrete ℤ alone, ℤ ∪ {−∞, +∞}, or ℤ ∪ {∞} with both ends glued.
enum class EndsModel { integers, two_ends, glued_ends };
std::string to_string(EndsModel m);

struct LineClosure {
  EPS trace;
  bool plus = false, minus = false;  // for glued_ends, plus stands for the single end
};
LineClosure line_closure(EndsModel model, const EPS& c);

struct LineCompactificationReport {
  PropertyVerdict closure_criterion;
  std::optional<std::pair<EPS, EPS>> witness;
  PropertyVerdict bounded_clopen;
  bool passed() const { return closure_criterion.holds && bounded_clopen.holds; }
};

LineCompactificationReport verify_ls_compactification(const SymbolicRelation& rel, EndsModel model,
                                                      const std::vector<EPS>& family);

// An open set of the model: its trace on ℤ and the ends it holds.
struct LineOpen {
  EPS trace;
  bool plus = false, minus = false;
};

struct LineCover {
  std::vector<LineOpen> members;
  bool all_singletons = false;  // adds {{n} : n ∈ ℤ}
};

struct CompactnessVerdict {
  bool holds = true;
  std::string note;
};

// Throws InputError when the family does not cover or a member is not open.
CompactnessVerdict ls_compact_check(EndsModel model, const LineCover& cover);
// Finite spaces with ∅ bounded: the whole cover is a finite subfamily with empty residual.
CompactnessVerdict ls_compact_check(const FiniteTopology& space);

// Each end is separated from every closed set of the family that misses it.
PropertyVerdict regular_ends_audit(EndsModel model, const std::vector<EPS>& family);

ObservableLattice<EPS> ends_lattice();
BoundaryResult<EPS> line_boundary(const std::vector<EPS>& seeds, LineRule rule = LineRule::metric,
                                  std::size_t cap = kDefaultLatticeCap);

// Checks continuity and that preimages of bounded sets are bounded before mapping.
InducedBoundaryMap induced_boundary_map(const EventuallyAffineMap& f, const BoundaryResult<EPS>& bx,
                                        const BoundaryResult<EPS>& by,
                                        LineRule rule = LineRule::metric);
InducedBoundaryMap induced_boundary_map(const GroundMap& f, const FiniteRelation& x,
                                        const BoundaryResult<Mask>& bx, const FiniteRelation& y,
                                        const BoundaryResult<Mask>& by);

}  // namespace orth
