#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "orth/boundary.hpp"
#include "orth/functions.hpp"
#include "orth/graph.hpp"
#include "orth/induced.hpp"
#include "orth/line.hpp"
#include "orth/maps.hpp"
#include "orth/models.hpp"
#include "orth/relation.hpp"
#include "orth/translations.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace orth;
using namespace orth::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct Criterion {
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

constexpr std::uint64_t kCorpusSeed = 2024;
constexpr std::size_t kLinePairs = 1000;

const std::vector<CorpusModel>& corpus() {
  static const auto models = finite_corpus(kCorpusSeed, 240, 1, 8);
  return models;
}

const std::vector<std::pair<LineSample, LineSample>>& pairs() {
  static const auto p = line_pairs(kCorpusSeed, kLinePairs);
  return p;
}

// ---- axioms

Outcome axiom_suite() {
  Outcome o;
  for (const auto& m : corpus())
    if (!verify_axioms(m.rel).passed) o.fail(m.label + " fails the axioms");
  std::mt19937_64 rng(kCorpusSeed);
  int mutated = 0;
  for (const auto& m : corpus()) {
    if (mutated == 20) break;
    std::size_t n = m.rel.size();
    if (n < 2 || n > 5) continue;
    PairTable t = m.rel.table();
    std::uniform_int_distribution<Mask> pick(0, m.rel.full());
    Mask a = pick(rng), c = pick(rng);
    t.set(a, c, !t.get(a, c));
    auto bad = FiniteRelation::from_table(m.rel.ground(), t, "mutated " + m.label);
    auto r = verify_axioms(bad);
    if (r.passed || r.violations.empty()) o.fail(bad.provenance() + " passes");
    for (const auto& v : r.violations)
      if (!replays(bad, v)) o.fail(bad.provenance() + ": witness does not replay");
    ++mutated;
  }
  if (mutated < 20) o.fail("fewer than 20 mutations");
  if (o.pass)
    o.detail = std::to_string(corpus().size()) + " corpus relations, " + std::to_string(mutated) +
               " mutations with replayable witnesses";
  return o;
}

// ---- singleton determination

// Every axiom-passing table is reached by choosing the singleton entries and propagating:
// ∅ ⊥ C by ∅ ⊥ X and splitting, {a} ⊥ C by splitting over the points of C, A ⊥ C by symmetry
// and splitting over the points of A. Rows are words indexed by C.
std::vector<std::uint64_t> propagate(std::size_t n, const std::vector<Mask>& singles) {
  std::size_t subsets = std::size_t{1} << n;
  std::uint64_t all = subsets == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << subsets) - 1;
  std::vector<std::uint64_t> rows(subsets, all);
  for (std::size_t a = 0; a < n; ++a) {
    std::uint64_t w = 0;
    for (Mask c = 0; c < subsets; ++c)
      if ((c & ~singles[a]) == 0) w |= std::uint64_t{1} << c;
    rows[bit(a)] = w;
  }
  for (Mask s = 1; s < subsets; ++s) {
    Mask top = Mask{1} << (63 - __builtin_clzll(s));
    if (s != top) rows[s] = rows[s & ~top] & rows[top];
  }
  return rows;
}

Outcome singleton_determination() {
  Outcome o;
  std::uint64_t tables = 0;
  // Brute force over every table for n ≤ 2, as a check that propagation misses nothing.
  for (std::size_t n = 1; n <= 2; ++n) {
    std::size_t entries = std::size_t{1} << (2 * n);
    std::uint64_t passing = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << entries); ++code) {
      PairTable t(n);
      for (std::size_t e = 0; e < entries; ++e)
        t.set(static_cast<Mask>(e >> n), static_cast<Mask>(e & full_mask(n)), code >> e & 1);
      auto rel = FiniteRelation::from_table(GroundSet::anonymous(n), t, "brute");
      if (!verify_axioms(rel).passed) continue;
      ++passing;
      if (!rel.reduce_to_pairs().same_table(rel)) o.fail("brute-force table differs from reduction");
    }
    if (passing != (std::uint64_t{1} << (n * (n + 1) / 2)))
      o.fail("n=" + std::to_string(n) + ": " + std::to_string(passing) + " axiom-passing tables");
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x; y < n; ++y) slots.emplace_back(x, y);
    GroundSet g = GroundSet::anonymous(n);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << slots.size()); ++code) {
      std::vector<Mask> singles(n, 0);
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (code >> s & 1) {
          singles[slots[s].first] |= bit(slots[s].second);
          singles[slots[s].second] |= bit(slots[s].first);
        }
      auto rows = propagate(n, singles);
      PairTable t(n);
      for (Mask a = 0; a <= full_mask(n); ++a)
        for (std::uint64_t w = rows[a]; w != 0; w &= w - 1)
          t.set(a, static_cast<Mask>(__builtin_ctzll(w)), true);
      auto rel = FiniteRelation::from_table(g, t, "propagated");
      if (n <= 4 && !verify_axioms(rel).passed) o.fail("propagated table fails the axioms");
      if (!(rel.reduce_to_pairs().table() == t)) o.fail("reduction differs at n=" + std::to_string(n));
      ++tables;
    }
  }
  if (o.pass)
    o.detail = std::to_string(tables) + " axiom-passing tables n ≤ 6 identical to their reduction";
  return o;
}

// ---- round trips

Outcome round_trips() {
  Outcome o;
  int proximity = 0, nbhd = 0;
  for (const auto& m : corpus()) {
    if (m.rel.size() > 6 || scale_class(m.rel) != ScaleClass::small) continue;
    auto op = orth_to_nbhd(m.rel);
    auto suite = check_operator_axioms(op);
    for (const char* name : {"N0", "N1", "N2", "N3", "N0'", "N2'", "N3'"})
      if (!suite.at(name).holds) o.fail(m.label + " fails " + name);
    if (!nbhd_to_orth(op).same_table(m.rel)) o.fail(m.label + ": operator round trip differs");
    ++nbhd;
    if (!is_normal(m.rel)) continue;
    auto p = orth_to_proximity(m.rel);
    for (const auto& a : check_proximity_axioms(p).axioms)
      if (!a.holds) o.fail(m.label + " fails proximity axiom " + a.name);
    if (!proximity_to_orth(p).same_table(m.rel)) o.fail(m.label + ": proximity round trip differs");
    ++proximity;
  }
  if (proximity < 20) o.fail("too few normal small-scale relations");
  if (o.pass)
    o.detail = std::to_string(proximity) + " proximity and " + std::to_string(nbhd) +
               " operator round trips";
  return o;
}

// ---- induced topology

Outcome induced() {
  Outcome o;
  int discrete = 0, regular = 0;
  for (const auto& m : corpus()) {
    if (m.rel.size() > 7) continue;
    Mask x = m.rel.full();
    if (m.kind == ModelKind::bornology || scale_class(m.rel) == ScaleClass::large) {
      ++discrete;
      if (!induced_topology(m.rel).is_discrete(m.rel.size())) o.fail(m.label + " is not discrete");
    }
    std::vector<Mask> p(x + 1);
    for (Mask a = 0; a <= x; ++a) p[a] = perp(m.rel, a);
    for (Mask c = 0; c <= x; ++c)
      for (Mask d = 0; d <= x; ++d)
        if ((p[c] & p[d]) != p[c | d]) o.fail(m.label + ": perp of a union");
    if (!separation_profile(m.rel).regular.holds) continue;
    ++regular;
    for (Mask a = 0; a <= x; ++a)
      if (p[x & ~p[a]] != p[a]) o.fail(m.label + ": perp of the complement of a perp");
    if (!induced_topology(m.rel).same_opens(closed_variant_topology(m.rel)))
      o.fail(m.label + ": the two topologies differ");
  }
  if (discrete < 20 || regular < 20) o.fail("too few discrete or regular instances");
  if (o.pass)
    o.detail = std::to_string(discrete) + " discrete, " + std::to_string(regular) + " regular";
  return o;
}

// ---- symbolic line

Outcome four_way() {
  Outcome o;
  int conclusive = 0;
  for (const auto& [a, c] : pairs()) {
    bool expected = line_metric_rule(a.spec, c.spec);
    bool m = ls_orth_metric(a.set, c.set);
    if (m != expected || group_orth(a.set, c.set).orthogonal != m ||
        simple_ends_orth(a.set, c.set).orthogonal != m || ends_compactification_orth(a.set, c.set) != m)
      o.fail("disagreement on " + a.set.to_string() + " / " + c.set.to_string());
    auto r = metric_ls_oracle([&](Int n) { return a.spec.contains(n); },
                              [&](Int n) { return c.spec.contains(n); }, OracleOptions{10000, 64});
    if (r.verdict == OracleVerdict::inconclusive) continue;
    ++conclusive;
    if ((r.verdict == OracleVerdict::orthogonal) != m)
      o.fail("window oracle disagrees on " + a.set.to_string() + " / " + c.set.to_string());
  }
  if (conclusive < 100) o.fail("too few conclusive oracle instances");
  if (o.pass)
    o.detail = std::to_string(pairs().size()) + " pairs, " + std::to_string(conclusive) +
               " conclusive oracle instances";
  return o;
}

Outcome resemblance() {
  Outcome o;
  ResemblanceRelation rel(hausdorff_resemblance());
  for (const auto& [a, c] : pairs())
    if (rel.orth(a.set, c.set) != ls_orth_metric(a.set, c.set))
      o.fail("disagreement on " + a.set.to_string() + " / " + c.set.to_string());
  if (o.pass) o.detail = std::to_string(pairs().size()) + " pairs agree";
  return o;
}

// ---- parallelism

bool parallel_by_definition(const FiniteRelation& rel, Mask a, Mask c) {
  for (Mask b = a;; b = (b - 1) & a) {
    if (rel.orth(b, c) && !is_bounded(rel, b)) return false;
    if (b == 0) return true;
  }
}

std::vector<std::vector<bool>> parallel_table(const FiniteRelation& rel, Outcome& o) {
  Mask x = rel.full();
  std::vector<std::vector<bool>> t(x + 1, std::vector<bool>(x + 1));
  for (Mask a = 0; a <= x; ++a)
    for (Mask c = 0; c <= x; ++c) {
      t[a][c] = parallel_by_definition(rel, a, c);
      if (parallel_sets(rel, a, c).parallel != t[a][c]) o.fail(rel.provenance() + ": parallel_sets");
    }
  return t;
}

Outcome parallelism() {
  Outcome o;
  SymbolicRelation metric;
  int line_checked = 0;
  for (const auto& [a, c] : pairs()) {
    if (c.set.empty()) continue;
    ++line_checked;
    if (parallel_sets(metric, a.set, c.set) != containment_radius(a.set, c.set).has_value())
      o.fail("closed form vs dilation on " + a.set.to_string() + " / " + c.set.to_string());
  }
  std::vector<const CorpusModel*> small;
  for (const auto& m : corpus())
    if (m.rel.size() <= 6 && small.size() < 60) small.push_back(&m);
  std::vector<std::vector<std::vector<bool>>> tables;
  for (const auto* m : small) tables.push_back(parallel_table(m->rel, o));
  std::mt19937_64 rng(kCorpusSeed);
  std::uint64_t maps = 0;
  auto check_map = [&](std::size_t i, std::size_t j, const GroundMap& f) {
    const auto& x = small[i]->rel;
    const auto& y = small[j]->rel;
    if (!continuity_check(f, x, y).continuous || !preserves_bounded_sets(f, x, y)) return;
    ++maps;
    for (Mask a = 0; a <= x.full(); ++a)
      for (Mask c = 0; c <= x.full(); ++c)
        if (tables[i][a][c] && !tables[j][f.image(a)][f.image(c)])
          o.fail(small[i]->label + " → " + small[j]->label + ": image not parallel");
  };
  for (std::size_t i = 0; i < small.size(); ++i)
    for (std::size_t j : {i, (i + 1) % small.size()}) {
      std::size_t n = small[i]->rel.size(), k = small[j]->rel.size();
      double count = std::pow(double(k), double(n));
      if (count <= 4096) {
        std::vector<std::size_t> im(n, 0);
        for (;;) {
          check_map(i, j, GroundMap(n, k, im));
          std::size_t p = 0;
          while (p < n && ++im[p] == k) im[p++] = 0;
          if (p == n) break;
        }
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, k - 1);
        for (int s = 0; s < 300; ++s) {
          std::vector<std::size_t> im(n);
          for (auto& v : im) v = pick(rng);
          check_map(i, j, GroundMap(n, k, im));
        }
      }
    }
  if (maps < 100) o.fail("too few continuous bounded-preserving maps");
  if (o.pass)
    o.detail = std::to_string(line_checked) + " line pairs, " + std::to_string(maps) +
               " continuous maps checked on all set pairs";
  return o;
}

// ---- graphs

Outcome hyperbolicity() {
  Outcome o;
  auto tree = GraphGenerator::regular_tree(3);
  auto fg = GraphGenerator::free_group(2);
  for (int r = 1; r <= 6; ++r) {
    GraphBall tb(*tree, r);
    LocalMetric tm(tb);
    if (delta_estimate(tm, tb.index({})).delta != Rational(0)) o.fail("tree δ ≠ 0 at R=" + std::to_string(r));
    GraphBall fb(*fg, r);
    LocalMetric fm(fb);
    if (delta_estimate(fm, fb.index({})).delta != Rational(0)) o.fail("free group δ ≠ 0 at R=" + std::to_string(r));
  }
  GraphBall ball(*fg, 6);
  LocalMetric m(ball);
  std::size_t e = ball.index({});
  for (std::size_t x = 0; x < ball.size(); ++x)
    for (std::size_t y = 0; y < ball.size(); ++y) {
      const auto& kx = ball.key(x);
      const auto& ky = ball.key(y);
      std::size_t lcp = 0;
      while (lcp < kx.size() && lcp < ky.size() && kx[lcp] == ky[lcp]) ++lcp;
      if (gromov_product(m, x, y, e) != Rational(static_cast<long long>(lcp)))
        o.fail("prefix formula fails at " + ball.label(x) + ", " + ball.label(y));
    }
  std::vector<std::vector<int>> cycle{{1, 3}, {0, 2}, {1, 3}, {2, 0}};
  auto cg = GraphGenerator::finite(cycle);
  GraphBall cb(*cg, 3);
  LocalMetric cm(cb);
  int oracle = delta_by_definition(graph_distances(cycle), 0);
  if (oracle != 4 || delta_estimate(cm, cb.index({0})).delta != Rational(oracle))
    o.fail("4-cycle δ differs from the oracle");
  if (o.pass)
    o.detail = "δ = 0 on tree(3) and F2 for R ≤ 6, " + std::to_string(ball.size() * ball.size()) +
               " prefix pairs, 4-cycle δ = 4";
  return o;
}

Outcome ends() {
  Outcome o;
  auto line = GraphGenerator::line();
  auto lp = end_count(GraphBall(*line, 40));
  if (!lp.stabilized || lp.ends != 2) o.fail("line end count " + std::to_string(lp.ends));
  auto grid = GraphGenerator::grid2d();
  auto gp = end_count(GraphBall(*grid, 20));
  if (!gp.stabilized || gp.ends != 1) o.fail("grid end count " + std::to_string(gp.ends));
  auto tree = GraphGenerator::regular_tree(3);
  GraphBall tb(*tree, 6);
  for (int k = 1; k <= 5; ++k)
    if (freudenthal(tb, k).outer_count() != (std::size_t{3} << (k - 1)))
      o.fail("tree census at k=" + std::to_string(k));
  auto b = boundary(LineSpace(), ends_lattice());
  if (!b.transitive || b.boundary_size() != 2) o.fail("symbolic boundary size");
  if (b.boundary_size() != lp.ends) o.fail("symbolic and graph end counts differ");
  if (o.pass) o.detail = "line 2, grid 1, tree census k ≤ 5, symbolic boundary 2";
  return o;
}

// ---- compactification

Outcome compactification() {
  Outcome o;
  int normal = 0, seeded = 0;
  std::mt19937_64 rng(kCorpusSeed);
  for (const auto& m : corpus()) {
    if (m.rel.size() > 6 || !is_normal(m.rel)) continue;
    ++normal;
    FiniteSpace sp(m.rel);
    auto b = finite_boundary(m.rel);
    auto cand = to_candidate(sp, b);
    auto r = verify_ls_compactification(m.rel, cand);
    if (!r.passed()) o.fail(m.label + " fails verify_ls_compactification");
    auto reference = canonical_form(cand);
    for (int trial = 0; trial < 2; ++trial) {
      std::vector<Mask> seeds;
      for (Mask z : b.lattice.members)
        if (std::bernoulli_distribution(0.5)(rng)) seeds.push_back(z);
      auto other = boundary(sp, lattice_close(sp, seeds));
      if (!other.transitive) continue;
      auto c2 = to_candidate(sp, other);
      if (!verify_ls_compactification(m.rel, c2).passed()) continue;
      ++seeded;
      if (!(canonical_form(c2) == reference)) o.fail(m.label + ": seeded compactifications differ");
    }
  }
  auto glued = verify_ls_compactification(SymbolicRelation(), EndsModel::glued_ends, generating_family());
  const EPS n = EPS::naturals(), minus_n = EPS::left_ray(0);
  if (glued.closure_criterion.holds || !glued.witness ||
      !((glued.witness->first == n && glued.witness->second == minus_n) ||
        (glued.witness->first == minus_n && glued.witness->second == n)))
    o.fail("glued model does not fail with (ℕ, −ℕ)");
  auto path = path_relation(5);
  FiniteSpace ps(path);
  auto nt = boundary(ps, lattice_close(ps, {1, 2, 4}), false);
  if (nt.transitive || !nt.transitivity_witness) o.fail("path model is transitive");
  if (normal < 30 || seeded < 30) o.fail("too few normal models or seeded lattices");
  if (o.pass)
    o.detail = std::to_string(normal) + " normal models, " + std::to_string(seeded) +
               " seeded comparisons, glued witness (ℕ, −ℕ), transitivity witness";
  return o;
}

Outcome functoriality() {
  Outcome o;
  auto b = boundary(LineSpace(), ends_lattice());
  LineSpace sp;
  auto plus = closure_of(sp, b, EPS::naturals()).classes;
  auto minus = closure_of(sp, b, EPS::left_ray(0)).classes;
  if (plus.size() != 1 || minus.size() != 1) {
    o.fail("ends not identified");
    return o;
  }
  auto shift = induced_boundary_map(EventuallyAffineMap::affine(5, 1), b, b);
  auto flip = induced_boundary_map(EventuallyAffineMap::affine(0, -1), b, b);
  auto id = induced_boundary_map(EventuallyAffineMap::affine(0, 1), b, b);
  if (!shift.defined || shift.image[plus[0]] != plus[0] || shift.image[minus[0]] != minus[0])
    o.fail("n ↦ n+5 is not the identity");
  if (!flip.defined || flip.image[plus[0]] != minus[0] || flip.image[minus[0]] != plus[0])
    o.fail("n ↦ −n is not the swap");
  if (!id.defined || !parallel_maps(EventuallyAffineMap::affine(0, 1),
                                    EventuallyAffineMap::affine(5, 1), generating_family())
                          .parallel ||
      id.image != shift.image)
    o.fail("parallel maps induce different maps");
  if (o.pass) o.detail = "identity, swap, equal maps for n ↦ n and n ↦ n+5";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"axiom-suite", 60, axiom_suite},
      {"singleton-determination", 60, singleton_determination},
      {"round-trips", 120, round_trips},
      {"induced-topology", 60, induced},
      {"symbolic-four-way", 120, four_way},
      {"resemblance", 60, resemblance},
      {"parallelism", 60, parallelism},
      {"hyperbolicity", 120, hyperbolicity},
      {"ends", 120, ends},
      {"compactification", 180, compactification},
      {"functoriality", 30, functoriality},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s > c.limit_s) o.fail("over the time limit");
    if (!o.pass) ++failed;
    std::printf("%s %s: %s (%.2f s, limit %.0f s)\n", o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), s, c.limit_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
