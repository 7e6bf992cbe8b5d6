#include "orth/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace orth {

namespace {

std::vector<Mask> opens_from_minimal(std::size_t n, const std::vector<Mask>& minimal) {
  std::vector<Mask> opens;
  for (Mask s = 0; s <= full_mask(n); ++s) {
    bool open = true;
    for_each_point(s, [&](std::size_t x) {
      if (!included(minimal[x], s)) open = false;
    });
    if (open) opens.push_back(s);
  }
  return opens;
}

}  // namespace

FiniteTopology::FiniteTopology(GroundSet ground, std::vector<Mask> opens)
    : ground_(std::move(ground)), opens_(std::move(opens)) {
  require_budget("topology points", ground_.size(), 16);
  std::sort(opens_.begin(), opens_.end());
  opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
  Mask full = ground_.full();
  for (Mask u : opens_)
    if (!included(u, full)) throw InputError("open set outside the ground set");
  if (!std::binary_search(opens_.begin(), opens_.end(), Mask{0}))
    throw InputError("topology must contain the empty set");
  if (!std::binary_search(opens_.begin(), opens_.end(), full))
    throw InputError("topology must contain the ground set");
  for (Mask u : opens_)
    for (Mask v : opens_) {
      if (!std::binary_search(opens_.begin(), opens_.end(), u | v))
        throw PreconditionError("open sets not closed under union: " + ground_.format(u) + ", " +
                                    ground_.format(v),
                                {u, v});
      if (!std::binary_search(opens_.begin(), opens_.end(), u & v))
        throw PreconditionError("open sets not closed under intersection: " +
                                    ground_.format(u) + ", " + ground_.format(v),
                                {u, v});
    }
  index();
}

void FiniteTopology::index() {
  minimal_open_.assign(size(), full());
  for (Mask u : opens_)
    for_each_point(u, [&](std::size_t x) { minimal_open_[x] &= u; });
}

FiniteTopology FiniteTopology::discrete(GroundSet ground) {
  std::vector<Mask> opens;
  for (Mask s = 0; s <= ground.full(); ++s) opens.push_back(s);
  return FiniteTopology(std::move(ground), std::move(opens));
}

FiniteTopology FiniteTopology::indiscrete(GroundSet ground) {
  Mask full = ground.full();
  return FiniteTopology(std::move(ground), {0, full});
}

FiniteTopology FiniteTopology::generated(GroundSet ground, const std::vector<Mask>& subbasis) {
  std::size_t n = ground.size();
  require_budget("topology points", n, 16);
  std::vector<Mask> minimal(n, ground.full());
  for (Mask s : subbasis) {
    if (!included(s, ground.full())) throw InputError("subbasis set outside the ground set");
    for_each_point(s, [&](std::size_t x) { minimal[x] &= s; });
  }
  auto opens = opens_from_minimal(n, minimal);
  return FiniteTopology(std::move(ground), std::move(opens));
}

bool FiniteTopology::is_open(Mask a) const {
  return std::binary_search(opens_.begin(), opens_.end(), a);
}

Mask FiniteTopology::closure(Mask a) const {
  Mask out = 0;
  for (std::size_t x = 0; x < size(); ++x)
    if (minimal_open_[x] & a) out |= bit(x);
  return out;
}

Mask FiniteTopology::interior(Mask a) const {
  Mask out = 0;
  for (std::size_t x = 0; x < size(); ++x)
    if (included(minimal_open_[x], a)) out |= bit(x);
  return out;
}

bool FiniteTopology::is_t1() const {
  for (std::size_t x = 0; x < size(); ++x)
    if (minimal_open_[x] != bit(x)) return false;
  return true;
}

bool FiniteTopology::is_hausdorff() const {
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = x + 1; y < size(); ++y)
      if (minimal_open_[x] & minimal_open_[y]) return false;
  return true;
}

bool FiniteTopology::is_regular() const {
  if (!is_t1()) return false;
  for (std::size_t x = 0; x < size(); ++x)
    for (Mask u : opens_) {
      Mask f = full() & ~u;
      if (has(f, x)) continue;
      Mask nf = 0;
      for_each_point(f, [&](std::size_t y) { nf |= minimal_open_[y]; });
      if (nf & minimal_open_[x]) return false;
    }
  return true;
}

bool FiniteTopology::is_normal() const {
  if (!is_t1()) return false;
  for (Mask u : opens_)
    for (Mask v : opens_) {
      Mask e = full() & ~u, f = full() & ~v;
      if (e & f) continue;
      Mask ne = 0, nf = 0;
      for_each_point(e, [&](std::size_t y) { ne |= minimal_open_[y]; });
      for_each_point(f, [&](std::size_t y) { nf |= minimal_open_[y]; });
      if (ne & nf) return false;
    }
  return true;
}

FiniteMetric::FiniteMetric(GroundSet ground, std::vector<std::vector<double>> d)
    : ground_(std::move(ground)), d_(std::move(d)) {
  std::size_t n = ground_.size();
  if (d_.size() != n) throw InputError("distance matrix has wrong number of rows");
  for (std::size_t x = 0; x < n; ++x) {
    if (d_[x].size() != n) throw InputError("distance matrix is not square");
    for (std::size_t y = 0; y < n; ++y) {
      double v = d_[x][y];
      if (!std::isfinite(v) || v < 0) throw InputError("distances must be finite and nonnegative");
      if (v != d_[y][x]) throw InputError("distance matrix is not symmetric");
      if ((x == y) != (v == 0))
        throw InputError("distance is zero exactly on the diagonal: (" + ground_.name(x) + ", " +
                         ground_.name(y) + ")");
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (d_[x][z] > d_[x][y] + d_[y][z] + 1e-9)
          throw InputError("triangle inequality fails at (" + ground_.name(x) + ", " +
                           ground_.name(y) + ", " + ground_.name(z) + ")");
}

FiniteMetric FiniteMetric::on_line(GroundSet ground, const std::vector<double>& coords) {
  std::size_t n = ground.size();
  if (coords.size() != n) throw InputError("coordinate count does not match ground set");
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) d[x][y] = std::abs(coords[x] - coords[y]);
  return FiniteMetric(std::move(ground), std::move(d));
}

double FiniteMetric::set_distance(Mask a, Mask c) const {
  double best = std::numeric_limits<double>::infinity();
  for_each_point(a, [&](std::size_t x) {
    for_each_point(c, [&](std::size_t y) { best = std::min(best, d_[x][y]); });
  });
  return best;
}

Mask FiniteMetric::closed_ball(Mask a, double r) const {
  Mask out = 0;
  for (std::size_t y = 0; y < size(); ++y)
    for_each_point(a, [&](std::size_t x) {
      if (d_[x][y] <= r) out |= bit(y);
    });
  return out;
}

Bornology::Bornology(GroundSet ground, std::vector<Mask> members) : ground_(std::move(ground)) {
  std::unordered_set<Mask> fam(members.begin(), members.end());
  if (!fam.count(0)) throw InputError("bornology must contain the empty set");
  for (Mask m : fam) {
    if (!included(m, ground_.full())) throw InputError("bornology member outside the ground set");
    top_ |= m;
  }
  for (Mask m : fam)
    for_each_submask(m, [&](Mask s) {
      if (!fam.count(s))
        throw PreconditionError("bornology not closed under subsets: " + ground_.format(s) +
                                    " ⊆ " + ground_.format(m),
                                {m, s});
    });
  for (Mask a : fam)
    for (Mask b : fam)
      if (!fam.count(a | b))
        throw PreconditionError("bornology not closed under unions: " + ground_.format(a) + ", " +
                                    ground_.format(b),
                                {a, b});
}

Bornology Bornology::generated(GroundSet ground, const std::vector<Mask>& seeds) {
  Bornology b;
  b.ground_ = std::move(ground);
  for (Mask s : seeds) {
    if (!included(s, b.ground_.full())) throw InputError("bornology seed outside the ground set");
    b.top_ |= s;
  }
  return b;
}

std::vector<Mask> Bornology::members() const {
  std::vector<Mask> out;
  for_each_submask(top_, [&](Mask s) { out.push_back(s); });
  return out;
}

GroundSet EmbeddedPair::inner_ground() const {
  std::vector<std::string> names;
  for_each_point(inner, [&](std::size_t x) { names.push_back(ambient.ground().name(x)); });
  return GroundSet(std::move(names));
}

std::vector<std::size_t> EmbeddedPair::inner_points() const {
  std::vector<std::size_t> out;
  for_each_point(inner, [&](std::size_t x) { out.push_back(x); });
  return out;
}

Mask EmbeddedPair::lift(Mask inner_subset) const {
  auto pts = inner_points();
  Mask out = 0;
  for_each_point(inner_subset, [&](std::size_t i) { out |= bit(pts.at(i)); });
  return out;
}

FiniteRelation from_bornology(const Bornology& b) {
  Mask top = b.largest_member();
  return FiniteRelation::from_point_rule(
      b.ground(), [&](std::size_t x, std::size_t y) { return x != y || has(top, x); },
      "bornology");
}

FiniteRelation from_topology(const FiniteTopology& t) {
  std::vector<Mask> cl(t.size());
  for (std::size_t x = 0; x < t.size(); ++x) cl[x] = t.closure(bit(x));
  return FiniteRelation::from_point_rule(
      t.ground(), [&](std::size_t x, std::size_t y) { return (cl[x] & cl[y]) == 0; }, "topology");
}

FiniteRelation from_metric(const FiniteMetric& m) {
  return FiniteRelation::from_point_rule(
      m.ground(), [](std::size_t x, std::size_t y) { return x != y; }, "metric");
}

EmbeddedRelations from_embedded_pair(const EmbeddedPair& p) {
  if (p.inner == 0) throw InputError("embedded pair needs a nonempty inner set");
  if (!included(p.inner, p.ambient.full())) throw InputError("inner set outside the ambient space");
  auto pts = p.inner_points();
  GroundSet g = p.inner_ground();
  Mask corona = p.corona();
  std::vector<Mask> cl(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) cl[i] = p.ambient.closure(bit(pts[i]));
  auto ss = FiniteRelation::from_point_rule(
      g, [&](std::size_t x, std::size_t y) { return (cl[x] & cl[y]) == 0; }, "embedded pair (ss)");
  auto ls = FiniteRelation::from_point_rule(
      g, [&](std::size_t x, std::size_t y) { return (cl[x] & cl[y] & corona) == 0; },
      "embedded pair (ls)");
  return {std::move(ss), std::move(ls)};
}

std::optional<double> metric_separation_radius(const FiniteMetric& m, Mask a, Mask c) {
  if (a == 0 || c == 0) return std::numeric_limits<double>::infinity();
  if (a & c) return std::nullopt;
  return m.set_distance(a, c) / 3.0;
}

DotProduct closure_dot(const FiniteTopology& t) {
  return DotProduct::tabulate(t.size(), t.size(),
                              [&](Mask a, Mask c) { return t.closure(a) & t.closure(c); });
}

}  // namespace orth
