#include <gtest/gtest.h>

#include "orth/induced.hpp"
#include "orth/models.hpp"
#include "support/corpus.hpp"

using namespace orth;
using namespace orth::testing;

namespace {

FiniteRelation sierpinski_rel() {
  return from_topology(FiniteTopology(GroundSet({"a", "b"}), {0, 1, 3}));
}

// A^⊥ straight from the definition.
Mask perp_by_definition(const FiniteRelation& rel, Mask a) {
  Mask out = 0;
  for (std::size_t x = 0; x < rel.size(); ++x)
    if (!has(a, x) && rel.orth(bit(x), a)) out |= bit(x);
  return out;
}

}  // namespace

TEST(Perp, Examples) {
  auto born = from_bornology(Bornology::generated(GroundSet::anonymous(4), {1}));
  EXPECT_EQ(perp(born, 0), born.full());
  for (std::size_t x = 0; x < 4; ++x) EXPECT_EQ(perp(born, born.full() & ~bit(x)), bit(x));
  auto s = sierpinski_rel();
  EXPECT_EQ(perp(s, 1), Mask{0});
  EXPECT_EQ(perp(s, 2), Mask{0});
}

TEST(Perp, MatchesDefinitionAndUnionIdentity) {
  for (const auto& m : finite_corpus(31, 40, 1, 7)) {
    Mask x = m.rel.full();
    for (Mask a = 0; a <= x; ++a) ASSERT_EQ(perp(m.rel, a), perp_by_definition(m.rel, a));
    for (Mask c = 0; c <= x; ++c)
      for (Mask d = 0; d <= x; ++d)
        ASSERT_EQ(perp(m.rel, c) & perp(m.rel, d), perp(m.rel, c | d)) << m.label;
  }
}

TEST(InducedTopology, Examples) {
  auto born = from_bornology(Bornology::generated(GroundSet::anonymous(4), {3}));
  EXPECT_TRUE(induced_topology(born).is_discrete(4));
  auto total = from_bornology(Bornology::generated(GroundSet::anonymous(4), {15}));
  EXPECT_TRUE(induced_topology(total).is_discrete(4));
  EXPECT_TRUE(closed_variant_topology(total).is_discrete(4));
  auto s = sierpinski_rel();
  EXPECT_EQ(induced_topology(s).opens, (std::vector<Mask>{0, 3}));
  EXPECT_EQ(closed_variant_topology(s).opens, (std::vector<Mask>{0, 3}));
  auto disj = from_metric(FiniteMetric::on_line(GroundSet::anonymous(3), {0, 1, 2}));
  EXPECT_TRUE(closed_variant_topology(disj).is_discrete(3));
}

TEST(InducedTopology, OpensFormATopology) {
  for (const auto& m : finite_corpus(32, 40, 1, 6)) {
    auto t = induced_topology(m.rel);
    EXPECT_NO_THROW(FiniteTopology(m.rel.ground(), t.opens)) << m.label;
  }
}

TEST(InducedTopology, RegularRelations) {
  int regular = 0;
  for (const auto& m : finite_corpus(33, 120, 1, 6)) {
    if (!separation_profile(m.rel).regular.holds) continue;
    ++regular;
    Mask x = m.rel.full();
    for (Mask a = 0; a <= x; ++a)
      ASSERT_EQ(perp(m.rel, x & ~perp(m.rel, a)), perp(m.rel, a)) << m.label;
    EXPECT_TRUE(induced_topology(m.rel).same_opens(closed_variant_topology(m.rel))) << m.label;
  }
  EXPECT_GT(regular, 20);
}

TEST(Thicken, Examples) {
  auto metric = from_metric(FiniteMetric::on_line(GroundSet::anonymous(4), {0, 1, 2, 5}));
  auto r = thicken_orthogonal(metric, 0b0011, 0b1000);
  ASSERT_TRUE(r.sets);
  EXPECT_TRUE(thickening_holds(metric, 0b0011, 0b1000, r.sets->first, r.sets->second));
  // (D, C) works once C and D cover X.
  EXPECT_TRUE(thickening_holds(metric, 0b0111, 0b1000, 0b1000, 0b0111));
  EXPECT_FALSE(thickening_holds(metric, 0b0011, 0b1000, 0b1000, 0b0011));
  EXPECT_THROW(thicken_orthogonal(metric, 1, 1), InputError);

  auto path = path_relation(3);
  auto p = thicken_orthogonal(path, 1, 4);
  EXPECT_FALSE(p.sets);
  EXPECT_FALSE(p.witness.empty());
  // The spanning construction stops, yet ({2}, {0}) thickens: normality is not necessary.
  auto found = thicken_exhaustive(path, 1, 4);
  ASSERT_TRUE(found);
  EXPECT_TRUE(thickening_holds(path, 1, 4, found->first, found->second));
}

TEST(Thicken, NormalRelationsAlwaysThicken) {
  for (const auto& m : finite_corpus(34, 60, 1, 5)) {
    if (!is_normal(m.rel)) continue;
    Mask x = m.rel.full();
    for (Mask c = 0; c <= x; ++c)
      for (Mask d = 0; d <= x; ++d) {
        if (!m.rel.orth(c, d)) continue;
        auto r = thicken_orthogonal(m.rel, c, d);
        ASSERT_TRUE(r.sets) << m.label << " " << r.diagnostic;
        ASSERT_TRUE(thickening_holds(m.rel, c, d, r.sets->first, r.sets->second));
      }
  }
}

TEST(PointSeparation, HausdorffAndRegular) {
  for (const auto& m : finite_corpus(35, 100, 2, 6)) {
    auto p = separation_profile(m.rel);
    std::size_t n = m.rel.size();
    if (p.hausdorff.holds)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          if (x == y) continue;
          auto s = separate_points(m.rel, x, y);
          ASSERT_TRUE(s) << m.label;
          ASSERT_TRUE(points_separated_by(m.rel, x, y, *s));
          ASSERT_EQ(perp(m.rel, s->c) & perp(m.rel, s->d), Mask{0});
        }
    if (p.regular.holds)
      for (std::size_t x = 0; x < n; ++x)
        for (Mask a = 0; a <= m.rel.full(); ++a) {
          if (has(a, x) || !m.rel.orth(bit(x), a)) continue;
          auto s = separate_point_from_set(m.rel, x, a);
          ASSERT_TRUE(s) << m.label;
          ASSERT_TRUE(point_set_separated_by(m.rel, x, a, *s));
        }
  }
}
