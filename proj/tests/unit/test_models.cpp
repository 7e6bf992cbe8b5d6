#include <gtest/gtest.h>

#include "orth/models.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace orth;
using namespace orth::testing;

namespace {

bool only_empty_pairs(const FiniteRelation& rel) {
  for (Mask a = 1; a <= rel.full(); ++a)
    for (Mask c = 1; c <= rel.full(); ++c)
      if (rel.orth(a, c)) return false;
  return true;
}

bool is_disjointness(const FiniteRelation& rel) {
  for (Mask a = 0; a <= rel.full(); ++a)
    for (Mask c = 0; c <= rel.full(); ++c)
      if (rel.orth(a, c) != ((a & c) == 0)) return false;
  return true;
}

bool is_total(const FiniteRelation& rel) {
  for (Mask a = 0; a <= rel.full(); ++a)
    for (Mask c = 0; c <= rel.full(); ++c)
      if (!rel.orth(a, c)) return false;
  return true;
}

}  // namespace

TEST(Topology, ValidatesFamilies) {
  GroundSet g = GroundSet::anonymous(3);
  EXPECT_THROW(FiniteTopology(g, {0, 1, 2, 7}), PreconditionError);
  EXPECT_THROW(FiniteTopology(g, {1, 7}), InputError);
  auto t = FiniteTopology::generated(g, {1, 3});
  EXPECT_EQ(t.opens(), (std::vector<Mask>{0, 1, 3, 7}));
  EXPECT_EQ(t.closure(4), Mask{4});
  EXPECT_EQ(t.closure(1), Mask{7});
  EXPECT_EQ(t.interior(6), Mask{0});
}

TEST(Topology, ClosureMatchesDefinition) {
  std::mt19937_64 rng(20);
  for (int i = 0; i < 50; ++i) {
    auto t = random_topology(rng, 5);
    for (Mask a = 0; a <= t.full(); ++a)
      ASSERT_EQ(t.closure(a), closure_from_opens(t.opens(), t.full(), a));
  }
}

TEST(Bornology, Rules) {
  GroundSet g({"a", "b", "c"});
  EXPECT_TRUE(is_disjointness(from_bornology(Bornology::generated(g, {}))));
  auto all = from_bornology(Bornology::generated(g, {7}));
  EXPECT_TRUE(is_total(all));
  EXPECT_EQ(scale_class(all), ScaleClass::large);
  auto a = from_bornology(Bornology::generated(g, {1}));
  EXPECT_TRUE(a.orth(1, 1));
  EXPECT_FALSE(a.orth(2, 2));
  EXPECT_THROW(Bornology(g, {1, 2}), InputError);
}

TEST(Bornology, PairReductionIsExact) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 30; ++i) {
    std::size_t n = 1 + i % 8;
    auto b = random_bornology(rng, n);
    auto rel = from_bornology(b);
    for (Mask x = 0; x <= rel.full(); ++x)
      for (Mask y = 0; y <= rel.full(); ++y) ASSERT_EQ(rel.orth(x, y), bornology_rule(b, x, y));
  }
}

TEST(TopologyRelation, Examples) {
  GroundSet g = GroundSet::anonymous(3);
  EXPECT_TRUE(is_disjointness(from_topology(FiniteTopology::discrete(g))));
  EXPECT_TRUE(only_empty_pairs(from_topology(FiniteTopology(GroundSet({"a", "b"}), {0, 1, 3}))));
  EXPECT_TRUE(only_empty_pairs(from_topology(FiniteTopology::indiscrete(GroundSet::anonymous(2)))));
}

TEST(TopologyRelation, AlwaysSmallScale) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 60; ++i) {
    auto rel = from_topology(random_topology(rng, 1 + i % 7));
    EXPECT_EQ(scale_class(rel), ScaleClass::small);
  }
}

TEST(TopologyRelation, SeparationMatchesTopology) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 80; ++i) {
    auto t = random_topology(rng, 1 + i % 5);
    auto p = separation_profile(from_topology(t));
    EXPECT_EQ(p.hausdorff.holds, t.is_hausdorff());
    EXPECT_EQ(p.regular.holds, t.is_regular());
    EXPECT_EQ(p.normal.holds, t.is_normal());
    // A finite Hausdorff space is discrete.
    if (t.is_hausdorff()) EXPECT_EQ(t.opens().size(), std::size_t{1} << t.size());
  }
}

TEST(Metric, Relation) {
  auto m = FiniteMetric::on_line(GroundSet::anonymous(2), {0, 1});
  auto rel = from_metric(m);
  EXPECT_TRUE(rel.orth(1, 2));
  EXPECT_FALSE(rel.orth(1, 1));
  EXPECT_DOUBLE_EQ(*metric_separation_radius(m, 1, 2), 1.0 / 3.0);

  auto line = FiniteMetric::on_line(GroundSet::anonymous(3), {0, 1, 3});
  EXPECT_TRUE(from_metric(line).orth(1, 6));
  EXPECT_DOUBLE_EQ(*metric_separation_radius(line, 1, 6), 1.0 / 3.0);
  EXPECT_FALSE(metric_separation_radius(line, 3, 6));
}

TEST(Metric, Validation) {
  GroundSet g = GroundSet::anonymous(3);
  EXPECT_THROW(FiniteMetric(g, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), InputError);
  EXPECT_THROW(FiniteMetric(g, {{0, 1, 1}, {2, 0, 1}, {1, 1, 0}}), InputError);
}

TEST(Metric, AlwaysNormal) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 20; ++i) {
    auto rel = from_metric(random_metric(rng, 2 + i % 6));
    EXPECT_TRUE(verify_axioms(rel).passed);
    EXPECT_TRUE(is_normal(rel));
  }
}

TEST(EmbeddedPair, Examples) {
  GroundSet g = GroundSet::anonymous(3);
  auto disc = FiniteTopology::discrete(g);
  EXPECT_TRUE(is_total(from_embedded_pair({disc, 7}).ls));
  auto r = from_embedded_pair({disc, 3});
  EXPECT_TRUE(is_total(r.ls));
  EXPECT_TRUE(is_disjointness(r.ss));

  // Point 2 lies in every nonempty closure.
  auto t = FiniteTopology(g, {0, 1, 2, 3, 7});
  auto q = from_embedded_pair({t, 3});
  EXPECT_TRUE(only_empty_pairs(q.ls));
  EXPECT_THROW(from_embedded_pair({t, 0}), InputError);
}

TEST(EmbeddedPair, MatchesClosureRule) {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 40; ++i) {
    auto p = random_pair(rng, 1 + i % 5, 1 + i % 3);
    auto r = from_embedded_pair(p);
    for (Mask a = 0; a <= r.ss.full(); ++a)
      for (Mask c = 0; c <= r.ss.full(); ++c) {
        ASSERT_EQ(r.ss.orth(a, c), embedded_rule(p, false, a, c));
        ASSERT_EQ(r.ls.orth(a, c), embedded_rule(p, true, a, c));
      }
  }
}
