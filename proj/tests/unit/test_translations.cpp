#include <gtest/gtest.h>

#include "orth/models.hpp"
#include "orth/translations.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace orth;
using namespace orth::testing;

namespace {

FiniteRelation line_metric(std::vector<double> coords) {
  return from_metric(FiniteMetric::on_line(GroundSet::anonymous(coords.size()), coords));
}

std::vector<FiniteRelation> normal_small_scale(std::uint64_t seed, std::size_t count) {
  std::vector<FiniteRelation> out;
  for (const auto& m : finite_corpus(seed, count, 1, 5))
    if (scale_class(m.rel) == ScaleClass::small && is_normal(m.rel)) out.push_back(m.rel);
  return out;
}

}  // namespace

TEST(Proximity, MetricExample) {
  auto rel = line_metric({0, 1, 3});
  auto p = orth_to_proximity(rel);
  for (Mask a = 0; a < 8; ++a)
    for (Mask c = 0; c < 8; ++c) EXPECT_EQ(p.near(a, c), (a & c) != 0);
  EXPECT_TRUE(proximity_to_orth(p).same_table(rel));
  EXPECT_TRUE(check_proximity_axioms(p).passed());
}

TEST(Proximity, RoundTripOnNormalCorpus) {
  auto rels = normal_small_scale(40, 80);
  ASSERT_GT(rels.size(), 10u);
  for (const auto& rel : rels) {
    auto p = orth_to_proximity(rel);
    auto suite = check_proximity_axioms(p);
    for (const auto& a : suite.axioms) EXPECT_TRUE(a.holds) << a.name;
    EXPECT_TRUE(proximity_to_orth(p).same_table(rel));
  }
}

TEST(Proximity, RejectsNonNormalRelations) {
  EXPECT_THROW(orth_to_proximity(path_relation(4)), PreconditionError);
  auto big = from_bornology(Bornology::generated(GroundSet::anonymous(3), {1}));
  EXPECT_THROW(orth_to_proximity(big), PreconditionError);
}

TEST(Proximity, MutationsAreDetected) {
  auto base = orth_to_proximity(line_metric({0, 1, 3}));
  GroundSet g = base.ground();
  auto mutate = [&](auto&& f) {
    PairTable t = base.table();
    f(t);
    return Proximity(g, t);
  };
  auto asym = mutate([](PairTable& t) { t.set(1, 6, true); });
  EXPECT_FALSE(check_proximity_axioms(asym).at("1").holds);
  auto empty_near = mutate([](PairTable& t) {
    t.set(0, 7, true);
    t.set(7, 0, true);
  });
  EXPECT_FALSE(check_proximity_axioms(empty_near).at("2").holds);
  auto meeting = mutate([](PairTable& t) {
    t.set(3, 6, false);
    t.set(6, 3, false);
  });
  EXPECT_FALSE(check_proximity_axioms(meeting).at("3").holds);
  auto additive = mutate([](PairTable& t) {
    t.set(1, 6, true);
    t.set(6, 1, true);
  });
  EXPECT_FALSE(check_proximity_axioms(additive).at("4").holds);
}

TEST(Neighbourhood, DisjointnessOperator) {
  auto rel = line_metric({0, 1, 3});
  auto op = orth_to_nbhd(rel);
  for (Mask a = 0; a < 8; ++a)
    for (Mask u = 0; u < 8; ++u) EXPECT_EQ(op.precedes(a, u), included(a, u));
  auto suite = check_operator_axioms(op);
  EXPECT_TRUE(suite.passed());
}

TEST(Neighbourhood, RoundTripAndDerivedAxioms) {
  for (const auto& m : finite_corpus(41, 80, 1, 5)) {
    if (scale_class(m.rel) != ScaleClass::small) continue;
    auto op = orth_to_nbhd(m.rel);
    auto suite = check_operator_axioms(op);
    for (const char* name : {"N0", "N1", "N2", "N3", "N0'", "N2'", "N3'"})
      EXPECT_TRUE(suite.at(name).holds) << m.label << " " << name;
    EXPECT_EQ(suite.at("N4").holds, orthogonal_pairs_span(m.rel)) << m.label;
    EXPECT_TRUE(nbhd_to_orth(op).same_table(m.rel)) << m.label;
  }
}

TEST(Neighbourhood, N4FailsOffNormal) {
  auto op = orth_to_nbhd(path_relation(4));
  EXPECT_FALSE(check_operator_axioms(op).at("N4").holds);
  EXPECT_TRUE(check_operator_axioms(orth_to_nbhd(line_metric({0, 2, 5, 6}))).at("N4").holds);
}

TEST(Neighbourhood, BrokenOperatorsAreRejected) {
  auto op = orth_to_nbhd(line_metric({0, 1, 3}));
  PairTable t = op.table();
  t.set(1, 0, true);  // {0} ≺ ∅
  NeighborhoodOperator bad(op.ground(), t);
  EXPECT_FALSE(check_operator_axioms(bad).passed());
  EXPECT_THROW(nbhd_to_orth(bad), PreconditionError);
}

TEST(Neighbourhood, SubOperator) {
  auto op = orth_to_nbhd(line_metric({0, 1, 3}));
  auto same = sub_operator(op, 7);
  EXPECT_EQ(same.table(), op.table());
  auto sub = sub_operator(op, 3);
  EXPECT_TRUE(sub.precedes(1, 1));
  for (Mask s = 0; s < 4; ++s)
    for (Mask t = 0; t < 4; ++t)
      if (sub.precedes(s, t)) EXPECT_TRUE(included(s, t));
}

TEST(Resemblance, FiniteCases) {
  GroundSet g = GroundSet::anonymous(4);
  FiniteResemblance emptiness{g, [](Mask a, Mask c) { return (a == 0) == (c == 0); }};
  auto suite = check_resemblance(emptiness, 500, 7);
  EXPECT_TRUE(suite.passed());
  auto rel = resemblance_to_orth(emptiness);
  EXPECT_TRUE(verify_axioms(rel).passed);
  for (Mask a = 0; a <= g.full(); ++a)
    for (Mask c = 0; c <= g.full(); ++c) EXPECT_TRUE(rel.orth(a, c));

  FiniteResemblance equality{g, [](Mask a, Mask c) { return a == c; }};
  EXPECT_THROW(resemblance_to_orth(equality), PreconditionError);

  FiniteResemblance total{g, [](Mask, Mask) { return true; }};
  EXPECT_FALSE(check_resemblance(total, 500, 7).at("splitting").holds);
}

TEST(Resemblance, HausdorffDistance) {
  EXPECT_EQ(hausdorff_distance(EPS::naturals(), EPS::right_ray(5)), Int{5});
  EXPECT_EQ(hausdorff_distance(EPS::residue_class(2, 0), EPS::integers()), Int{1});
  EXPECT_FALSE(hausdorff_distance(EPS::naturals(), EPS::integers()));
  EXPECT_EQ(hausdorff_distance(EPS(), EPS()), Int{0});
}

TEST(Resemblance, LineMatchesMetricRelation) {
  ResemblanceRelation rel(hausdorff_resemblance());
  for (const auto& [a, c] : line_pairs(42, 300)) {
    EXPECT_EQ(rel.orth(a.set, c.set), ls_orth_metric(a.set, c.set))
        << a.set.to_string() << " / " << c.set.to_string();
    EXPECT_EQ(rel.orth(a.set, c.set), line_metric_rule(a.spec, c.spec));
  }
  EXPECT_TRUE(rel.is_bounded(EPS::finite({-3, 9})));
  EXPECT_FALSE(rel.is_bounded(EPS::naturals()));
}

TEST(Resemblance, LineAxiomsOnCorpus) {
  std::vector<EPS> corpus;
  std::mt19937_64 rng(43);
  for (int i = 0; i < 60; ++i) corpus.push_back(random_line_set(rng).set);
  auto suite = check_resemblance(hausdorff_resemblance(), corpus, 2000, 44);
  for (const auto& a : suite.axioms) EXPECT_TRUE(a.holds) << a.name;
}
