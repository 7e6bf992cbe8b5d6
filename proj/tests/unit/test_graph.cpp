#include <gtest/gtest.h>

#include <random>

#include "orth/ground.hpp"
#include "orth/graph.hpp"
#include "support/oracles.hpp"

using namespace orth;
using namespace orth::testing;

namespace {

std::size_t common_prefix(const VertexKey& x, const VertexKey& y) {
  std::size_t i = 0;
  while (i < x.size() && i < y.size() && x[i] == y[i]) ++i;
  return i;
}

std::vector<std::vector<int>> random_connected(std::mt19937_64& rng, int n, double extra) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  auto link = [&](int u, int v) {
    auto& au = adj[static_cast<std::size_t>(u)];
    if (u == v || std::find(au.begin(), au.end(), v) != au.end()) return;
    au.push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  };
  for (int v = 1; v < n; ++v) link(v, std::uniform_int_distribution<int>(0, v - 1)(rng));
  std::bernoulli_distribution coin(extra);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) link(u, v);
  return adj;
}

VertexSet line_where(const GraphBall& ball, std::function<bool(int)> pred) {
  return ball.select([&](const VertexKey& k) { return pred(k[0]); });
}

}  // namespace

TEST(GraphBall, Sizes) {
  auto line = GraphGenerator::line();
  EXPECT_EQ(GraphBall(*line, 10).size(), 21u);
  auto grid = GraphGenerator::grid2d();
  EXPECT_EQ(GraphBall(*grid, 4).size(), 41u);
  auto fg = GraphGenerator::free_group(2);
  GraphBall b(*fg, 6);
  EXPECT_EQ(b.size(), 1457u);
  EXPECT_EQ(b.sphere(6).count(), 4u * 243u);
  EXPECT_EQ(b.label(b.index({})), "e");
  EXPECT_EQ(b.label(b.index({1, -2})), "aB");
  auto tree = GraphGenerator::regular_tree(3);
  EXPECT_EQ(GraphBall(*tree, 5).size(), 1u + 3u * 31u);
  EXPECT_THROW(GraphGenerator::free_group(0), InputError);
  EXPECT_THROW(GraphGenerator::finite({{1}, {}}), InputError);
}

TEST(LocalMetric, MatchesFloydWarshallOnFiniteGraphs) {
  std::mt19937_64 rng(60);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 3 + trial % 10;
    auto adj = random_connected(rng, n, 0.15);
    auto d = graph_distances(adj);
    auto gen = GraphGenerator::finite(adj);
    GraphBall ball(*gen, n);
    ASSERT_TRUE(ball.exhausted());
    LocalMetric m(ball);
    EXPECT_TRUE(m.all_certified());
    for (std::size_t u = 0; u < ball.size(); ++u)
      for (std::size_t v = 0; v < ball.size(); ++v)
        ASSERT_EQ(m.distance(u, v), d[static_cast<std::size_t>(ball.key(u)[0])]
                                     [static_cast<std::size_t>(ball.key(v)[0])]);
  }
}

TEST(Gromov, PathExamples) {
  auto line = GraphGenerator::line();
  GraphBall ball(*line, 8);
  LocalMetric m(ball);
  auto at = [&](int x) { return ball.index({x}); };
  EXPECT_EQ(gromov_product(m, at(-3), at(4), at(0)), Rational(0));
  EXPECT_EQ(gromov_product(m, at(2), at(5), at(0)), Rational(2));
  for (int x = -8; x <= 8; ++x) EXPECT_EQ(gromov_product(m, at(x), at(x), at(1)), Rational(std::abs(x - 1)));
}

TEST(Gromov, SymmetricAndNonNegative) {
  auto grid = GraphGenerator::grid2d();
  GraphBall ball(*grid, 4);
  LocalMetric m(ball);
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
  for (int i = 0; i < 500; ++i) {
    auto x = pick(rng), y = pick(rng), a = pick(rng);
    if (!m.certified(x, y) || !m.certified(x, a) || !m.certified(y, a)) continue;
    auto g = gromov_product(m, x, y, a);
    EXPECT_EQ(g, gromov_product(m, y, x, a));
    EXPECT_GE(g, Rational(0));
    EXPECT_LE(g, Rational(std::min(m.distance(x, a), m.distance(y, a))));
  }
}

TEST(Gromov, FreeGroupPrefixFormula) {
  auto fg = GraphGenerator::free_group(2);
  GraphBall ball(*fg, 6);
  LocalMetric m(ball);
  std::size_t e = ball.index({});
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
  for (int i = 0; i < 20000; ++i) {
    auto x = pick(rng), y = pick(rng);
    auto lcp = common_prefix(ball.key(x), ball.key(y));
    ASSERT_EQ(gromov_product(m, x, y, e), Rational(static_cast<long long>(lcp)));
    ASSERT_EQ(m.distance(x, y),
              static_cast<int>(ball.key(x).size() + ball.key(y).size() - 2 * lcp));
  }
}

TEST(Delta, TreesAreZero) {
  auto tree = GraphGenerator::regular_tree(3);
  GraphBall tb(*tree, 5);
  LocalMetric tm(tb);
  EXPECT_EQ(delta_estimate(tm, tb.index({})).delta, Rational(0));
  auto line = GraphGenerator::line();
  GraphBall lb(*line, 12);
  LocalMetric lm(lb);
  EXPECT_EQ(delta_estimate(lm, lb.index({3})).delta, Rational(0));
}

TEST(Delta, FourCycle) {
  auto cycle = GraphGenerator::finite({{1, 3}, {0, 2}, {1, 3}, {2, 0}});
  GraphBall ball(*cycle, 3);
  LocalMetric m(ball);
  auto est = delta_estimate(m, ball.index({0}));
  EXPECT_EQ(est.delta, Rational(4));
  EXPECT_EQ(delta_by_definition(graph_distances({{1, 3}, {0, 2}, {1, 3}, {2, 0}}), 0), 4);
  ASSERT_TRUE(est.witness);
}

TEST(Delta, MatchesDefinitionOnFiniteGraphs) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + trial % 9;
    auto adj = random_connected(rng, n, 0.2);
    auto d = graph_distances(adj);
    auto gen = GraphGenerator::finite(adj);
    GraphBall ball(*gen, n);
    LocalMetric m(ball);
    auto est = delta_estimate(m, ball.index({0}));
    ASSERT_EQ(est.delta, Rational(delta_by_definition(d, 0)));
  }
}

TEST(Delta, GridGrowsWithRadius) {
  auto grid = GraphGenerator::grid2d();
  Rational prev(0);
  for (int r = 3; r <= 8; ++r) {
    GraphBall ball(*grid, r);
    LocalMetric m(ball);
    auto est = delta_estimate(m, ball.index({0, 0}));
    EXPECT_GE(est.delta, prev) << r;
    prev = est.delta;
  }
  EXPECT_GT(prev, Rational(4));
}

TEST(HyperbolicOrth, Examples) {
  auto fg = GraphGenerator::free_group(2);
  GraphBall ball(*fg, 4);
  LocalMetric m(ball);
  std::size_t e = ball.index({});
  auto starts = [&](int letter) {
    return ball.select([=](const VertexKey& k) { return !k.empty() && k[0] == letter; });
  };
  auto v = hyperbolic_orth(m, starts(1), starts(2), e, Rational(1));
  EXPECT_EQ(v.sup, Rational(0));
  EXPECT_TRUE(v.orthogonal);
  auto same = hyperbolic_orth(m, starts(1), starts(1), e, Rational(2));
  EXPECT_EQ(same.sup, Rational(4));
  EXPECT_FALSE(same.orthogonal);
  EXPECT_TRUE(hyperbolic_orth(m, ball.empty_set(), starts(1), e, Rational(1)).degenerate);

  auto line = GraphGenerator::line();
  GraphBall lb(*line, 10);
  LocalMetric lm(lb);
  auto pos = line_where(lb, [](int x) { return x > 0; });
  auto neg = line_where(lb, [](int x) { return x < 0; });
  EXPECT_EQ(hyperbolic_orth(lm, pos, neg, lb.index({0}), Rational(1)).sup, Rational(0));
}

TEST(Freudenthal, LineAndGrid) {
  auto line = GraphGenerator::line();
  GraphBall lb(*line, 50);
  auto parts = freudenthal(lb, 5);
  EXPECT_EQ(parts.components.size(), 2u);
  EXPECT_EQ(parts.outer_count(), 2u);
  auto pos = line_where(lb, [](int x) { return x > 0; });
  auto neg = line_where(lb, [](int x) { return x < 0; });
  auto v = freudenthal_orth(lb, pos, neg, 5);
  EXPECT_TRUE(v.separated);
  EXPECT_EQ(v.grade, Evidence::certified);
  EXPECT_FALSE(freudenthal_orth(lb, pos, pos, 5).separated);
  EXPECT_TRUE(freudenthal_orth(lb, line_where(lb, [](int x) { return x == 2; }), neg, 5).vacuous);

  auto grid = GraphGenerator::grid2d();
  GraphBall gb(*grid, 20);
  EXPECT_EQ(freudenthal(gb, 3).outer_count(), 1u);
  auto right = gb.select([](const VertexKey& k) { return k[0] > 0 && k[1] == 0; });
  auto left = gb.select([](const VertexKey& k) { return k[0] < 0 && k[1] == 0; });
  auto g = freudenthal_orth(gb, right, left, 3);
  EXPECT_FALSE(g.separated);
  EXPECT_EQ(g.grade, Evidence::certified);
}

TEST(Freudenthal, TreeCensusAndMonotonicity) {
  auto tree = GraphGenerator::regular_tree(3);
  GraphBall ball(*tree, 6);
  std::size_t prev = 0;
  for (int k = 1; k <= 5; ++k) {
    auto count = freudenthal(ball, k).outer_count();
    EXPECT_EQ(count, 3u << (k - 1)) << k;
    EXPECT_GE(count, prev);
    prev = count;
  }
  EXPECT_THROW(freudenthal(ball, 6), InputError);
}

TEST(Ends, LineGridTree) {
  auto line = GraphGenerator::line();
  auto l = end_count(GraphBall(*line, 40));
  EXPECT_EQ(l.ends, 2u);
  EXPECT_TRUE(l.stabilized);
  auto grid = GraphGenerator::grid2d();
  auto g = end_count(GraphBall(*grid, 20));
  EXPECT_EQ(g.ends, 1u);
  EXPECT_TRUE(g.stabilized);
  auto tree = GraphGenerator::regular_tree(3);
  EXPECT_FALSE(end_count(GraphBall(*tree, 8)).stabilized);
}

TEST(Higson, Evidence) {
  auto line = GraphGenerator::line();
  GraphBall ball(*line, 30);
  auto pos = line_where(ball, [](int x) { return x > 0; });
  auto neg = line_where(ball, [](int x) { return x < 0; });
  EXPECT_EQ(higson_evidence(ball, pos, neg, 3, 10).verdict, HigsonVerdict::separated);
  auto evens = line_where(ball, [](int x) { return x % 2 == 0; });
  auto odds = line_where(ball, [](int x) { return x % 2 != 0; });
  auto eo = higson_evidence(ball, evens, odds, 1, 5);
  EXPECT_EQ(eo.verdict, HigsonVerdict::not_separated);
  EXPECT_EQ(eo.deepest, 30);
  auto near = line_where(ball, [](int x) { return x > 0 && x <= 20; });
  auto tight = line_where(ball, [](int x) { return x >= 22 || x < 0; });
  EXPECT_EQ(higson_evidence(ball, near, tight, 1, 5).verdict, HigsonVerdict::inconclusive);
  EXPECT_THROW(higson_evidence(ball, pos, neg, 20, 10), InputError);
}
