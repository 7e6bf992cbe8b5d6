#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "orth/line.hpp"
#include "orth/models.hpp"
#include "orth/relation.hpp"

namespace orth::testing {

enum class ModelKind { bornology, topology, metric, embedded_ss, embedded_ls };

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::bornology: return "bornology";
    case ModelKind::topology: return "topology";
    case ModelKind::metric: return "metric";
    case ModelKind::embedded_ss: return "embedded-ss";
    case ModelKind::embedded_ls: return "embedded-ls";
  }
  return "?";
}

struct CorpusModel {
  ModelKind kind;
  std::string label;
  FiniteRelation rel;
  std::optional<Bornology> bornology;
  std::optional<FiniteTopology> topology;  // the topology, or the ambient space of a pair
  std::optional<EmbeddedPair> pair;
};

inline Mask random_mask(std::mt19937_64& rng, std::size_t n, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  Mask m = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (coin(rng)) m |= bit(i);
  return m;
}

inline Bornology random_bornology(std::mt19937_64& rng, std::size_t n) {
  std::vector<Mask> seeds;
  std::size_t k = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
  for (std::size_t i = 0; i < k; ++i) seeds.push_back(random_mask(rng, n, 0.35));
  return Bornology::generated(GroundSet::anonymous(n), seeds);
}

inline FiniteTopology random_topology(std::mt19937_64& rng, std::size_t n) {
  std::vector<Mask> sub;
  std::size_t k = std::uniform_int_distribution<std::size_t>(0, n + 2)(rng);
  for (std::size_t i = 0; i < k; ++i) sub.push_back(random_mask(rng, n, 0.4));
  // Some singletons keep the family away from the indiscrete end.
  for (std::size_t i = 0; i < n; ++i)
    if (std::bernoulli_distribution(0.3)(rng)) sub.push_back(bit(i));
  return FiniteTopology::generated(GroundSet::anonymous(n), sub);
}

// Shortest-path metric of a random positively weighted complete graph.
inline FiniteMetric random_metric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> w(1, 9);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = w(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return FiniteMetric(GroundSet::anonymous(n), d);
}

inline EmbeddedPair random_pair(std::mt19937_64& rng, std::size_t n_inner, std::size_t n_corona) {
  std::size_t n = n_inner + n_corona;
  auto t = random_topology(rng, n);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  Mask inner = 0;
  for (std::size_t i = 0; i < n_inner; ++i) inner |= bit(idx[i]);
  return {t, inner};
}

inline CorpusModel make_model(ModelKind kind, std::mt19937_64& rng, std::size_t n) {
  CorpusModel m{kind, "", {}, {}, {}, {}};
  switch (kind) {
    case ModelKind::bornology:
      m.bornology = random_bornology(rng, n);
      m.rel = from_bornology(*m.bornology);
      break;
    case ModelKind::topology:
      m.topology = random_topology(rng, n);
      m.rel = from_topology(*m.topology);
      break;
    case ModelKind::metric:
      m.rel = from_metric(random_metric(rng, n));
      break;
    case ModelKind::embedded_ss:
    case ModelKind::embedded_ls: {
      std::size_t corona = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
      m.pair = random_pair(rng, n, corona);
      m.topology = m.pair->ambient;
      auto rels = from_embedded_pair(*m.pair);
      m.rel = kind == ModelKind::embedded_ss ? rels.ss : rels.ls;
      break;
    }
  }
  m.label = to_string(kind) + "/n=" + std::to_string(n);
  return m;
}

// Cycles through the constructors with sizes in [min_n, max_n].
inline std::vector<CorpusModel> finite_corpus(std::uint64_t seed, std::size_t count,
                                              std::size_t min_n, std::size_t max_n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(min_n, max_n);
  const ModelKind kinds[] = {ModelKind::bornology, ModelKind::topology, ModelKind::metric,
                             ModelKind::embedded_ss, ModelKind::embedded_ls};
  std::vector<CorpusModel> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto m = make_model(kinds[i % 5], rng, size(rng));
    m.label += "#" + std::to_string(i);
    out.push_back(std::move(m));
  }
  return out;
}

// {x} ⊥ {y} iff |x − y| ≥ 2 on a path: not normal.
inline FiniteRelation path_relation(std::size_t n) {
  return FiniteRelation::from_point_rule(
      GroundSet::anonymous(n),
      [](std::size_t x, std::size_t y) { return (x > y ? x - y : y - x) >= 2; }, "path");
}

// Symbolic sets: unions of progressions and points, kept alongside their description so that
// membership can be evaluated without the canonical form.
struct LineSample {
  LineSetSpec spec;
  EPS set;
};

inline LineSetSpec random_spec(std::mt19937_64& rng) {
  LineSetSpec s;
  std::uniform_int_distribution<int> terms(0, 3), points(0, 4);
  std::uniform_int_distribution<Int> start(-60, 60), step(1, 12), pt(-40, 40);
  int t = terms(rng);
  for (int i = 0; i < t; ++i)
    s.terms.push_back({start(rng), step(rng),
                       std::bernoulli_distribution(0.5)(rng) ? Direction::right : Direction::left});
  int p = points(rng);
  for (int i = 0; i < p; ++i) s.finite.push_back(pt(rng));
  return s;
}

inline LineSample random_line_set(std::mt19937_64& rng) {
  auto spec = random_spec(rng);
  return {spec, EPS::from_spec(spec)};
}

inline std::vector<std::pair<LineSample, LineSample>> line_pairs(std::uint64_t seed,
                                                                 std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<LineSample, LineSample>> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto a = random_line_set(rng);
    auto c = random_line_set(rng);
    out.emplace_back(std::move(a), std::move(c));
  }
  return out;
}

}  // namespace orth::testing
