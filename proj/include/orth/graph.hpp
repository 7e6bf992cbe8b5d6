#pragma once

#include <array>
#include <boost/dynamic_bitset.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace orth {

using VertexKey = std::vector<std::int32_t>;
using VertexSet = boost::dynamic_bitset<>;
using Rational = boost::rational<long long>;

// A locally finite graph given by a neighbour rule.
class GraphGenerator {
 public:
  virtual ~GraphGenerator() = default;
  virtual std::string name() const = 0;
  virtual VertexKey origin() const = 0;
  virtual std::vector<VertexKey> neighbors(const VertexKey& v) const = 0;
  virtual std::string label(const VertexKey& v) const;
  // Balls about the origin contain a geodesic between any two of their vertices.
  virtual bool convex_balls() const { return false; }
  virtual bool is_tree() const { return false; }

  static std::unique_ptr<GraphGenerator> line();
  static std::unique_ptr<GraphGenerator> grid2d();
  // Cayley graph of the free group on k generators; words are letters ±1..±k.
  static std::unique_ptr<GraphGenerator> free_group(int k);
  static std::unique_ptr<GraphGenerator> regular_tree(int degree);
  // Symmetric adjacency lists; vertex i has key {i}.
  static std::unique_ptr<GraphGenerator> finite(std::vector<std::vector<int>> adjacency,
                                                int origin = 0);
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const;
};

// BFS ball of radius R about the generator's origin, with induced edges.
class GraphBall {
 public:
  static constexpr std::size_t kMaxVertices = 200000;

  GraphBall(const GraphGenerator& gen, int radius);

  int radius() const { return radius_; }
  std::size_t size() const { return keys_.size(); }
  const VertexKey& key(std::size_t v) const { return keys_.at(v); }
  std::optional<std::size_t> find(const VertexKey& k) const;
  std::size_t index(const VertexKey& k) const;  // throws InputError if absent
  int depth(std::size_t v) const { return depth_.at(v); }
  std::size_t degree(std::size_t v) const { return offsets_[v + 1] - offsets_[v]; }
  template <class F>
  void for_each_neighbor(std::size_t v, F&& f) const {
    for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) f(adj_[i]);
  }
  // No vertex lies at distance R + 1: the ball is the whole component of the origin.
  bool exhausted() const { return exhausted_; }
  bool convex() const { return convex_; }
  bool tree() const { return tree_; }
  const std::string& generator_name() const { return name_; }
  std::string label(std::size_t v) const { return labels_.at(v); }

  VertexSet empty_set() const { return VertexSet(size()); }
  VertexSet select(const std::function<bool(const VertexKey&)>& pred) const;
  VertexSet sphere(int r) const;
  // BFS distances inside the ball from every vertex of s, truncated at max_steps (−1 beyond).
  std::vector<int> distances_from(const VertexSet& s, int max_steps) const;
  VertexSet dilate(const VertexSet& s, int r) const;

 private:
  int radius_;
  bool exhausted_ = true, convex_ = false, tree_ = false;
  std::string name_;
  std::vector<VertexKey> keys_;
  std::vector<std::string> labels_;
  std::vector<int> depth_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> adj_;
  std::unordered_map<VertexKey, std::size_t, VertexKeyHash> lookup_;
};

// All-pairs distances inside the ball, with the certification rule for each pair.
class LocalMetric {
 public:
  static constexpr std::size_t kMaxVertices = 4096;

  explicit LocalMetric(const GraphBall& ball);
  int distance(std::size_t u, std::size_t v) const { return d_[u * n_ + v]; }
  // Equals the distance in the full graph.
  bool certified(std::size_t u, std::size_t v) const;
  bool all_certified() const { return all_certified_; }
  std::size_t size() const { return n_; }
  const GraphBall& ball() const { return *ball_; }

 private:
  const GraphBall* ball_;
  std::size_t n_;
  std::vector<std::int16_t> d_;
  bool all_certified_;
};

// ½(d(x,a) + d(y,a) − d(x,y)); throws PreconditionError on an uncertified pair.
Rational gromov_product(const LocalMetric& m, std::size_t x, std::size_t y, std::size_t a);

struct DeltaEstimate {
  Rational delta;  // 4 · max(min(⟨x,z⟩, ⟨z,y⟩) − ⟨x,y⟩), at least 0
  std::optional<std::array<std::size_t, 3>> witness;  // (x, y, z) attaining the maximum
  std::uint64_t triples = 0;
  std::uint64_t skipped_uncertified = 0;
};

DeltaEstimate delta_estimate(const LocalMetric& m, std::size_t a);

enum class Evidence { certified, evidence, inconclusive };
std::string to_string(Evidence e);

struct HyperbolicVerdict {
  Rational sup;          // sup of ⟨a, c⟩_p over A × C
  bool orthogonal = true;  // sup < r
  bool degenerate = false;  // A or C empty
  std::uint64_t skipped_uncertified = 0;
};

HyperbolicVerdict hyperbolic_orth(const LocalMetric& m, const VertexSet& a, const VertexSet& c,
                                  std::size_t p, Rational r);

struct FreudenthalComponents {
  int k = 0;
  std::vector<VertexSet> components;  // of {v : depth(v) ≥ k}
  std::vector<bool> reaches_sphere;   // touches depth R
  std::size_t outer_count() const;
};

// Removes the open ball {depth < k}.
FreudenthalComponents freudenthal(const GraphBall& ball, int k);

struct FreudenthalVerdict {
  bool separated = true;
  bool vacuous = false;  // A or C lies inside the removed ball
  Evidence grade = Evidence::evidence;
};

FreudenthalVerdict freudenthal_orth(const GraphBall& ball, const VertexSet& a, const VertexSet& c,
                                    int k);

struct EndProfile {
  std::vector<std::pair<int, std::size_t>> counts;  // (k, components reaching the sphere)
  bool stabilized = false;  // constant over the top half of the k-range
  std::size_t ends = 0;     // the last count
};

// k over [max(1, R/10), R/2].
EndProfile end_count(const GraphBall& ball);

enum class HigsonVerdict { separated, not_separated, inconclusive };
std::string to_string(HigsonVerdict v);

struct HigsonEvidence {
  HigsonVerdict verdict = HigsonVerdict::inconclusive;
  int deepest = -1;  // largest depth met by the intersection of the dilations
};

// Requires r + k < R.
HigsonEvidence higson_evidence(const GraphBall& ball, const VertexSet& a, const VertexSet& c,
                               int r, int k);

}  // namespace orth
