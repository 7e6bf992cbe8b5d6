#include "orth/graph.hpp"

#include <algorithm>
#include <deque>

#include "orth/ground.hpp"

namespace orth {

std::size_t VertexKeyHash::operator()(const VertexKey& k) const {
  std::size_t h = k.size();
  for (auto x : k) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::string GraphGenerator::label(const VertexKey& v) const {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

namespace {

class LineGraph : public GraphGenerator {
 public:
  std::string name() const override { return "line"; }
  VertexKey origin() const override { return {0}; }
  std::vector<VertexKey> neighbors(const VertexKey& v) const override {
    return {{v[0] - 1}, {v[0] + 1}};
  }
  std::string label(const VertexKey& v) const override { return std::to_string(v[0]); }
  bool convex_balls() const override { return true; }
  bool is_tree() const override { return true; }
};

class GridGraph : public GraphGenerator {
 public:
  std::string name() const override { return "grid2d"; }
  VertexKey origin() const override { return {0, 0}; }
  std::vector<VertexKey> neighbors(const VertexKey& v) const override {
    return {{v[0] - 1, v[1]}, {v[0] + 1, v[1]}, {v[0], v[1] - 1}, {v[0], v[1] + 1}};
  }
  bool convex_balls() const override { return true; }
};

class FreeGroupGraph : public GraphGenerator {
 public:
  explicit FreeGroupGraph(int k) : k_(k) {
    if (k < 1 || k > 26) throw InputError("free group rank must be in 1..26");
  }
  std::string name() const override { return "free-group(" + std::to_string(k_) + ")"; }
  VertexKey origin() const override { return {}; }
  std::vector<VertexKey> neighbors(const VertexKey& v) const override {
    std::vector<VertexKey> out;
    for (int g = 1; g <= k_; ++g)
      for (int letter : {g, -g}) {
        VertexKey w = v;
        if (!w.empty() && w.back() == -letter)
          w.pop_back();
        else
          w.push_back(letter);
        out.push_back(std::move(w));
      }
    return out;
  }
  std::string label(const VertexKey& v) const override {
    if (v.empty()) return "e";
    std::string s;
    for (int letter : v)
      s += static_cast<char>(letter > 0 ? 'a' + letter - 1 : 'A' - letter - 1);
    return s;
  }
  bool convex_balls() const override { return true; }
  bool is_tree() const override { return true; }

 private:
  int k_;
};

class RegularTree : public GraphGenerator {
 public:
  explicit RegularTree(int degree) : deg_(degree) {
    if (degree < 2) throw InputError("regular tree degree must be at least 2");
  }
  std::string name() const override { return "regular-tree(" + std::to_string(deg_) + ")"; }
  VertexKey origin() const override { return {}; }
  std::vector<VertexKey> neighbors(const VertexKey& v) const override {
    std::vector<VertexKey> out;
    if (!v.empty()) out.emplace_back(v.begin(), v.end() - 1);
    int children = v.empty() ? deg_ : deg_ - 1;
    for (int c = 0; c < children; ++c) {
      VertexKey w = v;
      w.push_back(c);
      out.push_back(std::move(w));
    }
    return out;
  }
  bool convex_balls() const override { return true; }
  bool is_tree() const override { return true; }

 private:
  int deg_;
};

class FiniteGraph : public GraphGenerator {
 public:
  FiniteGraph(std::vector<std::vector<int>> adj, int origin) : adj_(std::move(adj)), o_(origin) {
    int n = static_cast<int>(adj_.size());
    if (o_ < 0 || o_ >= n) throw InputError("origin outside the finite graph");
    for (int u = 0; u < n; ++u)
      for (int v : adj_[u]) {
        if (v < 0 || v >= n) throw InputError("adjacency names a missing vertex");
        if (std::find(adj_[v].begin(), adj_[v].end(), u) == adj_[v].end())
          throw InputError("adjacency is not symmetric at " + std::to_string(u) + "-" +
                           std::to_string(v));
      }
  }
  std::string name() const override { return "finite"; }
  VertexKey origin() const override { return {o_}; }
  std::vector<VertexKey> neighbors(const VertexKey& v) const override {
    std::vector<VertexKey> out;
    for (int w : adj_.at(static_cast<std::size_t>(v[0]))) out.push_back({w});
    return out;
  }
  std::string label(const VertexKey& v) const override { return std::to_string(v[0]); }

 private:
  std::vector<std::vector<int>> adj_;
  int o_;
};

}  // namespace

std::unique_ptr<GraphGenerator> GraphGenerator::line() { return std::make_unique<LineGraph>(); }
std::unique_ptr<GraphGenerator> GraphGenerator::grid2d() { return std::make_unique<GridGraph>(); }
std::unique_ptr<GraphGenerator> GraphGenerator::free_group(int k) {
  return std::make_unique<FreeGroupGraph>(k);
}
std::unique_ptr<GraphGenerator> GraphGenerator::regular_tree(int degree) {
  return std::make_unique<RegularTree>(degree);
}
std::unique_ptr<GraphGenerator> GraphGenerator::finite(std::vector<std::vector<int>> adjacency,
                                                       int origin) {
  return std::make_unique<FiniteGraph>(std::move(adjacency), origin);
}

GraphBall::GraphBall(const GraphGenerator& gen, int radius)
    : radius_(radius), convex_(gen.convex_balls()), tree_(gen.is_tree()), name_(gen.name()) {
  if (radius < 0) throw InputError("ball radius must be nonnegative");
  std::vector<std::vector<std::size_t>> adj;
  auto add = [&](VertexKey k, int d) {
    lookup_.emplace(k, keys_.size());
    labels_.push_back(gen.label(k));
    keys_.push_back(std::move(k));
    depth_.push_back(d);
    adj.emplace_back();
  };
  add(gen.origin(), 0);
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    for (auto& w : gen.neighbors(keys_[i])) {
      auto it = lookup_.find(w);
      if (it == lookup_.end()) {
        if (depth_[i] == radius_) {
          exhausted_ = false;
          continue;
        }
        if (keys_.size() >= kMaxVertices)
          throw BudgetExceeded("ball vertices", keys_.size() + 1, kMaxVertices);
        add(std::move(w), depth_[i] + 1);
        adj[i].push_back(keys_.size() - 1);
      } else if (std::find(adj[i].begin(), adj[i].end(), it->second) == adj[i].end()) {
        adj[i].push_back(it->second);
      }
    }
  }
  offsets_.assign(1, 0);
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    adj_.insert(adj_.end(), row.begin(), row.end());
    offsets_.push_back(adj_.size());
  }
}

std::optional<std::size_t> GraphBall::find(const VertexKey& k) const {
  auto it = lookup_.find(k);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t GraphBall::index(const VertexKey& k) const {
  auto v = find(k);
  if (!v) throw InputError("vertex outside the ball");
  return *v;
}

VertexSet GraphBall::select(const std::function<bool(const VertexKey&)>& pred) const {
  VertexSet s(size());
  for (std::size_t v = 0; v < size(); ++v)
    if (pred(keys_[v])) s.set(v);
  return s;
}

VertexSet GraphBall::sphere(int r) const {
  VertexSet s(size());
  for (std::size_t v = 0; v < size(); ++v)
    if (depth_[v] == r) s.set(v);
  return s;
}

std::vector<int> GraphBall::distances_from(const VertexSet& s, int max_steps) const {
  std::vector<int> d(size(), -1);
  std::deque<std::size_t> queue;
  for (auto v = s.find_first(); v != VertexSet::npos; v = s.find_next(v)) {
    d[v] = 0;
    queue.push_back(v);
  }
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    if (d[u] == max_steps) continue;
    for_each_neighbor(u, [&](std::size_t w) {
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        queue.push_back(w);
      }
    });
  }
  return d;
}

VertexSet GraphBall::dilate(const VertexSet& s, int r) const {
  auto d = distances_from(s, r);
  VertexSet out(size());
  for (std::size_t v = 0; v < size(); ++v)
    if (d[v] >= 0) out.set(v);
  return out;
}

LocalMetric::LocalMetric(const GraphBall& ball) : ball_(&ball), n_(ball.size()) {
  if (n_ > kMaxVertices) throw BudgetExceeded("metric vertices", n_, kMaxVertices);
  d_.assign(n_ * n_, -1);
  std::vector<std::size_t> queue(n_);
  for (std::size_t s = 0; s < n_; ++s) {
    std::int16_t* row = &d_[s * n_];
    std::size_t head = 0, tail = 0;
    row[s] = 0;
    queue[tail++] = s;
    while (head < tail) {
      std::size_t u = queue[head++];
      ball.for_each_neighbor(u, [&](std::size_t w) {
        if (row[w] < 0) {
          row[w] = static_cast<std::int16_t>(row[u] + 1);
          queue[tail++] = w;
        }
      });
    }
  }
  all_certified_ = ball.exhausted() || ball.convex();
  if (!all_certified_) {
    all_certified_ = true;
    for (std::size_t u = 0; u < n_ && all_certified_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (!certified(u, v)) {
          all_certified_ = false;
          break;
        }
  }
}

bool LocalMetric::certified(std::size_t u, std::size_t v) const {
  if (ball_->exhausted() || ball_->convex()) return true;
  int du = ball_->depth(u), dv = ball_->depth(v), r = ball_->radius();
  return du + dv <= r || distance(u, v) <= 2 * r - du - dv;
}

Rational gromov_product(const LocalMetric& m, std::size_t x, std::size_t y, std::size_t a) {
  for (auto [u, v] : {std::pair{x, a}, std::pair{y, a}, std::pair{x, y}})
    if (!m.certified(u, v))
      throw PreconditionError("distance between " + m.ball().label(u) + " and " +
                                  m.ball().label(v) + " may leave the ball",
                              {});
  return Rational(m.distance(x, a) + m.distance(y, a) - m.distance(x, y), 2);
}

DeltaEstimate delta_estimate(const LocalMetric& m, std::size_t a) {
  std::size_t n = m.size();
  if (n < 3) throw InputError("ball has fewer than 3 vertices");
  // doubled products 2⟨x, y⟩_a
  std::vector<std::int16_t> g(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      g[x * n + y] =
          static_cast<std::int16_t>(m.distance(x, a) + m.distance(y, a) - m.distance(x, y));
  DeltaEstimate out;
  int best = 0;
  if (m.all_certified()) {
    for (std::size_t x = 0; x < n; ++x) {
      const std::int16_t* gx = &g[x * n];
      for (std::size_t y = x; y < n; ++y) {
        const std::int16_t* gy = &g[y * n];
        int top = 0;
        for (std::size_t z = 0; z < n; ++z) top = std::max(top, int(std::min(gx[z], gy[z])));
        out.triples += n;
        int deficit = top - gx[y];
        if (deficit > best) {
          best = deficit;
          for (std::size_t z = 0; z < n; ++z)
            if (std::min(gx[z], gy[z]) == top) {
              out.witness = std::array<std::size_t, 3>{x, y, z};
              break;
            }
        }
      }
    }
  } else {
    auto ok = [&](std::size_t u) { return m.certified(u, a); };
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          if (!ok(x) || !ok(y) || !ok(z) || !m.certified(x, y) || !m.certified(x, z) ||
              !m.certified(z, y)) {
            ++out.skipped_uncertified;
            continue;
          }
          ++out.triples;
          int deficit = std::min(g[x * n + z], g[z * n + y]) - g[x * n + y];
          if (deficit > best) {
            best = deficit;
            out.witness = std::array<std::size_t, 3>{x, y, z};
          }
        }
  }
  // 4 · (doubled deficit / 2)
  out.delta = Rational(2 * best);
  return out;
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::certified: return "certified";
    case Evidence::evidence: return "evidence";
    case Evidence::inconclusive: return "inconclusive";
  }
  return "?";
}

HyperbolicVerdict hyperbolic_orth(const LocalMetric& m, const VertexSet& a, const VertexSet& c,
                                  std::size_t p, Rational r) {
  if (r <= 0) throw InputError("threshold r must be positive");
  HyperbolicVerdict out;
  out.sup = 0;
  if (a.none() || c.none()) {
    out.degenerate = true;
    return out;
  }
  for (auto x = a.find_first(); x != VertexSet::npos; x = a.find_next(x))
    for (auto y = c.find_first(); y != VertexSet::npos; y = c.find_next(y)) {
      if (!m.certified(x, p) || !m.certified(y, p) || !m.certified(x, y)) {
        ++out.skipped_uncertified;
        continue;
      }
      out.sup = std::max(out.sup, gromov_product(m, x, y, p));
    }
  out.orthogonal = out.sup < r;
  return out;
}

std::size_t FreudenthalComponents::outer_count() const {
  return static_cast<std::size_t>(std::count(reaches_sphere.begin(), reaches_sphere.end(), true));
}

FreudenthalComponents freudenthal(const GraphBall& ball, int k) {
  if (k < 0 || k >= ball.radius()) throw InputError("need 0 ≤ k < R");
  FreudenthalComponents out;
  out.k = k;
  std::vector<int> comp(ball.size(), -1);
  for (std::size_t s = 0; s < ball.size(); ++s) {
    if (ball.depth(s) < k || comp[s] >= 0) continue;
    int id = static_cast<int>(out.components.size());
    VertexSet members(ball.size());
    bool outer = false;
    std::vector<std::size_t> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      members.set(u);
      outer = outer || ball.depth(u) == ball.radius();
      ball.for_each_neighbor(u, [&](std::size_t w) {
        if (ball.depth(w) >= k && comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      });
    }
    out.components.push_back(std::move(members));
    out.reaches_sphere.push_back(outer);
  }
  return out;
}

FreudenthalVerdict freudenthal_orth(const GraphBall& ball, const VertexSet& a, const VertexSet& c,
                                    int k) {
  auto parts = freudenthal(ball, k);
  FreudenthalVerdict out;
  VertexSet outside = ~ball.empty_set();
  for (std::size_t v = 0; v < ball.size(); ++v)
    if (ball.depth(v) < k) outside.reset(v);
  out.vacuous = !(a & outside).any() || !(c & outside).any();
  for (const auto& comp : parts.components)
    if (comp.intersects(a) && comp.intersects(c)) {
      out.separated = false;
      // ball components only merge further in the full graph
      out.grade = Evidence::certified;
      return out;
    }
  out.grade = (ball.tree() || ball.exhausted()) ? Evidence::certified : Evidence::evidence;
  return out;
}

EndProfile end_count(const GraphBall& ball) {
  int r = ball.radius();
  if (r < 2) throw InputError("end count needs R ≥ 2");
  int lo = std::max(1, r / 10), hi = std::max(lo, r / 2);
  EndProfile out;
  for (int k = lo; k <= hi; ++k) out.counts.emplace_back(k, freudenthal(ball, k).outer_count());
  std::size_t half = out.counts.size() / 2;
  out.stabilized = true;
  for (std::size_t i = half; i < out.counts.size(); ++i)
    out.stabilized = out.stabilized && out.counts[i].second == out.counts.back().second;
  out.ends = out.counts.back().second;
  return out;
}

std::string to_string(HigsonVerdict v) {
  switch (v) {
    case HigsonVerdict::separated: return "separated";
    case HigsonVerdict::not_separated: return "not-separated";
    case HigsonVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

HigsonEvidence higson_evidence(const GraphBall& ball, const VertexSet& a, const VertexSet& c,
                               int r, int k) {
  if (r < 0 || k < 0 || r + k >= ball.radius()) throw InputError("need r + k < R");
  VertexSet meet = ball.dilate(a, r) & ball.dilate(c, r);
  HigsonEvidence out;
  for (auto v = meet.find_first(); v != VertexSet::npos; v = meet.find_next(v))
    out.deepest = std::max(out.deepest, ball.depth(v));
  if (out.deepest <= k)
    out.verdict = HigsonVerdict::separated;
  else if (out.deepest >= ball.radius() - r)
    out.verdict = HigsonVerdict::not_separated;
  return out;
}

}  // namespace orth
