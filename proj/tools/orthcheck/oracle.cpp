// Brute-force cross-checks and report replay. Everything here recomputes from definitions:
// point pairs for pair-generated relations, the literal pair list for explicit tables, the
// window oracles on the line and plain BFS on graphs.

#include <deque>
#include <fstream>
#include <set>

#include "commands.hpp"
#include "orth/induced.hpp"
#include "orth/translations.hpp"

namespace orthcheck {

using namespace orth;

namespace {

class FiniteOracle {
 public:
  FiniteOracle(const Model& m, const std::string& relation) : rel_(resolve_relation(m, relation)) {
    const Model* src = &m;
    std::shared_ptr<Model> holder;
    if (relation.rfind("map:", 0) == 0) {
      holder = m.finite_map(relation.substr(4)).target;
      if (holder) src = holder.get();
    }
    if (src->kind == Kind::explicit_relation && src->doc.contains("orthogonal_sets") &&
        relation != "other") {
      for (const auto& p : src->doc.at("orthogonal_sets"))
        listed_.insert({decode_finite(rel_.ground(), p[0], ""), decode_finite(rel_.ground(), p[1], "")});
      explicit_ = true;
    }
    keep_ = holder;
  }

  const GroundSet& ground() const { return rel_.ground(); }
  Mask full() const { return rel_.full(); }

  bool orth(Mask a, Mask c) const {
    if (explicit_) return listed_.count({a, c}) > 0;
    bool ok = true;
    for_each_point(a, [&](std::size_t x) {
      for_each_point(c, [&](std::size_t y) { ok = ok && rel_.point_orth(x, y); });
    });
    return ok;
  }
  bool bounded(Mask b) const { return orth(b, full()); }
  Mask perp(Mask a) const {
    Mask out = 0;
    for (std::size_t x = 0; x < ground().size(); ++x)
      if (!has(a, x) && orth(bit(x), a)) out |= bit(x);
    return out;
  }
  // C ⊥ D' and C' ⊥ D for a cover C' ∪ D' = X.
  bool spans(Mask c, Mask d) const {
    Mask x = full();
    bool found = false;
    for_each_submask(x, [&](Mask d2) {
      if (found || !orth(c, d2)) return;
      Mask c2 = x & ~d2;
      for_each_submask(d2, [&](Mask extra) {
        if (!found && orth(c2 | extra, d)) found = true;
      });
    });
    return found;
  }
  // K is connected by non-orthogonal point pairs.
  bool connected(Mask k) const {
    if (!k) return false;
    Mask seen = bit(static_cast<std::size_t>(std::countr_zero(k)));
    for (bool grew = true; grew;) {
      grew = false;
      for_each_point(k & ~seen, [&](std::size_t y) {
        for_each_point(seen, [&](std::size_t x) {
          if (!has(seen, y) && !orth(bit(x), bit(y))) {
            seen |= bit(y);
            grew = true;
          }
        });
      });
    }
    return seen == k;
  }

 private:
  FiniteRelation rel_;
  std::set<std::pair<Mask, Mask>> listed_;
  bool explicit_ = false;
  std::shared_ptr<Model> keep_;
};

// Window-oracle orthogonality on the line; falls back to the symbolic rule when the window
// cannot decide or the rule has no window oracle.
struct LineOracle {
  LineRule rule;
  Int window;
  std::size_t inconclusive = 0;

  std::optional<bool> window_orth(const EPS& a, const EPS& c) const {
    OracleOptions o;
    o.window = window;
    auto ma = [&](Int n) { return a.contains(n); };
    auto mc = [&](Int n) { return c.contains(n); };
    OracleResult r;
    if (rule == LineRule::metric)
      r = metric_ls_oracle(ma, mc, o);
    else if (rule == LineRule::set_theoretic)
      r = settheoretic_oracle(ma, mc, o);
    else
      return std::nullopt;
    if (r.verdict == OracleVerdict::inconclusive) return std::nullopt;
    return r.verdict == OracleVerdict::orthogonal;
  }
  bool orth(const EPS& a, const EPS& c) {
    if (auto w = window_orth(a, c)) return *w;
    ++inconclusive;
    return SymbolicRelation(rule).orth(a, c);
  }
};

std::optional<Axiom> parse_axiom(const std::string& s) {
  for (Axiom a : {Axiom::symmetry, Axiom::empty_orthogonal_to_ground, Axiom::union_splitting})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

// BFS in the generator itself, not the truncated ball. Two vertices of an R-ball are at most
// 2R apart, so the search stops there.
std::unordered_map<VertexKey, int, VertexKeyHash> bfs_from(const GraphGenerator& g,
                                                           const VertexKey& from, int cap) {
  std::unordered_map<VertexKey, int, VertexKeyHash> dist{{from, 0}};
  std::deque<VertexKey> queue{from};
  while (!queue.empty()) {
    VertexKey v = queue.front();
    queue.pop_front();
    int d = dist[v];
    if (d >= cap) continue;
    for (auto& w : g.neighbors(v))
      if (dist.emplace(w, d + 1).second) queue.push_back(std::move(w));
  }
  return dist;
}

int bfs_distance(const GraphGenerator& g, const VertexKey& from, const VertexKey& to, int cap) {
  auto dist = bfs_from(g, from, cap);
  auto it = dist.find(to);
  return it == dist.end() ? -1 : it->second;
}

std::string stanza_label(const json& s, std::size_t i) {
  return "replay " + std::to_string(i) + " (" + s.value("check", std::string("?")) + ")";
}

json replay_one(const Model& m, const json& s, const Options& opt, LineOracle* line) {
  std::string check = s.at("check").get<std::string>();
  std::string relation = s.value("relation", std::string("model"));
  const json& sets = s.contains("sets") ? s.at("sets") : json::array();

  if (check == "distance") {
    if (m.kind != Kind::graph) throw InputError("distance replay needs a graph model");
    int radius = opt.radius.value_or(m.radius);
    GraphBall ball(*m.generator, radius);
    std::vector<VertexKey> keys;
    for (const auto& lbl : s.at("vertices")) {
      std::optional<std::size_t> found;
      for (std::size_t v = 0; v < ball.size() && !found; ++v)
        if (ball.label(v) == lbl.get<std::string>()) found = v;
      if (!found) throw InputError("vertex '" + lbl.get<std::string>() + "' is not in the ball");
      keys.push_back(ball.key(*found));
    }
    return bfs_distance(*m.generator, keys[0], keys[1], 2 * radius);
  }

  if (m.kind == Kind::symbolic_line) {
    std::vector<EPS> xs;
    for (std::size_t i = 0; i < sets.size(); ++i) xs.push_back(decode_line(sets[i], "sets"));
    if (check == "orth") return line->orth(xs.at(0), xs.at(1));
    if (check == "bounded") return line->orth(xs.at(0), EPS::integers());
    if (check == "axiom") {
      auto ax = parse_axiom(s.at("axiom").get<std::string>());
      if (!ax) throw InputError("unknown axiom in replay stanza");
      AxiomViolation<EPS> v{*ax, xs};
      return replays_with([&](const EPS& a, const EPS& c) { return line->orth(a, c); }, EPS(),
                          EPS::integers(), v);
    }
    if (check == "divergence") {
      auto f = m.line_map(s.at("maps")[0].get<std::string>());
      auto g = m.line_map(s.at("maps")[1].get<std::string>());
      Int w = opt.oracle_window;
      auto spread = [&](Int lim) {
        Int best = 0;
        for (Int n : xs.at(0).elements_in(-lim, lim)) best = std::max(best, std::abs(f(n) - g(n)));
        return best;
      };
      return spread(w) > spread(w / 4);
    }
    throw InputError("replay check '" + check + "' does not apply to the symbolic line");
  }

  FiniteOracle o(m, relation);
  std::vector<Mask> xs;
  for (std::size_t i = 0; i < sets.size(); ++i) xs.push_back(decode_finite(o.ground(), sets[i], "sets"));
  if (check == "orth") return o.orth(xs.at(0), xs.at(1));
  if (check == "bounded") return o.bounded(xs.at(0));
  if (check == "perp") return o.perp(xs.at(0)) == xs.at(1);
  if (check == "span") return o.spans(xs.at(0), xs.at(1));
  if (check == "connected")
    return o.connected(xs.at(0)) && (xs.at(0) & xs.at(1)) && (xs.at(0) & xs.at(2));
  if (check == "axiom") {
    auto ax = parse_axiom(s.at("axiom").get<std::string>());
    if (!ax) throw InputError("unknown axiom in replay stanza");
    AxiomViolation<Mask> v{*ax, xs};
    return replays_with([&](Mask a, Mask c) { return o.orth(a, c); }, Mask{0}, o.full(), v);
  }
  if (check == "axiom_suite") {
    std::string structure = s.at("structure").get<std::string>();
    Budget b = make_budget(opt);
    AxiomSuite suite;
    if (structure == "proximity")
      suite = check_proximity_axioms(
          Proximity::tabulate(o.ground(), [&](Mask a, Mask c) { return !o.orth(a, c); }), b);
    else if (structure == "nbhd")
      suite = check_operator_axioms(
          NeighborhoodOperator::tabulate(
              o.ground(), [&](Mask a, Mask u) { return included(a, u) && o.orth(a, o.full() & ~u); }),
          b);
    else
      throw InputError("unknown structure '" + structure + "'");
    return suite.at(s.at("axiom").get<std::string>()).holds;
  }
  throw InputError("unknown replay check '" + check + "'");
}

void replay_report(const Options& opt, Report& r) {
  std::ifstream in(opt.replay_path);
  if (!in) throw InputError("cannot open report " + opt.replay_path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(opt.replay_path + ": " + e.what());
  }
  if (!doc.contains("verdicts")) throw schema_error("/verdicts", "missing field");
  std::string model_path = opt.model_path.empty() ? doc.value("model", std::string()) : opt.model_path;
  r.model = model_path;
  Model m = load_model(model_path);
  LineOracle line{m.rule, opt.oracle_window};
  std::size_t count = 0, i = 0;
  for (const auto& v : doc.at("verdicts")) {
    if (!v.contains("replay")) continue;
    for (const auto& s : v.at("replay")) {
      json got = replay_one(m, s, opt, &line);
      bool ok = got == s.at("expected");
      Verdict out{stanza_label(s, i++) + " of '" + v.value("name", std::string()) + "'", ok};
      if (!ok) out.detail = "expected " + s.at("expected").dump() + ", recomputed " + got.dump();
      out.replay.push_back(s);
      r.verdicts.push_back(std::move(out));
      ++count;
    }
  }
  r.summary.push_back("replayed " + std::to_string(count) + " stanzas from " + opt.replay_path);
  r.facts["stanzas"] = count;
  if (line.inconclusive)
    r.notes.push_back(std::to_string(line.inconclusive) +
                      " line checks fell back to the symbolic rule (window inconclusive)");
}

void cross_check(const Options& opt, Report& r) {
  Model m = load_model(opt.model_path);
  Budget budget = make_budget(opt);
  if (m.kind == Kind::symbolic_line) {
    LineOracle line{m.rule, opt.oracle_window};
    SymbolicRelation rel(m.rule);
    auto fam = generating_family();
    Verdict v{"symbolic rule agrees with the window oracle", true};
    std::size_t decided = 0, undecided = 0;
    for (const auto& a : fam)
      for (const auto& c : fam) {
        auto w = line.window_orth(a, c);
        if (!w) {
          ++undecided;
          continue;
        }
        ++decided;
        if (*w != rel.orth(a, c) && v.holds) {
          v.holds = false;
          v.witness = json::array({encode(a), encode(c)});
          v.replay.push_back(replay_orth("model", encode(a), encode(c), *w));
        }
      }
    r.summary.push_back("rule: " + to_string(m.rule) + ", window " + std::to_string(opt.oracle_window));
    r.summary.push_back(std::to_string(decided) + " pairs decided, " + std::to_string(undecided) +
                        " inconclusive");
    r.verdicts.push_back(std::move(v));
    if (!decided) r.notes.push_back("no window oracle for this rule; nothing was cross-checked");
    return;
  }
  if (m.kind == Kind::graph) {
    int radius = opt.radius.value_or(m.radius);
    GraphBall ball(*m.generator, radius);
    require_budget("local metric vertices", ball.size(), LocalMetric::kMaxVertices);
    LocalMetric metric(ball);
    Verdict v{"certified distances agree with BFS", true};
    std::size_t checked = 0;
    for (std::size_t u = 0; u < ball.size() && v.holds; u += std::max<std::size_t>(1, ball.size() / 32)) {
      auto dist = bfs_from(*m.generator, ball.key(u), 2 * radius);
      for (std::size_t w = 0; w < ball.size(); ++w) {
        if (!metric.certified(u, w)) continue;
        ++checked;
        auto it = dist.find(ball.key(w));
        int d = it == dist.end() ? -1 : it->second;
        if (d != metric.distance(u, w)) {
          v.holds = false;
          v.witness = json::array({ball.label(u), ball.label(w)});
          v.replay.push_back({{"check", "distance"}, {"vertices", v.witness}, {"expected", metric.distance(u, w)}});
          break;
        }
      }
    }
    r.summary.push_back(std::to_string(checked) + " certified pairs checked by BFS");
    r.verdicts.push_back(std::move(v));
    return;
  }
  if (!m.finite()) throw InputError("oracle needs a model");
  const FiniteRelation& rel = *m.rel;
  require_budget("oracle points", rel.size(), budget.axiom_scan_n);
  FiniteOracle o(m, "model");
  const GroundSet& g = rel.ground();
  Mask full = rel.full();
  Verdict orth_v{"orth agrees with the definition", true};
  Verdict perp_v{"perp agrees with the definition", true};
  Verdict span_v{"span search agrees with exhaustive covers", true};
  for (Mask a = 0; a <= full; ++a) {
    if (perp_v.holds && perp(rel, a) != o.perp(a)) {
      perp_v.holds = false;
      perp_v.witness = json::array({encode(g, a)});
      perp_v.replay.push_back({{"check", "perp"}, {"relation", "model"},
                               {"sets", json::array({encode(g, a), encode(g, o.perp(a))})}, {"expected", true}});
    }
    for (Mask c = 0; c <= full; ++c) {
      bool want = o.orth(a, c);
      if (orth_v.holds && rel.orth(a, c) != want) {
        orth_v.holds = false;
        orth_v.witness = json::array({encode(g, a), encode(g, c)});
        orth_v.replay.push_back(replay_orth("model", encode(g, a), encode(g, c), want));
      }
      if (span_v.holds && want && rel.size() <= 6 &&
          span_witness(rel, a, c).has_value() != o.spans(a, c)) {
        span_v.holds = false;
        span_v.witness = json::array({encode(g, a), encode(g, c)});
        span_v.replay.push_back({{"check", "span"}, {"relation", "model"},
                                 {"sets", json::array({encode(g, a), encode(g, c)})}, {"expected", o.spans(a, c)}});
      }
    }
  }
  r.summary.push_back("exhaustive over " + std::to_string((full + 1) * (full + 1)) + " pairs of subsets");
  r.verdicts.push_back(std::move(orth_v));
  r.verdicts.push_back(std::move(perp_v));
  if (rel.size() <= 6) r.verdicts.push_back(std::move(span_v));
  else r.notes.push_back("span cross-check skipped above 6 points");
}

}  // namespace

void run_oracle(const Options& opt, Report& r) {
  if (!opt.replay_path.empty())
    replay_report(opt, r);
  else
    cross_check(opt, r);
}

}  // namespace orthcheck
