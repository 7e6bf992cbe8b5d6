#include "commands.hpp"

#include <algorithm>
#include <sstream>

#include "orth/functions.hpp"
#include "orth/induced.hpp"
#include "orth/translations.hpp"

namespace orthcheck {

using namespace orth;

Budget make_budget(const Options& opt) {
  Budget b;
  if (opt.budget_n) b.axiom_scan_n = b.pair_scan_n = b.triple_claim_n = b.explicit_n = *opt.budget_n;
  return b;
}

FiniteRelation resolve_relation(const Model& m, const std::string& name) {
  if (!m.finite()) throw InputError("relation '" + name + "' needs a finite model");
  if (name == "model") return *m.rel;
  if (name == "other") {
    if (!m.other) throw InputError("model has no second relation");
    return *m.other;
  }
  if (name.rfind("map:", 0) == 0) {
    auto spec = m.finite_map(name.substr(4));
    return spec.target ? *spec.target->rel : *m.rel;
  }
  throw InputError("unknown relation '" + name + "'");
}

namespace {

struct Ctx {
  const Options& opt;
  const Model& m;
  Budget budget;
  Report& r;

  json S(Mask s) const { return encode(m.ground(), s); }
  std::string F(Mask s) const { return m.ground().format(s); }
  const FiniteRelation& rel() const { return *m.rel; }

  void need_finite() const {
    if (!m.finite())
      throw InputError(opt.command + " needs a finite model, not " + to_string(m.kind));
  }
  void need_kind(Kind k) const {
    if (m.kind != k)
      throw InputError(opt.command + " needs a " + to_string(k) + " model, not " + to_string(m.kind));
  }
  const std::string& set_arg(std::size_t i) const {
    if (opt.sets.size() <= i)
      throw InputError(opt.command + " needs " + std::to_string(i + 1) + " --set argument(s)");
    return opt.sets[i];
  }
  const std::string& map_arg(std::size_t i) const {
    if (opt.maps.size() <= i)
      throw InputError(opt.command + " needs " + std::to_string(i + 1) + " --map argument(s)");
    return opt.maps[i];
  }
  SymbolicRelation line_rel() const { return SymbolicRelation(m.rule); }
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Replay stanzas for a property verdict, read off its witness shape and note.
json property_replay(const Ctx& c, const std::string& relation, const PropertyVerdict& v) {
  json out = json::array();
  const auto& rel = resolve_relation(c.m, relation);
  if (v.witness.size() == 1) {
    Mask b = v.witness[0];
    out.push_back(replay_orth(relation, c.S(b), c.S(b), rel.orth(b, b)));
    out.push_back(replay_bounded(relation, c.S(b), is_bounded(rel, b)));
  } else if (v.witness.size() == 2) {
    Mask a = v.witness[0], d = v.witness[1];
    bool o = rel.orth(a, d);
    out.push_back(replay_orth(relation, c.S(a), c.S(d), o));
    if (o)
      out.push_back({{"check", "span"}, {"relation", relation}, {"sets", json::array({c.S(a), c.S(d)})},
                     {"expected", span_witness_exhaustive(rel, a, d).has_value()}});
  }
  return out;
}

Verdict property_verdict(const Ctx& c, const std::string& name, const std::string& relation,
                         const PropertyVerdict& v, bool informational) {
  Verdict out{name, v.holds, informational, v.note};
  for (Mask w : v.witness) out.witness.push_back(c.S(w));
  out.replay = property_replay(c, relation, v);
  return out;
}

// Finite orth/bounded queries keyed by the relation name.
json axiom_replay(const std::string& relation, const std::string& axiom, json sets) {
  return {{"check", "axiom"}, {"relation", relation}, {"axiom", axiom}, {"sets", std::move(sets)},
          {"expected", true}};
}

void axiom_verdicts(Ctx& c, const std::string& relation, const FiniteRelation& rel,
                    const std::string& prefix) {
  auto rep = verify_axioms(rel, c.budget);
  for (Axiom ax : {Axiom::symmetry, Axiom::empty_orthogonal_to_ground, Axiom::union_splitting}) {
    Verdict v{prefix + to_string(ax), true};
    for (const auto& viol : rep.violations) {
      if (viol.axiom != ax) continue;
      v.holds = false;
      json sets = json::array();
      for (Mask w : viol.witness) sets.push_back(c.S(w));
      v.witness = sets;
      v.replay.push_back(axiom_replay(relation, to_string(ax), sets));
      break;
    }
    c.r.verdicts.push_back(std::move(v));
  }
  c.r.facts[prefix + "checks"] = rep.checks;
}

std::vector<EPS> line_corpus() {
  auto fam = generating_family();
  for (const auto& s : std::vector<EPS>{EPS::residue_class(4, 3), EPS::interval(-5, 5),
                                        EPS::right_ray(-20), EPS::progression(2, 5, Direction::left)})
    fam.push_back(s);
  return fam;
}

// --- commands -------------------------------------------------------------------------

void check_axioms(Ctx& c) {
  if (c.m.kind == Kind::symbolic_line) {
    auto rel = c.line_rel();
    auto corpus = line_corpus();
    auto draw = [&](std::mt19937_64& rng) {
      const EPS& a = corpus[rng() % corpus.size()];
      const EPS& b = corpus[rng() % corpus.size()];
      Int t = static_cast<Int>(rng() % 21) - 10;
      return rng() % 2 ? a.unite(b.translate(t)) : a.translate(t);
    };
    auto rep = sample_axioms([&](const EPS& a, const EPS& d) { return rel.orth(a, d); }, EPS(),
                             EPS::integers(), draw, c.opt.samples, c.opt.seed);
    c.r.summary.push_back("rule: " + to_string(c.m.rule));
    c.r.summary.push_back("sampled " + std::to_string(rep.checks) + " checks (seed " +
                          std::to_string(c.opt.seed) + ")");
    for (Axiom ax : {Axiom::symmetry, Axiom::empty_orthogonal_to_ground, Axiom::union_splitting}) {
      Verdict v{to_string(ax), true};
      for (const auto& viol : rep.violations) {
        if (viol.axiom != ax) continue;
        v.holds = false;
        json sets = json::array();
        for (const auto& w : viol.witness) sets.push_back(encode(w));
        v.witness = sets;
        v.replay.push_back(axiom_replay("model", to_string(ax), sets));
        break;
      }
      c.r.verdicts.push_back(std::move(v));
    }
    c.r.notes.push_back("sampled check: passing is evidence, not proof");
    return;
  }
  c.need_finite();
  c.r.summary.push_back("points: " + std::to_string(c.rel().size()) + ", backend: " +
                        (c.rel().backend() == FiniteRelation::Backend::pair_generated
                             ? "pair-generated"
                             : "explicit table"));
  if (c.m.kind == Kind::embedded_pair) {
    std::string scale = c.m.doc.value("scale", std::string("large"));
    std::string other = scale == "large" ? "small" : "large";
    axiom_verdicts(c, "model", c.rel(), scale + "-scale ");
    axiom_verdicts(c, "other", *c.m.other, other + "-scale ");
  } else {
    axiom_verdicts(c, "model", c.rel(), "");
  }
}

void classify(Ctx& c) {
  if (c.m.kind == Kind::symbolic_line) {
    auto rel = c.line_rel();
    bool points = rel.is_bounded(EPS::finite({0})) && rel.is_bounded(EPS::finite({1}));
    bool ground = rel.is_bounded(EPS::integers());
    std::string scale = points ? "large" : "neither";
    c.r.summary.push_back("scale: " + scale);
    c.r.summary.push_back("bounded: finite sets");
    c.r.facts["scale"] = scale;
    c.r.facts["ground_bounded"] = ground;
    c.r.verdicts.push_back({"singletons bounded", points, true, "", json::array(),
                            json::array({replay_bounded("model", encode(EPS::finite({0})), rel.is_bounded(EPS::finite({0})))})});
    return;
  }
  c.need_finite();
  auto cls = scale_class(c.rel());
  std::string s = cls == ScaleClass::small ? "small" : cls == ScaleClass::large ? "large" : "neither";
  Mask bp = bounded_points(c.rel());
  c.r.summary.push_back("scale: " + s);
  c.r.summary.push_back("bounded points: " + c.F(bp));
  c.r.facts["scale"] = s;
  c.r.facts["bounded_points"] = c.S(bp);
  json selfo = json::array();
  for (std::size_t x = 0; x < c.rel().size(); ++x)
    if (c.rel().point_orth(x, x)) selfo.push_back(c.m.ground().name(x));
  c.r.facts["self_orthogonal_points"] = selfo;
  Verdict v{"all points bounded", bp == c.rel().full(), true};
  for (std::size_t x = 0; x < c.rel().size(); ++x)
    v.replay.push_back(replay_bounded("model", c.S(bit(x)), has(bp, x)));
  c.r.verdicts.push_back(std::move(v));
}

void profile(Ctx& c) {
  c.need_finite();
  auto p = separation_profile(c.rel(), c.budget);
  std::vector<std::pair<std::string, const PropertyVerdict*>> rows = {
      {"frechet", &p.frechet}, {"hausdorff", &p.hausdorff}, {"regular", &p.regular}, {"normal", &p.normal}};
  std::string line;
  for (const auto& [name, v] : rows) {
    line += (line.empty() ? "" : ", ") + name + ": " + yes_no(v->holds);
    c.r.facts[name] = v->holds;
    c.r.verdicts.push_back(property_verdict(c, name, "model", *v, true));
  }
  c.r.summary.push_back(line);
}

void topology(Ctx& c) {
  c.need_finite();
  bool closed = c.opt.variant == "closed";
  if (!closed && c.opt.variant != "perp") throw InputError("--variant must be perp or closed");
  auto t = closed ? closed_variant_topology(c.rel(), c.budget) : induced_topology(c.rel(), c.budget);
  c.r.summary.push_back("opens: " + std::to_string(t.opens.size()) +
                        (t.is_discrete(c.rel().size()) ? " (discrete)" : ""));
  json opens = json::array(), basis = json::array();
  for (Mask o : t.opens) opens.push_back(c.S(o));
  for (Mask b : t.basis) basis.push_back(c.S(b));
  c.r.facts["variant"] = closed ? "closed" : "perp";
  if (!closed) c.r.facts["basis"] = basis;
  c.r.facts["opens"] = opens;
  if (!closed) {
    Verdict v{"basis sets are perps", true, true};
    for (Mask b : t.basis) {
      if (b == 0) continue;
      // b = A^⊥ for A = X ∖ b whenever it is a basis member of this form
      Mask a = c.rel().full() & ~b;
      if (perp(c.rel(), a) == b)
        v.replay.push_back({{"check", "perp"}, {"relation", "model"}, {"sets", json::array({c.S(a), c.S(b)})},
                            {"expected", true}});
    }
    c.r.verdicts.push_back(std::move(v));
  }
  if (c.m.topology) {
    auto model_opens = c.m.topology->opens();
    std::sort(model_opens.begin(), model_opens.end());
    bool same = model_opens == t.opens;
    c.r.summary.push_back("matches model topology: " + yes_no(same));
    c.r.verdicts.push_back({"matches model topology", same, true});
  }
}

void perp_cmd(Ctx& c) {
  c.need_finite();
  Mask a = c.m.finite_set(c.set_arg(0));
  Mask p = perp(c.rel(), a);
  c.r.summary.push_back(c.F(a) + "^⊥ = " + c.F(p));
  c.r.facts["set"] = c.S(a);
  c.r.facts["perp"] = c.S(p);
  c.r.verdicts.push_back({"perp computed", true, true, "", json::array(),
                          json::array({json{{"check", "perp"}, {"relation", "model"},
                                            {"sets", json::array({c.S(a), c.S(p)})}, {"expected", true}}})});
}

template <class Table>
std::optional<std::pair<Mask, Mask>> first_difference(const Ctx& c, const Table& t,
                                                      const FiniteRelation& back) {
  Mask full = c.rel().full();
  for (Mask a = 0; a <= full; ++a)
    for (Mask d = 0; d <= full; ++d)
      if (t(a, d) != back.orth(a, d)) return std::make_pair(a, d);
  return std::nullopt;
}

void suite_verdicts(Ctx& c, const AxiomSuite& s, const std::string& structure) {
  for (const auto& ax : s.axioms) {
    Verdict v{structure + " axiom " + ax.name, ax.holds};
    for (Mask w : ax.witness) v.witness.push_back(c.S(w));
    v.replay.push_back({{"check", "axiom_suite"}, {"relation", "model"}, {"structure", structure},
                        {"axiom", ax.name}, {"sets", v.witness}, {"expected", ax.holds}});
    c.r.verdicts.push_back(std::move(v));
  }
}

void round_trip_verdict(Ctx& c, const FiniteRelation& back) {
  Verdict v{"round trip recovers the relation", c.rel().same_table(back)};
  if (!v.holds) {
    auto d = first_difference(c, [&](Mask a, Mask e) { return c.rel().orth(a, e); }, back);
    if (d) {
      v.witness = json::array({c.S(d->first), c.S(d->second)});
      v.replay.push_back(replay_orth("model", c.S(d->first), c.S(d->second), c.rel().orth(d->first, d->second)));
    }
  }
  c.r.verdicts.push_back(std::move(v));
}

void translate(Ctx& c) {
  if (c.opt.to == "resemblance") {
    c.need_kind(Kind::symbolic_line);
    ResemblanceRelation res(hausdorff_resemblance());
    auto rel = c.line_rel();
    auto corpus = line_corpus();
    Verdict v{"resemblance relation agrees with the rule", true};
    std::size_t pairs = 0;
    for (const auto& a : corpus)
      for (const auto& d : corpus) {
        ++pairs;
        bool lhs = res.orth(a, d), rhs = rel.orth(a, d);
        if (lhs != rhs && v.holds) {
          v.holds = false;
          v.witness = json::array({encode(a), encode(d)});
          v.replay.push_back(replay_orth("model", encode(a), encode(d), rhs));
          v.detail = std::string("resemblance says ") + (lhs ? "orthogonal" : "not orthogonal");
        }
      }
    c.r.summary.push_back("resemblance: finite Hausdorff distance, " + std::to_string(pairs) + " pairs");
    auto suite = check_resemblance(hausdorff_resemblance(), corpus, c.opt.samples, c.opt.seed);
    for (const auto& ax : suite.axioms) c.r.verdicts.push_back({"resemblance axiom " + ax.name, ax.holds});
    c.r.verdicts.push_back(std::move(v));
    c.r.notes.push_back("resemblance axioms are sampled (seed " + std::to_string(c.opt.seed) + ")");
    return;
  }
  c.need_finite();
  if (c.opt.to == "proximity") {
    Proximity p = orth_to_proximity(c.rel(), c.budget);
    auto suite = check_proximity_axioms(p, c.budget);
    suite_verdicts(c, suite, "proximity");
    round_trip_verdict(c, proximity_to_orth(p, c.budget));
    c.r.summary.push_back("proximity: A near C iff not A ⊥ C");
  } else if (c.opt.to == "nbhd") {
    NeighborhoodOperator op = orth_to_nbhd(c.rel());
    auto suite = check_operator_axioms(op, c.budget);
    suite_verdicts(c, suite, "nbhd");
    round_trip_verdict(c, nbhd_to_orth(op, c.budget));
    c.r.summary.push_back("neighbourhood operator: A ≺ U iff A ⊆ U and A ⊥ X∖U");
  } else {
    throw InputError("--to must be proximity, nbhd or resemblance");
  }
}

void map_check(Ctx& c) {
  const std::string& name = c.map_arg(0);
  if (c.m.kind == Kind::symbolic_line) {
    auto f = c.m.line_map(name);
    auto rel = c.line_rel();
    auto cont = continuity_check(f, rel, rel, observable_family(f));
    c.r.summary.push_back(name + ": " + f.to_string());
    Verdict v{"continuous", cont.continuous, false,
              std::to_string(cont.pairs_checked) + " pairs of observable sets"};
    if (cont.counterexample) {
      const auto& [a, d] = *cont.counterexample;
      v.witness = json::array({encode(a), encode(d)});
      v.replay.push_back(replay_orth("model", encode(a), encode(d), true));
      v.replay.push_back(replay_orth("model", encode(f.preimage(a)), encode(f.preimage(d)), false));
    }
    c.r.verdicts.push_back(std::move(v));
    Verdict coarse{"preimages of bounded sets are bounded", f.coarse()};
    if (!f.coarse()) {
      Int value = f.right().slope == 0 ? f.right().intercept : f.left().intercept;
      EPS pre = f.preimage(EPS::finite({value}));
      coarse.witness = json::array({encode(EPS::finite({value})), encode(pre)});
      coarse.replay.push_back(replay_bounded("model", encode(pre), false));
    }
    c.r.verdicts.push_back(std::move(coarse));
    c.r.notes.push_back("continuity is checked over the observable family of the map");
    return;
  }
  c.need_finite();
  auto spec = c.m.finite_map(name);
  const FiniteRelation& y = spec.target ? *spec.target->rel : c.rel();
  const GroundSet& yg = y.ground();
  auto cont = continuity_check(spec.map, c.rel(), y);
  Verdict v{"continuous", cont.continuous};
  if (cont.counterexample) {
    auto [a, d] = *cont.counterexample;
    v.witness = json::array({encode(yg, a), encode(yg, d)});
    v.replay.push_back(replay_orth("map:" + name, encode(yg, a), encode(yg, d), true));
    v.replay.push_back(replay_orth("model", c.S(spec.map.preimage(a)), c.S(spec.map.preimage(d)), false));
  }
  c.r.verdicts.push_back(std::move(v));
  Mask bx = bounded_points(c.rel());
  Mask image = spec.map.image(bx);
  Verdict born{"images of bounded sets are bounded", is_bounded(y, image)};
  born.replay.push_back(replay_bounded("model", c.S(bx), true));
  born.replay.push_back(replay_bounded("map:" + name, encode(yg, image), born.holds));
  if (!born.holds) born.witness = json::array({c.S(bx)});
  c.r.verdicts.push_back(std::move(born));
  Mask by = bounded_points(y);
  Mask pre = spec.map.preimage(by);
  Verdict coarse{"preimages of bounded sets are bounded", is_bounded(c.rel(), pre)};
  coarse.replay.push_back(replay_bounded("map:" + name, encode(yg, by), true));
  coarse.replay.push_back(replay_bounded("model", c.S(pre), coarse.holds));
  if (!coarse.holds) coarse.witness = json::array({encode(yg, by)});
  c.r.verdicts.push_back(std::move(coarse));
  c.r.summary.push_back(name + ": " + std::to_string(spec.map.source_size()) + " → " +
                        std::to_string(spec.map.target_size()) + " points");
}

void quotient(Ctx& c) {
  c.need_finite();
  const std::string& name = c.map_arg(0);
  auto spec = c.m.finite_map(name);
  if (!spec.map.surjective()) throw InputError("map '" + name + "' is not surjective");
  GroundSet target = spec.target ? spec.target->ground() : c.m.ground();
  FiniteRelation q = quotient_relation(c.rel(), spec.map, target);
  json pairs = json::array();
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t b = a; b < q.size(); ++b)
      if (q.point_orth(a, b)) pairs.push_back({target.name(a), target.name(b)});
  c.r.facts["orthogonal_points"] = pairs;
  c.r.summary.push_back("quotient on " + std::to_string(q.size()) + " points, " +
                        std::to_string(pairs.size()) + " orthogonal point pairs");
  auto ax = verify_axioms(q, c.budget);
  Verdict axioms{"quotient satisfies the axioms", ax.passed};
  if (!ax.passed) {
    const auto& viol = ax.violations.front();
    for (Mask w : viol.witness) axioms.witness.push_back(encode(target, w));
    axioms.detail = to_string(viol.axiom);
  }
  c.r.verdicts.push_back(std::move(axioms));
  auto cont = continuity_check(spec.map, c.rel(), q);
  Verdict v{"map is continuous into the quotient", cont.continuous};
  if (cont.counterexample) {
    auto [a, d] = *cont.counterexample;
    v.witness = json::array({encode(target, a), encode(target, d)});
    v.replay.push_back(replay_orth("model", c.S(spec.map.preimage(a)), c.S(spec.map.preimage(d)), false));
  }
  c.r.verdicts.push_back(std::move(v));
  // Each quotient-orthogonal point pair is orthogonal upstairs by definition.
  Verdict def{"quotient pairs pull back to orthogonal fibres", true, true};
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t b = a; b < q.size(); ++b)
      if (q.point_orth(a, b))
        def.replay.push_back(
            replay_orth("model", c.S(spec.map.preimage(bit(a))), c.S(spec.map.preimage(bit(b))), true));
  c.r.verdicts.push_back(std::move(def));
}

void parallel_cmd(Ctx& c) {
  if (c.m.kind == Kind::symbolic_line) {
    auto rel = c.line_rel();
    if (c.opt.maps.size() >= 2) {
      auto f = c.m.line_map(c.opt.maps[0]), g = c.m.line_map(c.opt.maps[1]);
      auto v = parallel_maps(f, g, generating_family());
      Verdict out{"maps are parallel", v.parallel};
      if (v.bound) out.detail = "sup |f − g| = " + std::to_string(*v.bound);
      if (v.witness) {
        out.witness = json::array({encode(*v.witness)});
        out.replay.push_back({{"check", "divergence"}, {"relation", "model"},
                              {"maps", {c.opt.maps[0], c.opt.maps[1]}}, {"sets", json::array({encode(*v.witness)})},
                              {"expected", true}});
      }
      c.r.verdicts.push_back(std::move(out));
      c.r.verdicts.push_back({"images mutually parallel on the generating family",
                              v.images_parallel_on_family, true});
      c.r.summary.push_back(c.opt.maps[0] + " vs " + c.opt.maps[1]);
      return;
    }
    EPS a = c.m.line_set(c.set_arg(0)), d = c.m.line_set(c.set_arg(1));
    bool ad = parallel_sets(rel, a, d), da = parallel_sets(rel, d, a);
    c.r.verdicts.push_back({c.set_arg(0) + " parallel to " + c.set_arg(1), ad});
    c.r.verdicts.push_back({c.set_arg(1) + " parallel to " + c.set_arg(0), da});
    if (auto r = containment_radius(a, d)) c.r.facts["containment_radius"] = *r;
    return;
  }
  c.need_finite();
  auto set_verdict = [&](const FiniteRelation& rel, const std::string& relation, Mask a, Mask d,
                         const std::string& name) {
    const auto& g = rel.ground();
    auto v = parallel_sets(rel, a, d, c.budget);
    Verdict out{name, v.parallel};
    if (v.witness) {
      out.witness = json::array({encode(g, *v.witness)});
      out.replay.push_back(replay_orth(relation, encode(g, *v.witness), encode(g, d), true));
      out.replay.push_back(replay_bounded(relation, encode(g, *v.witness), false));
    }
    return out;
  };
  if (c.opt.maps.size() >= 2) {
    auto f = c.m.finite_map(c.opt.maps[0]), g = c.m.finite_map(c.opt.maps[1]);
    const FiniteRelation& y = f.target ? *f.target->rel : c.rel();
    if (g.map.target_size() != y.size()) throw InputError("maps have different targets");
    auto v = parallel_maps(y, f.map, g.map, c.budget);
    std::string relation = "map:" + c.opt.maps[0];
    Verdict out{"maps are parallel", v.parallel};
    if (v.witness) {
      Mask fa = f.map.image(*v.witness), ga = g.map.image(*v.witness);
      out.witness = json::array({c.S(*v.witness)});
      auto one = parallel_sets(y, fa, ga, c.budget);
      auto two = parallel_sets(y, ga, fa, c.budget);
      Mask other = one.witness ? ga : fa;
      Mask b = one.witness ? *one.witness : *two.witness;
      out.replay.push_back(replay_orth(relation, encode(y.ground(), b), encode(y.ground(), other), true));
      out.replay.push_back(replay_bounded(relation, encode(y.ground(), b), false));
      out.detail = "f(A) = " + y.ground().format(fa) + ", g(A) = " + y.ground().format(ga);
    }
    c.r.verdicts.push_back(std::move(out));
    c.r.summary.push_back(c.opt.maps[0] + " vs " + c.opt.maps[1]);
    return;
  }
  Mask a = c.m.finite_set(c.set_arg(0)), d = c.m.finite_set(c.set_arg(1));
  c.r.verdicts.push_back(set_verdict(c.rel(), "model", a, d, c.set_arg(0) + " parallel to " + c.set_arg(1)));
  c.r.verdicts.push_back(set_verdict(c.rel(), "model", d, a, c.set_arg(1) + " parallel to " + c.set_arg(0)));
}

json levels_json(const Ctx& c, const ChainFunction& f) {
  json out = json::object();
  for (std::size_t x = 0; x < f.size(); ++x) out[c.m.ground().name(x)] = f.levels[x];
  return out;
}

// The nonorthogonality component meeting both sets.
std::optional<Mask> bridging_component(const FiniteRelation& rel, Mask a, Mask b) {
  for (Mask k : nonorthogonality_components(rel))
    if ((k & a) && (k & b)) return k;
  return std::nullopt;
}

json connected_replay(const Ctx& c, Mask k, Mask a, Mask b) {
  return {{"check", "connected"}, {"relation", "model"}, {"sets", json::array({c.S(k), c.S(a), c.S(b)})},
          {"expected", true}};
}

void functions_cmd(Ctx& c) {
  c.need_finite();
  int m = c.opt.resolution;
  if (c.opt.mode == "separate") {
    Mask a = c.m.finite_set(c.set_arg(0)), d = c.m.finite_set(c.set_arg(1));
    auto f = separating_function(c.rel(), a, d, m);
    Verdict v{"separating function exists", f.has_value()};
    if (f) {
      c.r.facts["function"] = levels_json(c, *f);
      auto cont = is_chain_continuous(c.rel(), *f);
      c.r.verdicts.push_back({"function is continuous", cont.continuous});
    } else if (auto k = bridging_component(c.rel(), a, d)) {
      v.witness = json::array({c.S(*k)});
      v.detail = "a nonorthogonality component meets both sets";
      v.replay.push_back(connected_replay(c, *k, a, d));
    }
    c.r.verdicts.insert(c.r.verdicts.begin(), std::move(v));
    c.r.summary.push_back("separate " + c.F(a) + " from " + c.F(d) + " at resolution " + std::to_string(m));
  } else if (c.opt.mode == "paste") {
    if (c.opt.functions.size() < 2) throw InputError("paste needs at least two --function arguments");
    std::vector<PartialChain> parts;
    for (const auto& name : c.opt.functions) parts.push_back(c.m.partial_function(name, m));
    auto res = paste(c.rel(), parts, m);
    Verdict v{"pasted function is continuous", res.function.has_value() && res.certificate.continuous,
              false, res.failed};
    if (res.witness) {
      auto [a, d] = *res.witness;
      v.witness = json::array({c.S(a), c.S(d)});
      v.replay.push_back(replay_orth("model", c.S(a), c.S(d), c.rel().orth(a, d)));
    }
    if (res.function) c.r.facts["function"] = levels_json(c, *res.function);
    c.r.verdicts.push_back(std::move(v));
    c.r.summary.push_back("pasted " + std::to_string(parts.size()) + " parts at resolution " + std::to_string(m));
  } else if (c.opt.mode == "extend") {
    if (c.opt.functions.empty()) throw InputError("extend needs a --function argument");
    auto partial = c.m.partial_function(c.opt.functions[0], m);
    auto res = extend_function(c.rel(), partial, m, 0, c.budget);
    Verdict v{"continuous extension exists", res.function.has_value()};
    if (res.conflict) {
      v.witness = json::array({c.S(*res.conflict)});
      // two domain points of the component with different levels
      Mask k = *res.conflict & partial.domain;
      std::size_t first = static_cast<std::size_t>(std::countr_zero(k));
      Mask lo = bit(first), hi = 0;
      for_each_point(k, [&](std::size_t x) {
        if (!hi && partial.levels[x] != partial.levels[first]) hi = bit(x);
      });
      v.detail = "the partial function takes two levels on one component";
      if (hi) v.replay.push_back(connected_replay(c, *res.conflict, lo, hi));
    }
    if (res.function) c.r.facts["function"] = levels_json(c, *res.function);
    c.r.verdicts.push_back(std::move(v));
    c.r.verdicts.push_back({"relation is normal", res.relation_normal, true});
  } else {
    throw InputError("functions needs a mode: separate, paste or extend");
  }
}

// --- graph commands --------------------------------------------------------------------

struct GraphCtx {
  GraphBall ball;
  std::size_t origin;
};

GraphCtx graph_ctx(const Ctx& c) {
  c.need_kind(Kind::graph);
  int radius = c.opt.radius.value_or(c.m.radius);
  if (radius < 1) throw InputError("radius must be positive");
  GraphBall ball(*c.m.generator, radius);
  std::size_t origin = ball.index(c.m.generator->origin());
  return {std::move(ball), origin};
}

std::string rational(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw InputError("cannot read '" + s + "' as a rational number");
  }
}

json distance_replay(const GraphBall& ball, std::size_t u, std::size_t v, int d) {
  return {{"check", "distance"}, {"vertices", {ball.label(u), ball.label(v)}}, {"expected", d}};
}

void hyperbolic(Ctx& c) {
  auto g = graph_ctx(c);
  require_budget("local metric vertices", g.ball.size(), LocalMetric::kMaxVertices);
  LocalMetric metric(g.ball);
  auto est = delta_estimate(metric, g.origin);
  c.r.summary.push_back("graph: " + g.ball.generator_name() + ", R=" + std::to_string(g.ball.radius()) +
                        ", " + std::to_string(g.ball.size()) + " vertices");
  c.r.summary.push_back("δ estimate: " + rational(est.delta) + " over " + std::to_string(est.triples) +
                        " triples");
  c.r.facts["vertices"] = g.ball.size();
  c.r.facts["delta"] = rational(est.delta);
  c.r.facts["triples"] = est.triples;
  c.r.facts["skipped_uncertified"] = est.skipped_uncertified;
  Verdict v{"δ attained", true, true, "4 · largest four-point deficit at the origin"};
  if (est.witness) {
    auto [x, y, z] = *est.witness;
    v.witness = json::array({g.ball.label(x), g.ball.label(y), g.ball.label(z)});
    for (auto [u, w] : {std::pair{x, y}, {x, z}, {y, z}, {x, g.origin}, {y, g.origin}, {z, g.origin}})
      v.replay.push_back(distance_replay(g.ball, u, w, metric.distance(u, w)));
  }
  c.r.verdicts.push_back(std::move(v));
  if (c.opt.sets.size() >= 2) {
    VertexSet a = c.m.graph_set(g.ball, c.opt.sets[0]), d = c.m.graph_set(g.ball, c.opt.sets[1]);
    Rational r = c.opt.threshold ? parse_rational(*c.opt.threshold) : Rational(g.ball.radius() / 2);
    auto h = hyperbolic_orth(metric, a, d, g.origin, r);
    c.r.verdicts.push_back({c.opt.sets[0] + " ⊥ " + c.opt.sets[1] + " (Gromov products below " + rational(r) + ")",
                            h.orthogonal, true, "sup = " + rational(h.sup)});
  }
  if (!g.ball.exhausted()) c.r.notes.push_back("truncated ball: values are evidence for the whole graph");
}

void ends_cmd(Ctx& c) {
  auto g = graph_ctx(c);
  auto prof = end_count(g.ball);
  std::string range = prof.counts.empty() ? "" : "k=" + std::to_string(prof.counts.front().first) + ".." +
                                                   std::to_string(prof.counts.back().first);
  c.r.summary.push_back("ends: " + std::to_string(prof.ends) + " (" +
                        (prof.stabilized ? "stabilized " : "not stabilized, ") + range + ")");
  json counts = json::array();
  for (auto [k, n] : prof.counts) counts.push_back({{"k", k}, {"components", n}});
  c.r.facts["ends"] = prof.ends;
  c.r.facts["stabilized"] = prof.stabilized;
  c.r.facts["counts"] = counts;
  c.r.verdicts.push_back({"component count stabilized", prof.stabilized, false,
                          "components of the complement of the k-ball that reach the sphere"});
  if (c.opt.sets.size() >= 2) {
    VertexSet a = c.m.graph_set(g.ball, c.opt.sets[0]), d = c.m.graph_set(g.ball, c.opt.sets[1]);
    int k = c.opt.k.value_or(g.ball.radius() / 2);
    auto fv = freudenthal_orth(g.ball, a, d, k);
    c.r.verdicts.push_back({"end-separated outside the " + std::to_string(k) + "-ball", fv.separated, true,
                            to_string(fv.grade) + (fv.vacuous ? ", vacuous" : "")});
    int r = 1;
    if (r + k < g.ball.radius()) {
      auto hv = higson_evidence(g.ball, a, d, r, k);
      c.r.verdicts.push_back({"dilations eventually disjoint", hv.verdict != HigsonVerdict::not_separated, true,
                              to_string(hv.verdict) + ", deepest overlap " + std::to_string(hv.deepest)});
    }
  }
}

// --- boundary --------------------------------------------------------------------------

template <class Space>
void boundary_verdicts(Ctx& c, const Space& sp, const BoundaryResult<typename Space::Set>& b,
                       const std::function<json(const typename Space::Set&)>& enc) {
  c.r.summary.push_back("lattice: " + std::to_string(b.lattice.size()) + " members, " +
                        std::to_string(b.filters.size()) + " maximal filters (" +
                        std::to_string(b.nonprincipal.size()) + " non-principal)");
  if (b.transitive)
    c.r.summary.push_back("∂X: " + std::to_string(b.boundary_size()) + " classes");
  json classes = json::array();
  for (const auto& cls : b.classes) {
    json gens = json::array();
    for (std::size_t f : cls) gens.push_back(enc(b.generator(f)));
    classes.push_back(gens);
  }
  c.r.facts["classes"] = classes;
  json principal = json::array();
  for (const auto& f : b.filters)
    if (f.principal()) principal.push_back(enc(sp.from_points(f.principal_at)));
  if (sp.points()) c.r.facts["principal_points"] = principal;
  Verdict v{"resemblance of ultrafilters is transitive", b.transitive};
  if (b.transitivity_witness) {
    auto [i, j, k] = *b.transitivity_witness;
    v.witness = json::array({enc(b.generator(i)), enc(b.generator(j)), enc(b.generator(k))});
    v.replay.push_back(replay_orth("model", enc(b.generator(i)), enc(b.generator(j)), false));
    v.replay.push_back(replay_orth("model", enc(b.generator(j)), enc(b.generator(k)), false));
    v.replay.push_back(replay_orth("model", enc(b.generator(i)), enc(b.generator(k)), true));
  }
  c.r.verdicts.push_back(std::move(v));
  if (b.relation_normal) c.r.verdicts.push_back({"relation is normal", *b.relation_normal, true});
}

std::vector<EPS> lattice_seeds(const Ctx& c) {
  std::vector<EPS> seeds;
  if (!c.m.doc.contains("lattice_seeds")) return seeds;
  const auto& j = c.m.doc.at("lattice_seeds");
  if (!j.is_array()) throw schema_error("/lattice_seeds", "expected a list of subsets");
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_string() && c.m.doc.contains("subsets") && c.m.doc.at("subsets").contains(j[i].get<std::string>()))
      seeds.push_back(c.m.line_set(j[i].get<std::string>()));
    else
      seeds.push_back(decode_line(j[i], "/lattice_seeds/" + std::to_string(i)));
  }
  return seeds;
}

void boundary_cmd(Ctx& c) {
  if (c.m.kind == Kind::symbolic_line) {
    LineSpace sp(c.m.rule);
    auto seeds = lattice_seeds(c);
    auto b = seeds.empty() ? boundary(sp, ends_lattice()) : line_boundary(seeds, c.m.rule, c.opt.lattice_cap);
    boundary_verdicts<LineSpace>(c, sp, b, [](const EPS& s) { return encode(s); });
    if (!c.opt.maps.empty()) {
      auto f = c.m.line_map(c.opt.maps[0]);
      auto im = induced_boundary_map(f, b, b, c.m.rule);
      Verdict v{"induced boundary map is defined", im.defined, false, im.diagnostic};
      c.r.facts["induced_map"] = im.image;
      c.r.verdicts.push_back(std::move(v));
    }
    return;
  }
  c.need_finite();
  FiniteSpace sp(c.rel());
  auto b = finite_boundary(c.rel(), c.budget);
  boundary_verdicts<FiniteSpace>(c, sp, b, [&](const Mask& s) { return c.S(s); });
}

std::optional<EndsModel> parse_ends_model(const std::string& s) {
  if (s == "two-ends") return EndsModel::two_ends;
  if (s == "glued-ends") return EndsModel::glued_ends;
  if (s == "integers") return EndsModel::integers;
  return std::nullopt;
}

void verify_compactification(Ctx& c) {
  if (c.m.kind == Kind::symbolic_line) {
    auto model = parse_ends_model(c.opt.ends_model);
    if (!model) throw InputError("--ends must be two-ends, glued-ends or integers");
    auto rel = c.line_rel();
    auto family = line_corpus();
    auto rep = verify_ls_compactification(rel, *model, family);
    c.r.summary.push_back("candidate: ℤ with " + to_string(*model) + ", " + std::to_string(family.size()) +
                          " test sets");
    Verdict crit{"closure criterion", rep.closure_criterion.holds, false, rep.closure_criterion.note};
    if (rep.witness) {
      const auto& [a, d] = *rep.witness;
      crit.witness = json::array({encode(a), encode(d)});
      crit.replay.push_back(replay_orth("model", encode(a), encode(d), rel.orth(a, d)));
    }
    c.r.verdicts.push_back(std::move(crit));
    c.r.verdicts.push_back({"bounded sets are clopen", rep.bounded_clopen.holds, false, rep.bounded_clopen.note});
    LineCover cover;
    cover.all_singletons = true;
    if (*model == EndsModel::two_ends) {
      cover.members = {{EPS::right_ray(0), true, false}, {EPS::left_ray(0), false, true}};
    } else if (*model == EndsModel::glued_ends) {
      cover.members = {{EPS::integers(), true, false}};
    }
    auto compact = ls_compact_check(*model, cover);
    c.r.verdicts.push_back({"ls-compact (sample cover)", compact.holds, false, compact.note});
    auto audit = regular_ends_audit(*model, family);
    c.r.verdicts.push_back({"ends separated from closed sets", audit.holds, true, audit.note});
    return;
  }
  c.need_finite();
  auto b = finite_boundary(c.rel(), c.budget);
  auto cand = to_candidate(FiniteSpace(c.rel()), b);
  auto rep = verify_ls_compactification(c.rel(), cand, c.budget);
  const GroundSet& xg = cand.space.ground();
  c.r.summary.push_back("candidate: " + std::to_string(cand.x_points) + " points of X, " +
                        std::to_string(cand.space.size() - cand.x_points) + " at infinity");
  json opens = json::array();
  for (Mask o : cand.space.opens()) opens.push_back(encode(xg, o));
  c.r.facts["candidate_points"] = xg.names();
  c.r.facts["candidate_opens"] = opens;
  auto add = [&](const std::string& name, const PropertyVerdict& v, bool in_x) {
    Verdict out{name, v.holds, false, v.note};
    for (Mask w : v.witness) out.witness.push_back(encode(xg, w));
    if (in_x && v.witness.size() == 2)
      out.replay.push_back(replay_orth("model", c.S(v.witness[0]), c.S(v.witness[1]),
                                       c.rel().orth(v.witness[0], v.witness[1])));
    if (in_x && v.witness.size() == 1)
      out.replay.push_back(replay_bounded("model", c.S(v.witness[0]), true));
    c.r.verdicts.push_back(std::move(out));
  };
  add("dense", rep.dense, false);
  add("ls-compact", rep.ls_compact, false);
  add("bounded sets are clopen", rep.bounded_clopen, true);
  add("closure criterion", rep.closure_criterion, true);
  c.r.verdicts.push_back({"hausdorff", rep.hausdorff, true});
  if (rep.normality_consistent)
    c.r.verdicts.push_back({"relation is normal", *rep.normality_consistent, true});
}

void dispatch(Ctx& c);

}  // namespace

void run_command(const Options& opt, Report& report) {
  if (opt.command == "oracle") {
    run_oracle(opt, report);
    return;
  }
  Model m = load_model(opt.model_path);
  Ctx c{opt, m, make_budget(opt), report};
  try {
    dispatch(c);
  } catch (const PreconditionError& e) {
    // A failed mathematical precondition is a property failure, not an input error.
    report.forced = Status::fail;
    Verdict v{"precondition", false, false, e.what()};
    if (m.finite()) {
      for (Mask w : e.witness()) v.witness.push_back(c.S(w));
      v.replay = property_replay(c, "model", PropertyVerdict{false, e.witness(), ""});
    }
    report.verdicts.push_back(std::move(v));
  }
}

namespace {

void dispatch(Ctx& c) {
  const std::string& cmd = c.opt.command;
  if (cmd == "check-axioms") check_axioms(c);
  else if (cmd == "classify") classify(c);
  else if (cmd == "profile") profile(c);
  else if (cmd == "topology") topology(c);
  else if (cmd == "perp") perp_cmd(c);
  else if (cmd == "translate") translate(c);
  else if (cmd == "map-check") map_check(c);
  else if (cmd == "quotient") quotient(c);
  else if (cmd == "parallel") parallel_cmd(c);
  else if (cmd == "functions") functions_cmd(c);
  else if (cmd == "hyperbolic") hyperbolic(c);
  else if (cmd == "ends") ends_cmd(c);
  else if (cmd == "boundary") boundary_cmd(c);
  else if (cmd == "verify-compactification") verify_compactification(c);
  else throw InputError("unknown command '" + cmd + "'");
}

}  // namespace
}  // namespace orthcheck
