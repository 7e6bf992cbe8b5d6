#include "model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace orthcheck {

using namespace orth;

std::string to_string(Kind k) {
  switch (k) {
    case Kind::bornology: return "bornology";
    case Kind::topology: return "topology";
    case Kind::metric: return "metric";
    case Kind::embedded_pair: return "embedded-pair";
    case Kind::explicit_relation: return "explicit-relation";
    case Kind::symbolic_line: return "symbolic-line";
    case Kind::graph: return "graph";
  }
  return "?";
}

InputError schema_error(const std::string& path, const std::string& what) {
  return InputError(path + ": " + what);
}

namespace {

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw schema_error(path + "/" + key, "missing field");
  return obj.at(key);
}

template <class T>
T get_as(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw schema_error(path, "wrong type (" + std::string(j.type_name()) + ")");
  }
}

std::vector<Mask> set_list(const GroundSet& g, const json& j, const std::string& path) {
  if (!j.is_array()) throw schema_error(path, "expected a list of subsets");
  std::vector<Mask> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(decode_finite(g, j[i], path + "/" + std::to_string(i)));
  return out;
}

GroundSet points_of(const json& doc) {
  auto names = get_as<std::vector<std::string>>(field(doc, "points", ""), "/points");
  if (names.size() > kMaxFinitePoints)
    throw BudgetExceeded("points", names.size(), kMaxFinitePoints);
  try {
    return GroundSet(std::move(names));
  } catch (const InputError& e) {
    throw schema_error("/points", e.what());
  }
}

FiniteTopology topology_of(const GroundSet& g, const json& doc) {
  if (doc.contains("opens")) return FiniteTopology(g, set_list(g, doc.at("opens"), "/opens"));
  if (doc.contains("subbasis"))
    return FiniteTopology::generated(g, set_list(g, doc.at("subbasis"), "/subbasis"));
  throw schema_error("/opens", "missing field (or give /subbasis)");
}

AffinePiece piece_of(const json& j, const std::string& path) {
  return {get_as<Int>(field(j, "intercept", path), path + "/intercept"),
          get_as<Int>(field(j, "slope", path), path + "/slope")};
}

}  // namespace

Mask decode_finite(const GroundSet& g, const json& j, const std::string& path) {
  if (!j.is_array()) throw schema_error(path, "expected a list of point names");
  Mask m = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto name = get_as<std::string>(j[i], path + "/" + std::to_string(i));
    auto idx = g.index_of(name);
    if (!idx) throw schema_error(path + "/" + std::to_string(i), "unknown point '" + name + "'");
    m |= bit(*idx);
  }
  return m;
}

EPS decode_line(const json& j, const std::string& path) {
  if (j.is_string()) {
    auto k = j.get<std::string>();
    if (k == "empty") return EPS();
    if (k == "integers") return EPS::integers();
    if (k == "naturals") return EPS::naturals();
    if (k == "negatives") return EPS::left_ray(-1);
    if (k == "evens") return EPS::residue_class(2, 0);
    if (k == "odds") return EPS::residue_class(2, 1);
    throw schema_error(path, "unknown set keyword '" + k + "'");
  }
  if (!j.is_object()) throw schema_error(path, "expected a progression description");
  LineSetSpec spec;
  if (j.contains("terms")) {
    const auto& terms = j.at("terms");
    if (!terms.is_array()) throw schema_error(path + "/terms", "expected a list");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      std::string p = path + "/terms/" + std::to_string(i);
      ProgressionTerm t;
      t.start = get_as<Int>(field(terms[i], "start", p), p + "/start");
      t.step = terms[i].contains("step") ? get_as<Int>(terms[i].at("step"), p + "/step") : 1;
      std::string dir = terms[i].contains("direction")
                            ? get_as<std::string>(terms[i].at("direction"), p + "/direction")
                            : "right";
      if (dir != "right" && dir != "left") throw schema_error(p + "/direction", "right or left");
      t.direction = dir == "right" ? Direction::right : Direction::left;
      spec.terms.push_back(t);
    }
  }
  if (j.contains("points")) spec.finite = get_as<std::vector<Int>>(j.at("points"), path + "/points");
  try {
    return EPS::from_spec(spec);
  } catch (const InputError& e) {
    throw schema_error(path, e.what());
  }
}

json encode(const GroundSet& g, Mask m) {
  json out = json::array();
  for (const auto& n : g.names_of(m)) out.push_back(n);
  return out;
}

json encode(const EPS& s) {
  auto spec = s.to_spec();
  json terms = json::array();
  for (const auto& t : spec.terms)
    terms.push_back({{"start", t.start},
                     {"step", t.step},
                     {"direction", t.direction == Direction::right ? "right" : "left"}});
  return {{"terms", terms}, {"points", spec.finite}};
}

Model parse_model(const json& doc) {
  if (!doc.is_object()) throw schema_error("", "model must be a JSON object");
  int version = get_as<int>(field(doc, "version", ""), "/version");
  if (version != 1) throw schema_error("/version", "unsupported version " + std::to_string(version));
  auto kind = get_as<std::string>(field(doc, "kind", ""), "/kind");
  Model m;
  m.doc = doc;
  if (kind == "bornology") {
    m.kind = Kind::bornology;
    auto g = points_of(doc);
    m.rel = from_bornology(Bornology::generated(g, set_list(g, field(doc, "bornology", ""), "/bornology")));
  } else if (kind == "topology") {
    m.kind = Kind::topology;
    auto g = points_of(doc);
    m.topology = topology_of(g, doc);
    m.rel = from_topology(*m.topology);
  } else if (kind == "metric") {
    m.kind = Kind::metric;
    auto g = points_of(doc);
    if (doc.contains("coordinates")) {
      auto c = get_as<std::vector<double>>(doc.at("coordinates"), "/coordinates");
      if (c.size() != g.size()) throw schema_error("/coordinates", "one coordinate per point");
      m.rel = from_metric(FiniteMetric::on_line(g, c));
    } else {
      auto d = get_as<std::vector<std::vector<double>>>(field(doc, "distances", ""), "/distances");
      m.rel = from_metric(FiniteMetric(g, d));
    }
  } else if (kind == "embedded-pair") {
    m.kind = Kind::embedded_pair;
    auto g = points_of(doc);
    EmbeddedPair p{topology_of(g, doc), decode_finite(g, field(doc, "inner", ""), "/inner")};
    auto rels = from_embedded_pair(p);
    std::string scale = doc.contains("scale") ? get_as<std::string>(doc.at("scale"), "/scale") : "large";
    if (scale != "small" && scale != "large") throw schema_error("/scale", "small or large");
    m.rel = scale == "large" ? rels.ls : rels.ss;
    m.other = scale == "large" ? rels.ss : rels.ls;
    m.pair = p;
  } else if (kind == "explicit-relation") {
    m.kind = Kind::explicit_relation;
    auto g = points_of(doc);
    if (doc.contains("orthogonal_sets")) {
      require_budget("explicit table points", g.size(), 10);
      PairTable t(g.size());
      const auto& pairs = doc.at("orthogonal_sets");
      if (!pairs.is_array()) throw schema_error("/orthogonal_sets", "expected a list of pairs");
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::string p = "/orthogonal_sets/" + std::to_string(i);
        if (!pairs[i].is_array() || pairs[i].size() != 2) throw schema_error(p, "expected [A, C]");
        t.set(decode_finite(g, pairs[i][0], p + "/0"), decode_finite(g, pairs[i][1], p + "/1"), true);
      }
      m.rel = FiniteRelation::from_table(g, std::move(t), "explicit table");
    } else {
      const auto& pairs = field(doc, "orthogonal_points", "");
      std::vector<Mask> rows(g.size(), 0);
      if (!pairs.is_array()) throw schema_error("/orthogonal_points", "expected a list of pairs");
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::string p = "/orthogonal_points/" + std::to_string(i);
        Mask xy = decode_finite(g, pairs[i], p);
        if (!pairs[i].is_array() || pairs[i].size() != 2) throw schema_error(p, "expected [x, y]");
        auto x = *g.index_of(pairs[i][0].get<std::string>());
        auto y = *g.index_of(pairs[i][1].get<std::string>());
        (void)xy;
        rows[x] |= bit(y);
        rows[y] |= bit(x);
      }
      m.rel = FiniteRelation::from_pairs(g, rows, "point pairs");
    }
  } else if (kind == "symbolic-line") {
    m.kind = Kind::symbolic_line;
    if (doc.contains("rule")) {
      auto r = parse_line_rule(get_as<std::string>(doc.at("rule"), "/rule"));
      if (!r) throw schema_error("/rule", "unknown rule");
      m.rule = *r;
    }
  } else if (kind == "graph") {
    m.kind = Kind::graph;
    auto gen = get_as<std::string>(field(doc, "generator", ""), "/generator");
    try {
      if (gen == "line")
        m.generator = GraphGenerator::line();
      else if (gen == "grid2d")
        m.generator = GraphGenerator::grid2d();
      else if (gen == "free-group")
        m.generator = GraphGenerator::free_group(get_as<int>(field(doc, "rank", ""), "/rank"));
      else if (gen == "regular-tree")
        m.generator = GraphGenerator::regular_tree(get_as<int>(field(doc, "degree", ""), "/degree"));
      else if (gen == "finite")
        m.generator = GraphGenerator::finite(
            get_as<std::vector<std::vector<int>>>(field(doc, "adjacency", ""), "/adjacency"),
            doc.contains("origin") ? get_as<int>(doc.at("origin"), "/origin") : 0);
      else
        throw schema_error("/generator", "unknown generator '" + gen + "'");
    } catch (const InputError& e) {
      std::string what = e.what();
      if (what.rfind("/", 0) == 0) throw;
      throw schema_error("/generator", what);
    }
    m.radius = doc.contains("radius") ? get_as<int>(doc.at("radius"), "/radius") : 10;
  } else {
    throw schema_error("/kind", "unknown model kind '" + kind + "'");
  }
  // Resolve every named subset once so schema errors surface at load time.
  if (doc.contains("subsets")) {
    if (!doc.at("subsets").is_object()) throw schema_error("/subsets", "expected an object");
    for (const auto& [name, val] : doc.at("subsets").items()) {
      std::string p = "/subsets/" + name;
      if (m.finite())
        decode_finite(m.ground(), val, p);
      else if (m.kind == Kind::symbolic_line)
        decode_line(val, p);
    }
  }
  return m;
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return parse_model(doc);
}

std::vector<std::string> Model::subset_names() const {
  std::vector<std::string> out;
  if (doc.contains("subsets"))
    for (const auto& [name, val] : doc.at("subsets").items()) out.push_back(name);
  return out;
}

Mask Model::finite_set(const std::string& ref) const {
  if (!finite()) throw InputError("model has no finite ground set");
  if (ref.size() >= 2 && ref.front() == '{' && ref.back() == '}') {
    std::vector<std::string> names;
    std::stringstream ss(ref.substr(1, ref.size() - 2));
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) names.push_back(item);
    return ground().mask_of(names);
  }
  if (!doc.contains("subsets") || !doc.at("subsets").contains(ref))
    throw schema_error("/subsets/" + ref, "no such subset");
  return decode_finite(ground(), doc.at("subsets").at(ref), "/subsets/" + ref);
}

EPS Model::line_set(const std::string& ref) const {
  if (doc.contains("subsets") && doc.at("subsets").contains(ref))
    return decode_line(doc.at("subsets").at(ref), "/subsets/" + ref);
  return decode_line(json(ref), "set '" + ref + "'");
}

VertexSet Model::graph_set(const GraphBall& ball, const std::string& ref) const {
  if (!doc.contains("subsets") || !doc.at("subsets").contains(ref))
    throw schema_error("/subsets/" + ref, "no such subset");
  const json& j = doc.at("subsets").at(ref);
  std::string path = "/subsets/" + ref;
  if (!j.is_object()) throw schema_error(path, "expected a vertex predicate object");
  std::optional<std::vector<std::string>> labels;
  if (j.contains("labels")) labels = get_as<std::vector<std::string>>(j.at("labels"), path + "/labels");
  std::optional<std::string> prefix;
  if (j.contains("prefix")) prefix = get_as<std::string>(j.at("prefix"), path + "/prefix");
  std::optional<int> lo, hi, parity;
  if (j.contains("at_least")) lo = get_as<int>(j.at("at_least"), path + "/at_least");
  if (j.contains("at_most")) hi = get_as<int>(j.at("at_most"), path + "/at_most");
  if (j.contains("parity")) parity = get_as<int>(j.at("parity"), path + "/parity");
  VertexSet out = ball.empty_set();
  for (std::size_t v = 0; v < ball.size(); ++v) {
    const auto& key = ball.key(v);
    std::string label = ball.label(v);
    bool in = true;
    if (labels) in = in && std::find(labels->begin(), labels->end(), label) != labels->end();
    if (prefix) in = in && label.size() > prefix->size() && label.rfind(*prefix, 0) == 0;
    int first = key.empty() ? 0 : key[0];
    if (lo) in = in && !key.empty() && first >= *lo;
    if (hi) in = in && !key.empty() && first <= *hi;
    if (parity) in = in && ((first % 2) + 2) % 2 == *parity;
    if (in) out.set(v);
  }
  return out;
}

FiniteMapSpec Model::finite_map(const std::string& name) const {
  std::string path = "/maps/" + name;
  if (!doc.contains("maps") || !doc.at("maps").contains(name)) throw schema_error(path, "no such map");
  const json& j = doc.at("maps").at(name);
  FiniteMapSpec out;
  if (j.contains("target")) out.target = std::make_shared<Model>(parse_model(j.at("target")));
  const Model& target = out.target ? *out.target : *this;
  if (!target.finite()) throw schema_error(path + "/target", "target must be a finite model");
  const json& images = field(j, "images", path);
  if (!images.is_object()) throw schema_error(path + "/images", "expected point → point");
  std::vector<std::size_t> im(size_t(rel->size()), 0);
  std::vector<bool> seen(rel->size(), false);
  for (const auto& [src, dst] : images.items()) {
    auto x = ground().index_of(src);
    if (!x) throw schema_error(path + "/images/" + src, "unknown source point");
    auto y = target.ground().index_of(get_as<std::string>(dst, path + "/images/" + src));
    if (!y) throw schema_error(path + "/images/" + src, "unknown target point");
    im[*x] = *y;
    seen[*x] = true;
  }
  for (std::size_t x = 0; x < seen.size(); ++x)
    if (!seen[x]) throw schema_error(path + "/images/" + ground().name(x), "missing image");
  out.map = GroundMap(rel->size(), target.rel->size(), im);
  return out;
}

EventuallyAffineMap Model::line_map(const std::string& name) const {
  std::string path = "/maps/" + name;
  if (!doc.contains("maps") || !doc.at("maps").contains(name)) throw schema_error(path, "no such map");
  const json& j = doc.at("maps").at(name);
  try {
    if (j.contains("slope"))
      return EventuallyAffineMap::affine(
          j.contains("intercept") ? get_as<Int>(j.at("intercept"), path + "/intercept") : 0,
          get_as<Int>(j.at("slope"), path + "/slope"));
    return EventuallyAffineMap(piece_of(field(j, "left", path), path + "/left"),
                               get_as<Int>(field(j, "lo", path), path + "/lo"),
                               j.contains("middle") ? get_as<std::vector<Int>>(j.at("middle"), path + "/middle")
                                                    : std::vector<Int>{},
                               piece_of(field(j, "right", path), path + "/right"));
  } catch (const InputError& e) {
    std::string what = e.what();
    if (what.rfind("/", 0) == 0) throw;
    throw schema_error(path, what);
  }
}

PartialChain Model::partial_function(const std::string& name, int& resolution) const {
  std::string path = "/functions/" + name;
  if (!doc.contains("functions") || !doc.at("functions").contains(name))
    throw schema_error(path, "no such function");
  const json& j = doc.at("functions").at(name);
  if (j.contains("resolution")) resolution = get_as<int>(j.at("resolution"), path + "/resolution");
  const json& levels = field(j, "levels", path);
  if (!levels.is_object()) throw schema_error(path + "/levels", "expected point → level");
  PartialChain out;
  out.levels.assign(rel->size(), 0);
  for (const auto& [pt, lv] : levels.items()) {
    auto x = ground().index_of(pt);
    if (!x) throw schema_error(path + "/levels/" + pt, "unknown point");
    int level = get_as<int>(lv, path + "/levels/" + pt);
    if (level < 0 || level > resolution)
      throw schema_error(path + "/levels/" + pt, "level outside 0.." + std::to_string(resolution));
    out.levels[*x] = level;
    out.domain |= bit(*x);
  }
  return out;
}

}  // namespace orthcheck
