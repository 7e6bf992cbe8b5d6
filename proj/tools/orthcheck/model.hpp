#pragma once

#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orth/functions.hpp"
#include "orth/graph.hpp"
#include "orth/line.hpp"
#include "orth/maps.hpp"
#include "orth/models.hpp"
#include "orth/relation.hpp"

namespace orthcheck {

using json = nlohmann::ordered_json;

enum class Kind { bornology, topology, metric, embedded_pair, explicit_relation, symbolic_line, graph };

std::string to_string(Kind k);

// Schema errors carry a JSON pointer to the offending field.
orth::InputError schema_error(const std::string& path, const std::string& what);

struct FiniteMapSpec {
  orth::GroundMap map;
  std::shared_ptr<struct Model> target;  // null: the model itself
};

struct Model {
  Kind kind = Kind::bornology;
  json doc;

  // Finite kinds. For embedded pairs `rel` is the relation selected by "scale" and `other`
  // the remaining one.
  std::optional<orth::FiniteRelation> rel;
  std::optional<orth::FiniteRelation> other;
  std::optional<orth::FiniteTopology> topology;
  std::optional<orth::EmbeddedPair> pair;

  // Symbolic line.
  orth::LineRule rule = orth::LineRule::metric;

  // Graph.
  std::shared_ptr<orth::GraphGenerator> generator;
  int radius = 0;

  bool finite() const { return rel.has_value(); }
  const orth::GroundSet& ground() const { return rel->ground(); }

  orth::Mask finite_set(const std::string& ref) const;
  orth::EPS line_set(const std::string& ref) const;
  orth::VertexSet graph_set(const orth::GraphBall& ball, const std::string& ref) const;
  std::vector<std::string> subset_names() const;

  FiniteMapSpec finite_map(const std::string& name) const;
  orth::EventuallyAffineMap line_map(const std::string& name) const;
  orth::PartialChain partial_function(const std::string& name, int& resolution) const;
};

Model load_model(const std::string& path);
Model parse_model(const json& doc);

// Sets in reports: finite sets as name lists, line sets as progression descriptions.
json encode(const orth::GroundSet& g, orth::Mask m);
json encode(const orth::EPS& s);
orth::Mask decode_finite(const orth::GroundSet& g, const json& j, const std::string& path);
orth::EPS decode_line(const json& j, const std::string& path);

}  // namespace orthcheck
