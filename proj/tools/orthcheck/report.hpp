#pragma once

#include <string>
#include <vector>

#include "model.hpp"

namespace orthcheck {

struct Verdict {
  std::string name;
  bool holds = true;
  // Informational verdicts describe the model and never fail the command.
  bool informational = false;
  std::string detail;
  json witness = json::array();
  json replay = json::array();
};

// Replay stanzas: one primitive check each, with the answer the report relied on.
//   {"check": "orth",     "relation": R, "sets": [A, C], "expected": bool}
//   {"check": "bounded",  "relation": R, "sets": [B],    "expected": bool}
//   {"check": "axiom",    "relation": R, "axiom": name, "sets": [...], "expected": true}
//   {"check": "perp",     "relation": R, "sets": [A, P], "expected": true}
//   {"check": "span",     "relation": R, "sets": [C, D], "expected": bool}
//   {"check": "distance", "vertices": [u, v], "expected": d}
// R is "model", "other" (the second relation of an embedded pair) or "map:<name>" (a map's
// target).
json replay_orth(const std::string& relation, json a, json c, bool expected);
json replay_bounded(const std::string& relation, json b, bool expected);

enum class Status { pass, fail, error, budget };
std::string to_string(Status s);

struct Report {
  std::string command;
  std::string model;
  std::vector<std::string> summary;
  json facts = json::object();
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  std::optional<Status> forced;
  json error;

  Status status() const;
  int exit_code() const;
  json to_json() const;
  std::string to_text() const;
};

}  // namespace orthcheck
