#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orth/boundary.hpp"
#include "report.hpp"

namespace orthcheck {

struct Options {
  std::string command;
  std::string model_path;
  std::optional<std::size_t> budget_n;
  orth::Int oracle_window = 10000;
  int resolution = 4;
  std::size_t lattice_cap = orth::kDefaultLatticeCap;
  std::optional<int> radius;
  bool json = false;
  std::uint64_t seed = 1;
  std::size_t samples = 2000;

  std::vector<std::string> sets;
  std::vector<std::string> maps;
  std::vector<std::string> functions;
  std::string to;         // translate target
  std::string mode;       // functions: separate | paste | extend
  std::string variant = "perp";   // topology: perp | closed
  std::string ends_model = "two-ends";
  std::optional<int> k;   // graph commands: removed-ball radius
  std::optional<std::string> threshold;  // hyperbolic: Gromov-product threshold
  std::string replay_path;
};

orth::Budget make_budget(const Options& opt);

// The relation a replay stanza or a command refers to: "model", "other" or "map:<name>".
orth::FiniteRelation resolve_relation(const Model& m, const std::string& name);

void run_command(const Options& opt, Report& report);
void run_oracle(const Options& opt, Report& report);

}  // namespace orthcheck
