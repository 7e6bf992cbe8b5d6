#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

using namespace orthcheck;

namespace {

const char* kCommands =
    "check-axioms, classify, profile, topology, perp, translate, map-check, quotient, parallel, "
    "functions (separate|paste|extend), hyperbolic, ends, boundary, verify-compactification, oracle";

int emit(const Report& r, bool as_json) {
  if (as_json)
    std::cout << r.to_json().dump(2) << "\n";
  else
    std::cout << r.to_text();
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check orthogonality models and the structures they induce.\ncommands: " +
               std::string(kCommands)};
  Options opt;
  std::vector<std::string> args;
  std::size_t budget_n = 0;
  int radius = 0, k = 0;
  std::string threshold;

  app.add_option("command", opt.command, "command to run")->required();
  app.add_option("args", args, "[mode] model.json");
  app.add_option("--budget-n", budget_n, "largest ground set scanned exhaustively")->envname("BUDGET_N");
  app.add_option("--oracle-window", opt.oracle_window, "window of the line oracles")
      ->envname("ORACLE_WINDOW");
  app.add_option("--resolution", opt.resolution, "levels of chain functions")->envname("RESOLUTION");
  app.add_option("--lattice-cap", opt.lattice_cap, "largest observable lattice")->envname("LATTICE_CAP");
  app.add_option("--radius", radius, "graph ball radius")->envname("RADIUS");
  app.add_flag("--json", opt.json, "machine-readable report")->envname("JSON");
  app.add_option("--seed", opt.seed, "seed for sampled checks")->envname("SEED");
  app.add_option("--samples", opt.samples, "samples for sampled checks");
  app.add_option("--set", opt.sets, "named subset (or {a,b} on finite models)");
  app.add_option("--map", opt.maps, "named map");
  app.add_option("--function", opt.functions, "named partial function");
  app.add_option("--to", opt.to, "translate target: proximity, nbhd or resemblance");
  app.add_option("--variant", opt.variant, "topology: perp or closed");
  app.add_option("--ends", opt.ends_model, "line candidate: two-ends, glued-ends or integers");
  app.add_option("--k", k, "radius of the removed ball");
  app.add_option("--threshold", threshold, "Gromov-product threshold (rational)");
  app.add_option("--replay", opt.replay_path, "oracle: replay the stanzas of a JSON report");

  Report report;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }
  if (app.count("--budget-n") || std::getenv("BUDGET_N")) opt.budget_n = budget_n;
  if (app.count("--radius") || std::getenv("RADIUS")) opt.radius = radius;
  if (app.count("--k")) opt.k = k;
  if (!threshold.empty()) opt.threshold = threshold;

  report.command = opt.command;
  try {
    if (opt.command == "functions") {
      if (args.size() != 2) throw orth::InputError("usage: functions separate|paste|extend model.json");
      opt.mode = args[0];
      opt.model_path = args[1];
    } else if (args.size() == 1) {
      opt.model_path = args[0];
    } else if (!(args.empty() && opt.command == "oracle" && !opt.replay_path.empty())) {
      throw orth::InputError("usage: orthcheck " + opt.command + " model.json");
    }
    report.model = opt.model_path;
    run_command(opt, report);
  } catch (const orth::BudgetExceeded& e) {
    report.forced = Status::budget;
    report.error = {{"kind", "budget"}, {"message", e.what()}, {"dimension", e.dimension()},
                    {"requested", e.requested()}, {"limit", e.limit()}};
  } catch (const orth::InputError& e) {
    report.forced = Status::error;
    report.error = {{"kind", "input"}, {"message", e.what()}};
  } catch (const orth::Error& e) {
    report.forced = Status::error;
    report.error = {{"kind", "internal"}, {"message", e.what()}};
  }
  return emit(report, opt.json);
}
