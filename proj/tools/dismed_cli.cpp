// dismed: evaluate, optimize and stress-test broker disintermediation
// conditions over scenario files.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dismed/config.hpp"
#include "dismed/market_sim.hpp"
#include "dismed/report.hpp"

namespace {

using namespace dismed;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kInfeasible = 3;
constexpr int kInternal = 4;

struct Common {
  std::string config;
  std::string format;
  std::string out;
};

struct OutputFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunConfig resolve_config(const Common& c) {
  RunConfig cfg;
  if (!c.config.empty()) {
    cfg = load_run_config(c.config);
  } else if (const char* env = std::getenv("DISMED_CONFIG"); env != nullptr && *env != '\0') {
    cfg = load_run_config(env);
  }
  if (c.format == "json") cfg.format = OutputFormat::Json;
  if (c.format == "csv") cfg.format = OutputFormat::Csv;
  return cfg;
}

void emit(const Common& c, const std::string& text) {
  std::optional<std::filesystem::path> out;
  if (!c.out.empty()) out = c.out;
  try {
    render_report(text, out);
  } catch (const Error& e) {
    throw OutputFailure(e.what());
  }
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "Run configuration file (default: $DISMED_CONFIG)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out, "Write the report here instead of standard output");
}

int cmd_validate(const std::string& file, const Common& c) {
  const RunConfig cfg = resolve_config(c);
  const std::string label = std::filesystem::path(file).stem().string();
  ValidationReport report;
  try {
    load_scenario(file);
  } catch (const ValidationError& e) {
    report = e.report();
  }
  emit(c, cfg.format == OutputFormat::Csv ? validation_csv(report)
                                          : json_text(validation_to_json(label, report)));
  if (!report.ok()) {
    for (const auto& v : report.violations) {
      std::cerr << "dismed: " << violation_name(v.code) << " at " << v.path << ": " << v.message
                << "\n";
    }
    return kInputError;
  }
  return kOk;
}

int cmd_decide(const std::string& file, const Common& c) {
  const RunConfig cfg = resolve_config(c);
  const Scenario s = load_scenario(file);
  const DecisionSummary d = decide(s, cfg.eval, cfg.agg);
  emit(c, cfg.format == OutputFormat::Csv
              ? conditions_csv({&d.buyer, &d.broker, &d.seller})
              : json_text(decision_to_json(d, cfg)));
  return kOk;
}

int cmd_conditions(const std::string& file, const std::string& set_text, const Common& c) {
  const RunConfig cfg = resolve_config(c);
  const Scenario s = load_scenario(file);
  const auto set = set_from_name(set_text);
  const ConditionReport r = eval_condition_set(s, *set, cfg.eval, cfg.agg);
  emit(c, cfg.format == OutputFormat::Csv ? conditions_csv({&r})
                                          : json_text(conditions_to_json(r, cfg)));
  return kOk;
}

DecisionBounds resolve_bounds(const std::string& path, const RunConfig& cfg, const Scenario& s) {
  if (!path.empty()) return load_bounds(path, s);
  if (cfg.bounds) return parse_bounds(*cfg.bounds, s);
  throw Error(Errc::InvalidArgument, "no decision bounds: pass --bounds or set \"bounds\" in the config");
}

int cmd_optimize(const std::string& file, const std::string& bounds_path, const Common& c) {
  const RunConfig cfg = resolve_config(c);
  const Scenario s = load_scenario(file);
  const DecisionBounds b = resolve_bounds(bounds_path, cfg, s);
  const OptResult r = optimize_broker(s, b, cfg.optimizer);
  emit(c, cfg.format == OutputFormat::Csv ? opt_result_csv(r)
                                          : json_text(opt_result_to_json(r, b, cfg)));
  if (!r.feasible) {
    std::cerr << "dismed: no point in the bounds satisfies cP > max(0, B_b + B_s + B_i)\n";
    return kInfeasible;
  }
  return kOk;
}

int cmd_pareto(const std::string& file, const std::string& bounds_path, int k, const Common& c) {
  const RunConfig cfg = resolve_config(c);
  const Scenario s = load_scenario(file);
  const DecisionBounds b = resolve_bounds(bounds_path, cfg, s);
  const auto pts = pareto_sweep(s, b, k, cfg.optimizer);
  emit(c, cfg.format == OutputFormat::Csv ? frontier_csv(pts)
                                          : json_text(frontier_to_json(pts, b, k, cfg)));
  if (pts.empty()) {
    std::cerr << "dismed: no point in the bounds satisfies cP > max(0, B_b + B_s + B_i)\n";
    return kInfeasible;
  }
  return kOk;
}

int cmd_sweep(const std::string& file, const std::string& dist_path, std::size_t n,
              std::uint64_t seed, const std::string& set_text, const Common& c) {
  const RunConfig cfg = resolve_config(c);
  const Scenario s = load_scenario(file);
  const DistributionSpec dist = load_distribution(dist_path);
  std::optional<ConditionSet> only;
  if (!set_text.empty()) only = set_from_name(set_text);
  const SweepStats st = run_sweep(s, dist, n, seed, cfg.eval, cfg.agg, cfg.workers, only);
  emit(c, cfg.format == OutputFormat::Csv ? sweep_csv(st) : json_text(sweep_to_json(st, cfg)));
  return kOk;
}

int cmd_sensitivity(const std::string& file, const std::string& cond, const std::string& param,
                    double rel_step, const Common& c) {
  const RunConfig cfg = resolve_config(c);
  const Scenario s = load_scenario(file);
  const auto id = ConditionId::parse(cond);
  if (!id) throw Error(Errc::InvalidArgument, "unknown condition '" + cond + "'");
  const auto sym = symbol_from_name(param);
  if (!sym) throw Error(Errc::InvalidArgument, "unknown symbol '" + param + "'");
  const SensitivityResult r = sensitivity(s, *id, *sym, rel_step, cfg.eval);
  emit(c, cfg.format == OutputFormat::Csv ? sensitivity_csv(r)
                                          : json_text(sensitivity_to_json(r, cfg)));
  return kOk;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::DivisionByZeroInterval:
    case Errc::IndeterminateIntegrand:
      return kInternal;
    default:
      return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Broker disintermediation decision engine"};
  app.require_subcommand(1);

  Common common;
  std::string file, set_text, bounds_path, dist_path, cond, param;
  int points = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double rel_step = 0.1;

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("file", file, "Scenario file")->required();
  add_common(validate, common);

  auto* decide_cmd = app.add_subcommand("decide", "Evaluate all three condition sets");
  decide_cmd->add_option("file", file, "Scenario file")->required();
  add_common(decide_cmd, common);

  auto* conditions = app.add_subcommand("conditions", "Evaluate one condition set");
  conditions->add_option("file", file, "Scenario file")->required();
  conditions->add_option("--set", set_text, "Condition set")
      ->required()
      ->check(CLI::IsMember({"buyer", "broker", "seller"}));
  add_common(conditions, common);

  auto* optimize = app.add_subcommand("optimize", "Solve the broker cost/capital problem");
  optimize->add_option("file", file, "Scenario file")->required();
  optimize->add_option("--bounds", bounds_path, "Decision bounds file");
  add_common(optimize, common);

  auto* pareto = app.add_subcommand("pareto", "Trace the cost/capital frontier");
  pareto->add_option("file", file, "Scenario file")->required();
  pareto->add_option("--points", points, "Number of cost levels")->required()->check(CLI::Range(2, 100000));
  pareto->add_option("--bounds", bounds_path, "Decision bounds file");
  add_common(pareto, common);

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over a distribution");
  sweep->add_option("file", file, "Base scenario file")->required();
  sweep->add_option("--dist", dist_path, "Distribution file")->required();
  sweep->add_option("-n", n, "Number of draws")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed, "64-bit seed")->required();
  sweep->add_option("--set", set_text, "Restrict to one condition set")
      ->check(CLI::IsMember({"buyer", "broker", "seller"}));
  add_common(sweep, common);

  auto* sens = app.add_subcommand("sensitivity", "Margin sensitivity of one condition");
  sens->add_option("file", file, "Scenario file")->required();
  sens->add_option("--condition", cond, "Condition id, e.g. B5")->required();
  sens->add_option("--param", param, "Symbol to perturb, e.g. psi_b")->required();
  sens->add_option("--rel-step", rel_step, "Relative step for the elasticity");
  add_common(sens, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*validate) return cmd_validate(file, common);
    if (*decide_cmd) return cmd_decide(file, common);
    if (*conditions) return cmd_conditions(file, set_text, common);
    if (*optimize) return cmd_optimize(file, bounds_path, common);
    if (*pareto) return cmd_pareto(file, bounds_path, points, common);
    if (*sweep) return cmd_sweep(file, dist_path, n, seed, set_text, common);
    if (*sens) return cmd_sensitivity(file, cond, param, rel_step, common);
  } catch (const OutputFailure& e) {
    std::cerr << "dismed: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "dismed: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "dismed: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
