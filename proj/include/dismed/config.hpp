#pragma once

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "dismed/conditions.hpp"
#include "dismed/optimizer.hpp"

namespace dismed {

enum class OutputFormat : std::uint8_t { Json, Csv };

struct RunConfig {
  EvalConfig eval;
  AggregationConfig agg;
  OptimizerConfig optimizer;
  int workers = 1;
  OutputFormat format = OutputFormat::Json;
  // Raw bounds object; resolved against a scenario with parse_bounds.
  std::optional<nlohmann::json> bounds;
};

// Closed schema; every key optional:
// {"rel_tol", "zero_tol", "fd_step_scale",
//  "aggregation": {"mode": "conjunction"|"quorum", "q", "violations_blocking"},
//  "intersection": "product"|"min", "guard_mode": "vacuous"|"skip"|"violated",
//  "b1_guard": "guard"|"joint", "seller_uses_U_sa",
//  "horizon": {"T", "dt"},
//  "optimizer": {"mode": "combined"|"weighted_sum", "weights": [w_capital, w_cost],
//                "restarts", "seed", "max_iterations"},
//  "workers", "format": "json"|"csv", "bounds": {...}}
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

// {"B_b": [lo, hi], ...}; fields left out are fixed at the scenario value.
DecisionBounds parse_bounds(const nlohmann::json& j, const Scenario& s);
DecisionBounds load_bounds(const std::filesystem::path& path, const Scenario& s);

nlohmann::ordered_json run_config_to_json(const RunConfig& c);
nlohmann::ordered_json eval_config_to_json(const EvalConfig& e);
nlohmann::ordered_json aggregation_to_json(const AggregationConfig& a);

}  // namespace dismed
