#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dismed/conditions.hpp"

namespace dismed {

enum class MarginalKind : std::uint8_t { Point, Uniform, Normal, Discrete };

struct Marginal {
  MarginalKind kind = MarginalKind::Point;
  double value = 0;          // point
  double lo = 0, hi = 0;     // uniform
  double mean = 0, sd = 0;   // normal
  std::vector<double> values;   // discrete
  std::vector<double> weights;  // discrete, not necessarily normalised
};

// Independent per-symbol marginals. Symbols without a marginal keep their
// base value. Draws outside a symbol's domain are rejected as a whole
// scenario, which truncates each marginal to its domain.
struct DistributionSpec {
  std::map<Symbol, Marginal> marginals;
};

// {"marginals": {"c": {"kind": "uniform", "lo": 0.04, "hi": 0.07}, ...}}
DistributionSpec parse_distribution(const nlohmann::json& j);
DistributionSpec load_distribution(const std::filesystem::path& path);
nlohmann::ordered_json distribution_to_json(const DistributionSpec& d);

struct SampleSet {
  std::vector<Scenario> scenarios;
  std::uint64_t rejections = 0;
};

// Draw i, attempt a uses its own engine keyed by (seed, i, a), so the
// sequence is the same for any worker count. Throws Error(RejectionLimit)
// past 1000 n rejections.
SampleSet sample_scenarios(const Scenario& base, const DistributionSpec& dist, std::size_t n,
                           std::uint64_t seed, int workers = 1);

// The scenario produced by one draw attempt, before validation.
Scenario draw_scenario(const Scenario& base, const DistributionSpec& dist, std::uint64_t seed,
                       std::uint64_t draw, std::uint64_t attempt);

struct ConditionFrequency {
  ConditionId id;
  std::uint64_t satisfied = 0;  // Satisfied + VacuouslySatisfied
  std::uint64_t violated = 0;
  std::uint64_t indeterminate = 0;
  double frequency = 0;
  double indeterminate_rate = 0;
};

struct SetRate {
  ConditionSet set = ConditionSet::Buyer;
  std::uint64_t satisfied = 0;
  std::uint64_t not_satisfied = 0;
  std::uint64_t indeterminate = 0;
  double rate = 0;
  double indeterminate_rate = 0;
};

struct SweepStats {
  std::string scenario_label;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t rejections = 0;
  std::string stream;
  std::vector<ConditionFrequency> conditions;
  std::vector<SetRate> sets;
  EvalConfig eval;
  AggregationConfig agg;
};

// `only` restricts the sweep to one condition set.
SweepStats run_sweep(const Scenario& base, const DistributionSpec& dist, std::size_t n,
                     std::uint64_t seed, const EvalConfig& cfg, const AggregationConfig& agg = {},
                     int workers = 1, std::optional<ConditionSet> only = std::nullopt);

struct SensitivityResult {
  ConditionId condition;
  Symbol parameter = Symbol::P;
  double base_value = 0;
  double rel_step = 0;
  Status status = Status::Indeterminate;
  double margin = 0;
  std::optional<double> margin_minus;  // at parameter * (1 - rel_step)
  std::optional<double> margin_plus;   // at parameter * (1 + rel_step)
  std::optional<double> elasticity;
  std::optional<double> delta_to_flip;  // signed change of the parameter
};

// Throws Error(IndeterminateAtBase) if the condition is vacuous or
// undecided at the base point.
SensitivityResult sensitivity(const Scenario& s, ConditionId id, Symbol parameter, double rel_step,
                              const EvalConfig& cfg);

}  // namespace dismed
