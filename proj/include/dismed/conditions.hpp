#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dismed/expression.hpp"

namespace dismed {

enum class ConditionSet : std::uint8_t { Buyer, BrokerWeb, Seller };

constexpr int condition_count(ConditionSet set) {
  switch (set) {
    case ConditionSet::Buyer: return 19;
    case ConditionSet::BrokerWeb: return 7;
    case ConditionSet::Seller: return 18;
  }
  return 0;
}

// "buyer", "broker", "seller"
std::string_view set_name(ConditionSet set);
std::optional<ConditionSet> set_from_name(std::string_view name);

struct ConditionId {
  ConditionSet set = ConditionSet::Buyer;
  int index = 1;  // 1-based, printed order

  std::string str() const;  // "B5", "W3", "S14"
  static std::optional<ConditionId> parse(std::string_view text);

  auto operator<=>(const ConditionId&) const = default;
};

std::vector<ConditionId> conditions_of(ConditionSet set);
std::vector<ConditionId> all_conditions();

enum class Status : std::uint8_t { Satisfied, Violated, VacuouslySatisfied, Indeterminate };
std::string_view status_name(Status s);

enum class Comparison : std::uint8_t { Greater, Less, ApproxEqual, ApproxZero };

// Where one side of an inequality is evaluated.
enum class ContextRule : std::uint8_t {
  Base,
  ArgmaxAll,        // overlay of argmax(E_m, E_p, E_s)
  ArgmaxExclusive,  // overlay of argmax(E_s, E_p)
  SemiExclusive,    // overlay of E_p
};

Context resolve_context(const Scenario& s, ContextRule rule);

struct Inequality {
  Expression lhs;
  Comparison cmp = Comparison::Greater;
  Expression rhs;  // unused for ApproxZero
  ContextRule lhs_ctx = ContextRule::Base;
  ContextRule rhs_ctx = ContextRule::Base;

  std::string text() const;
};

struct ConditionDefinition {
  ConditionId id;
  std::optional<Inequality> guard;
  std::vector<Inequality> parts;  // all must hold
  std::vector<std::string> notes;

  std::string text() const;
};

ConditionDefinition condition_definition(ConditionId id, const EvalConfig& cfg);

struct PartTrace {
  std::string text;
  ExtendedValue lhs;
  ExtendedValue rhs;
  Truth truth = Truth::Unknown;
  std::optional<double> margin;

  friend bool operator==(const PartTrace&, const PartTrace&) = default;
};

struct ConditionVerdict {
  ConditionId id;
  Status status = Status::Indeterminate;
  ExtendedValue lhs;  // binding part
  ExtendedValue rhs;
  std::optional<Truth> guard_status;
  bool skipped = false;  // guard failed under GuardMode::Skip
  // Positive exactly when the condition holds; the minimum over parts.
  std::optional<double> margin;
  std::vector<PartTrace> parts;
  std::vector<std::string> notes;

  friend bool operator==(const ConditionVerdict&, const ConditionVerdict&) = default;
};

// Truth of one comparison and its signed slack (positive when it holds).
Truth compare(const ExtendedValue& lhs, Comparison cmp, const ExtendedValue& rhs,
              const EvalConfig& cfg, std::optional<double>* margin = nullptr);

ConditionVerdict eval_condition(const Scenario& s, ConditionId id, const EvalConfig& cfg);

enum class AggregateStatus : std::uint8_t { Satisfied, NotSatisfied, Indeterminate };
std::string_view aggregate_name(AggregateStatus a);

enum class AggregationMode : std::uint8_t { Conjunction, Quorum };

struct AggregationConfig {
  AggregationMode mode = AggregationMode::Conjunction;
  double q = 1.0;
  bool violations_blocking = false;

  friend bool operator==(const AggregationConfig&, const AggregationConfig&) = default;
};

// Skipped verdicts are left out of the count entirely.
AggregateStatus aggregate(const std::vector<ConditionVerdict>& verdicts,
                          const AggregationConfig& agg);

struct ConditionReport {
  std::string scenario_label;
  ConditionSet set = ConditionSet::Buyer;
  std::vector<ConditionVerdict> verdicts;
  AggregateStatus aggregate = AggregateStatus::Indeterminate;
  EvalConfig eval;
  AggregationConfig agg;

  friend bool operator==(const ConditionReport&, const ConditionReport&) = default;
};

ConditionReport eval_condition_set(const Scenario& s, ConditionSet set, const EvalConfig& cfg,
                                   const AggregationConfig& agg = {});

struct DecisionSummary {
  AggregateStatus buyer_disintermediates = AggregateStatus::Indeterminate;
  AggregateStatus broker_provides_web_info = AggregateStatus::Indeterminate;
  AggregateStatus seller_disintermediates = AggregateStatus::Indeterminate;
  ConditionReport buyer;
  ConditionReport broker;
  ConditionReport seller;
};

DecisionSummary decide(const Scenario& s, const EvalConfig& cfg, const AggregationConfig& agg = {});

}  // namespace dismed
