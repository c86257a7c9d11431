#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dismed/scenario.hpp"

namespace dismed {

enum class ObjectiveMode : std::uint8_t { Combined, WeightedSum };

struct DecisionVector {
  double B_b = 0;
  double B_s = 0;
  double B_i = 0;
  double B_n = 0;
  ListingState state = ListingState::E_m;

  double cost() const { return B_b + B_s + B_i + B_n; }
  double& operator[](std::size_t i);
  double operator[](std::size_t i) const;

  friend bool operator==(const DecisionVector&, const DecisionVector&) = default;
};

inline constexpr std::array<Symbol, 4> kDecisionSymbols{Symbol::B_b, Symbol::B_s, Symbol::B_i,
                                                        Symbol::B_n};

struct Range {
  double lo = 0;
  double hi = 0;
  double width() const { return hi - lo; }
};

struct DecisionBounds {
  std::array<Range, 4> range;  // B_b, B_s, B_i, B_n

  // All four fixed at the scenario's base values.
  static DecisionBounds fixed_at(const Scenario& s);
  // Throws Error(InvalidArgument) for non-finite or inverted ranges.
  void check() const;
};

struct OptimizerConfig {
  ObjectiveMode mode = ObjectiveMode::Combined;
  double w_capital = 1.0;
  double w_cost = 1.0;
  int restarts = 8;
  std::uint64_t seed = 0;
  int max_iterations = 100000;  // per restart
  int workers = 0;              // 0: hardware concurrency

  friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

struct OptResult {
  DecisionVector decision;
  double objective = 0;
  double capital = 0;
  double cost = 0;
  bool feasible = false;
  int iterations = 0;
  ObjectiveMode mode = ObjectiveMode::Combined;
};

struct ParetoPoint {
  double cost = 0;
  double capital = 0;
  DecisionVector decision;
};

// State whose overlay the broker problem is evaluated under: the smallest
// listing-state value.
ListingState broker_state(const Scenario& s);

// SC_br(d) + RC_br(d). Each capital symbol moves from its stored value by the
// change of every declared response on a decision field:
//   X(d) = X + sum_k [f_k(d_k) - f_k(x_k)].
// Throws Error(MissingCapitalResponse) if neither SC_br nor RC_br responds
// to any decision field.
double broker_capital(const Scenario& s, const DecisionVector& d);

double broker_objective(const Scenario& s, const DecisionVector& d, ObjectiveMode mode,
                        double w_capital = 1.0, double w_cost = 1.0);

// cP > max(0, B_b + B_s + B_i), checked as cP >= ... + 1e-9 max(1, cP).
bool commission_covers(const Scenario& s, const DecisionVector& d);

OptResult optimize_broker(const Scenario& s, const DecisionBounds& bounds,
                          const OptimizerConfig& cfg);

// Largest capital with cost() <= budget; ties go to the cheaper point.
OptResult maximize_capital(const Scenario& s, const DecisionBounds& bounds, double budget,
                           const OptimizerConfig& cfg);

// Cost range [lo, hi] over which the ε-constraint sweep runs; nullopt when no
// point of the box satisfies the commission constraint.
std::optional<Range> feasible_cost_range(const Scenario& s, const DecisionBounds& bounds);

std::vector<ParetoPoint> pareto_sweep(const Scenario& s, const DecisionBounds& bounds, int k,
                                      const OptimizerConfig& cfg);

}  // namespace dismed
