#pragma once

#include <functional>
#include <span>

#include "dismed/interval.hpp"
#include "dismed/scenario.hpp"

namespace dismed {

enum class JointMode : std::uint8_t { Product, Min };

// What a failed guard does to its host condition.
enum class GuardMode : std::uint8_t { Vacuous, Skip, Violated };

// How B1's "(U_iw > U_ip)" qualifier is read.
enum class B1Reading : std::uint8_t { Guard, Joint };

struct EvalConfig {
  double rel_tol = 0.05;         // for "≈"
  double zero_tol = 0.01;        // for "≈ 0"
  double fd_step_scale = 1e-3;   // h = scale * max(1, |x0|)
  JointMode joint = JointMode::Product;
  GuardMode guard = GuardMode::Vacuous;
  B1Reading b1 = B1Reading::Guard;
  bool seller_uses_U_sa = false;
  double horizon = 1.0;
  double dt = 0.01;

  friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

// Largest state value; ties resolve E_s > E_p > E_m.
ListingState argmax_state(const ListingStates& states);
// Same rule restricted to `among` (listed in precedence order).
ListingState argmax_state(const ListingStates& states, std::span<const ListingState> among);
// Smallest state value; ties resolve E_m > E_p > E_s.
ListingState argmin_state(const ListingStates& states);

bool approx_equal(double a, double b, double rel_tol);

double joint_prob(double a, double b, JointMode mode);

// Value of any symbol (base or composite) given a base-symbol lookup.
double symbol_value(Symbol sym, const std::function<double(Symbol)>& base_lookup, JointMode mode);
double symbol_value(Symbol sym, const SymbolValues& values, JointMode mode);

double default_step(double x0, double scale);

// Central-difference stencils of order 1..3 at x0.
double central_difference(const std::function<double(double)>& f, double x0, int order, double h);

// Finite-difference derivative of `driven` with respect to `driver` through
// the declared response function; Indeterminate when no link is declared.
// h <= 0 selects the default step.
ExtendedValue finite_difference(const Scenario& s, Symbol driven, Symbol driver, int order,
                                double h, Context ctx, const EvalConfig& cfg);

}  // namespace dismed
