#include "dismed/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace dismed {

ListingState argmax_state(const ListingStates& states) {
  static constexpr ListingState kPrecedence[] = {ListingState::E_s, ListingState::E_p,
                                                 ListingState::E_m};
  return argmax_state(states, kPrecedence);
}

ListingState argmax_state(const ListingStates& states, std::span<const ListingState> among) {
  if (among.empty()) throw Error(Errc::InvalidArgument, "argmax over no states");
  ListingState best = among.front();
  for (auto s : among.subspan(1)) {
    if (states.value(s) > states.value(best)) best = s;
  }
  return best;
}

ListingState argmin_state(const ListingStates& states) {
  ListingState best = ListingState::E_m;
  for (auto s : {ListingState::E_p, ListingState::E_s}) {
    if (states.value(s) < states.value(best)) best = s;
  }
  return best;
}

bool approx_equal(double a, double b, double rel_tol) {
  constexpr double kFloor = 1e-12;
  const double scale = std::max({std::fabs(a), std::fabs(b), kFloor});
  return std::fabs(a - b) <= rel_tol * scale;
}

double joint_prob(double a, double b, JointMode mode) {
  return mode == JointMode::Product ? a * b : std::min(a, b);
}

double symbol_value(Symbol sym, const std::function<double(Symbol)>& base_lookup,
                    JointMode mode) {
  const auto& info = symbol_info(sym);
  auto parts = info.components();
  switch (info.op) {
    case CompositeOp::None:
      return base_lookup(sym);
    case CompositeOp::Sum: {
      double total = 0;
      for (auto p : parts) total += base_lookup(p);
      return total;
    }
    case CompositeOp::Max: {
      double best = base_lookup(parts[0]);
      for (auto p : parts.subspan(1)) best = std::max(best, base_lookup(p));
      return best;
    }
    case CompositeOp::Joint:
      return joint_prob(base_lookup(parts[0]), base_lookup(parts[1]), mode);
  }
  return base_lookup(sym);
}

double symbol_value(Symbol sym, const SymbolValues& values, JointMode mode) {
  return symbol_value(sym, [&](Symbol b) { return values[index_of(b)]; }, mode);
}

double default_step(double x0, double scale) { return scale * std::max(1.0, std::fabs(x0)); }

double central_difference(const std::function<double(double)>& f, double x0, int order,
                          double h) {
  switch (order) {
    case 1:
      return (f(x0 + h) - f(x0 - h)) / (2 * h);
    case 2:
      return (f(x0 + h) - 2 * f(x0) + f(x0 - h)) / (h * h);
    case 3:
      return (f(x0 + 2 * h) - 2 * f(x0 + h) + 2 * f(x0 - h) - f(x0 - 2 * h)) / (2 * h * h * h);
    default:
      throw Error(Errc::InvalidArgument, "finite-difference order must be 1, 2 or 3");
  }
}

ExtendedValue finite_difference(const Scenario& s, Symbol driven, Symbol driver, int order,
                                double h, Context ctx, const EvalConfig& cfg) {
  if (order < 1 || order > 3) {
    throw Error(Errc::InvalidArgument, "finite-difference order must be 1, 2 or 3");
  }
  const ResponseFunction* rf = find_response(s, driven, driver, ctx);
  if (rf == nullptr) return ExtendedValue::indeterminate();

  const double x0 = symbol_value(driver, context_values(s, ctx), cfg.joint);
  if (h <= 0) h = default_step(x0, cfg.fd_step_scale);
  const double d = central_difference([rf](double x) { return (*rf)(x); }, x0, order, h);
  if (!std::isfinite(d)) return ExtendedValue::indeterminate();
  return ExtendedValue::point(d);
}

}  // namespace dismed
