#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dismed/error.hpp"
#include "dismed/symbols.hpp"

namespace dismed {

enum class ListingState : std::uint8_t { E_s, E_p, E_m };

// Where a response function or a symbol lookup lives: the base scenario or
// one listing state's overlay.
enum class Context : std::uint8_t { Base, E_s, E_p, E_m };

constexpr Context context_of(ListingState s) {
  switch (s) {
    case ListingState::E_s: return Context::E_s;
    case ListingState::E_p: return Context::E_p;
    case ListingState::E_m: return Context::E_m;
  }
  return Context::Base;
}

std::string_view state_name(ListingState s);
std::string_view context_name(Context c);
std::optional<ListingState> state_from_name(std::string_view name);
std::optional<Context> context_from_name(std::string_view name);

struct Valuation {
  double P = 0;    // appraised value, > 0
  double P_b = 0;  // buyer's value, > 0
  double P_s = 0;  // seller's value, any sign
  double c = 0;    // commission rate, (0, 1)
};

struct BrokerCosts {
  double B_b = 0;
  double B_n = 0;
  double B_op = 0;
  double B_s = 0;
  double B_i = 0;   // per period
  double B_it = 0;  // present value
  int prospect_count = 1;
};

struct InformationBundle {
  double I = 0;  // stored redundantly; must equal I_p + I_i
  double I_p = 0;
  double I_i = 0;
  double I_o = 0;
};

struct SearchCosts {
  double psi_b = 0;
  double psi_bi = 0;
  double psi_s = 0;
  double psi_si = 0;
  double psi_sb = 0;
  // Share of buyer search time that is compensated ("valued") rather than
  // leisure time.
  std::optional<double> valued_time_share;
};

struct UtilityProfile {
  double U_ip = 0;
  double U_iw = 0;
  double U_a = 0;
  double U_sp = 0;
  double U_sw = 0;
  double U_sa = 0;
};

struct ClosingCosts {
  double pi_b = 0;
  double pi_i = 0;
  double pi_sb = 0;
  double pi_s = 0;
};

struct StateOverlay {
  ListingState state = ListingState::E_s;
  std::map<Symbol, double> overrides;

  friend bool operator==(const StateOverlay&, const StateOverlay&) = default;
};

struct ListingStates {
  double E_s = 0;
  double E_p = 0;
  double E_m = 0;
  std::array<std::optional<StateOverlay>, 3> overlays;

  double value(ListingState s) const;
  const StateOverlay* overlay(ListingState s) const;
};

struct ClosingProbabilities {
  double rho_p = 0;
  double rho_i = 0;
  double rho_s = 0;
};

struct BrokerEffortCapital {
  double u_hat = 0;
  double u_hat_s = 0;
  double RC_br = 0;
  double SC_br = 0;
};

struct PartySocialCapital {
  double SC_s = 0;
  double SC_b = 0;
};

enum class ResponseKind : std::uint8_t { Polynomial, PiecewiseLinear };

struct Knot {
  double x = 0;
  double y = 0;
  friend bool operator==(const Knot&, const Knot&) = default;
};

// Declared functional link driven = f(driver). Polynomials are written in
// powers of (driver - center); piecewise-linear responses extrapolate along
// their end segments.
struct ResponseFunction {
  Symbol driven = Symbol::P;
  Symbol driver = Symbol::P;
  ResponseKind kind = ResponseKind::Polynomial;
  std::vector<double> coeffs;
  double center = 0;
  std::vector<Knot> knots;
  Context context = Context::Base;

  double operator()(double x) const;
  // Adds dy to every output value.
  void shift(double dy);

  friend bool operator==(const ResponseFunction&, const ResponseFunction&) = default;
};

inline constexpr std::size_t kMaxPolynomialDegree = 6;

enum class PathKind : std::uint8_t { Constant, Linear, Samples };

struct TimePath {
  Symbol symbol = Symbol::P;
  PathKind kind = PathKind::Constant;
  double value = 0;  // constant
  double intercept = 0;
  double slope = 0;
  std::vector<double> times;  // samples, strictly increasing
  std::vector<double> values;

  double at(double t) const;
  bool covers(double horizon) const;

  friend bool operator==(const TimePath&, const TimePath&) = default;
};

struct Scenario {
  std::string label;
  Valuation valuation;
  BrokerCosts broker_costs;
  InformationBundle info;
  SearchCosts search;
  UtilityProfile utility;
  ClosingCosts closing;
  ListingStates states;
  ClosingProbabilities probs;
  BrokerEffortCapital effort;
  PartySocialCapital social;
  std::vector<ResponseFunction> responses;
  std::vector<TimePath> time_paths;
};

// Base (non-composite) symbol access.
double get_symbol(const Scenario& s, Symbol sym);
void set_symbol(Scenario& s, Symbol sym, double value);

SymbolValues base_values(const Scenario& s);
// Base values with the overlay of `ctx` applied.
SymbolValues context_values(const Scenario& s, Context ctx);

// Looks up (driven, driver) in `ctx`, falling back to the base context.
const ResponseFunction* find_response(const Scenario& s, Symbol driven, Symbol driver, Context ctx);
const TimePath* find_time_path(const Scenario& s, Symbol sym);

// Copy of `s` with one base symbol replaced. Keeps I = I_p + I_i when a
// component changes and shifts every response vertically so that it still
// passes through its (driver, driven) base point in its own context.
Scenario with_symbol(const Scenario& s, Symbol sym, double value);
void reanchor_responses(Scenario& s);

enum class ViolationCode {
  NonFinite,
  NonPositiveValue,
  CommissionOutOfRange,
  ProbabilityOutOfRange,
  InformationIdentity,
  InformationInclusion,
  ProspectCount,
  ValuedTimeShareOutOfRange,
  SelfReferentialResponse,
  DuplicateResponse,
  PolynomialDegree,
  EmptyResponse,
  KnotOrder,
  ResponseInconsistent,
  InformationMonotonicity,
  OverlayState,
  OverlayComposite,
  TimePathInvalid,
  DuplicateTimePath,
  UnknownSymbol,
};

std::string_view violation_name(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::string path;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationCode code) const;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

ValidationReport validate_scenario(const Scenario& s);

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace dismed
