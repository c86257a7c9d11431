#include "dismed/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>
#include <utility>

#include "dismed/calculus.hpp"

namespace dismed {
namespace {

double* slot(Scenario& s, Symbol sym) {
  switch (sym) {
    case Symbol::P: return &s.valuation.P;
    case Symbol::P_b: return &s.valuation.P_b;
    case Symbol::P_s: return &s.valuation.P_s;
    case Symbol::c: return &s.valuation.c;
    case Symbol::B_b: return &s.broker_costs.B_b;
    case Symbol::B_n: return &s.broker_costs.B_n;
    case Symbol::B_op: return &s.broker_costs.B_op;
    case Symbol::B_s: return &s.broker_costs.B_s;
    case Symbol::B_i: return &s.broker_costs.B_i;
    case Symbol::B_it: return &s.broker_costs.B_it;
    case Symbol::I: return &s.info.I;
    case Symbol::I_p: return &s.info.I_p;
    case Symbol::I_i: return &s.info.I_i;
    case Symbol::I_o: return &s.info.I_o;
    case Symbol::psi_b: return &s.search.psi_b;
    case Symbol::psi_bi: return &s.search.psi_bi;
    case Symbol::psi_s: return &s.search.psi_s;
    case Symbol::psi_si: return &s.search.psi_si;
    case Symbol::psi_sb: return &s.search.psi_sb;
    case Symbol::U_ip: return &s.utility.U_ip;
    case Symbol::U_iw: return &s.utility.U_iw;
    case Symbol::U_a: return &s.utility.U_a;
    case Symbol::U_sp: return &s.utility.U_sp;
    case Symbol::U_sw: return &s.utility.U_sw;
    case Symbol::U_sa: return &s.utility.U_sa;
    case Symbol::pi_b: return &s.closing.pi_b;
    case Symbol::pi_i: return &s.closing.pi_i;
    case Symbol::pi_sb: return &s.closing.pi_sb;
    case Symbol::pi_s: return &s.closing.pi_s;
    case Symbol::E_s: return &s.states.E_s;
    case Symbol::E_p: return &s.states.E_p;
    case Symbol::E_m: return &s.states.E_m;
    case Symbol::rho_p: return &s.probs.rho_p;
    case Symbol::rho_i: return &s.probs.rho_i;
    case Symbol::rho_s: return &s.probs.rho_s;
    case Symbol::u_hat: return &s.effort.u_hat;
    case Symbol::u_hat_s: return &s.effort.u_hat_s;
    case Symbol::RC_br: return &s.effort.RC_br;
    case Symbol::SC_br: return &s.effort.SC_br;
    case Symbol::SC_s: return &s.social.SC_s;
    case Symbol::SC_b: return &s.social.SC_b;
    default:
      throw Error(Errc::InvalidArgument,
                  "composite symbol '" + std::string(symbol_name(sym)) + "' has no storage");
  }
}

std::string fmt_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round_sig12(double x) { return std::stod(fmt_num(x)); }

}  // namespace

std::string_view state_name(ListingState s) {
  switch (s) {
    case ListingState::E_s: return "E_s";
    case ListingState::E_p: return "E_p";
    case ListingState::E_m: return "E_m";
  }
  return "?";
}

std::string_view context_name(Context c) {
  switch (c) {
    case Context::Base: return "base";
    case Context::E_s: return "E_s";
    case Context::E_p: return "E_p";
    case Context::E_m: return "E_m";
  }
  return "?";
}

std::optional<ListingState> state_from_name(std::string_view name) {
  if (name == "E_s") return ListingState::E_s;
  if (name == "E_p") return ListingState::E_p;
  if (name == "E_m") return ListingState::E_m;
  return std::nullopt;
}

std::optional<Context> context_from_name(std::string_view name) {
  if (name == "base") return Context::Base;
  if (auto st = state_from_name(name)) return context_of(*st);
  return std::nullopt;
}

double ListingStates::value(ListingState s) const {
  switch (s) {
    case ListingState::E_s: return E_s;
    case ListingState::E_p: return E_p;
    case ListingState::E_m: return E_m;
  }
  return E_s;
}

const StateOverlay* ListingStates::overlay(ListingState s) const {
  const auto& o = overlays[static_cast<std::size_t>(s)];
  return o ? &*o : nullptr;
}

double ResponseFunction::operator()(double x) const {
  if (kind == ResponseKind::Polynomial) {
    const double u = x - center;
    double y = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) y = y * u + *it;
    return y;
  }
  if (knots.empty()) return 0;
  if (knots.size() == 1) return knots.front().y;
  // Segment index: first knot strictly right of x, clamped so the end
  // segments extend beyond the knot range.
  auto it = std::upper_bound(knots.begin(), knots.end(), x,
                             [](double v, const Knot& k) { return v < k.x; });
  std::size_t hi = static_cast<std::size_t>(it - knots.begin());
  hi = std::clamp<std::size_t>(hi, 1, knots.size() - 1);
  const Knot& a = knots[hi - 1];
  const Knot& b = knots[hi];
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

void ResponseFunction::shift(double dy) {
  if (kind == ResponseKind::Polynomial) {
    if (coeffs.empty()) coeffs.push_back(0);
    coeffs[0] += dy;
  } else {
    for (auto& k : knots) k.y += dy;
  }
}

double TimePath::at(double t) const {
  switch (kind) {
    case PathKind::Constant: return value;
    case PathKind::Linear: return intercept + slope * t;
    case PathKind::Samples: {
      if (times.empty()) return 0;
      if (t <= times.front()) return values.front();
      if (t >= times.back()) return values.back();
      auto it = std::upper_bound(times.begin(), times.end(), t);
      std::size_t hi = static_cast<std::size_t>(it - times.begin());
      const double t0 = times[hi - 1], t1 = times[hi];
      return values[hi - 1] + (values[hi] - values[hi - 1]) * (t - t0) / (t1 - t0);
    }
  }
  return value;
}

bool TimePath::covers(double horizon) const {
  if (kind != PathKind::Samples) return true;
  return !times.empty() && times.front() <= 0.0 && times.back() >= horizon;
}

double get_symbol(const Scenario& s, Symbol sym) {
  return *slot(const_cast<Scenario&>(s), sym);
}

void set_symbol(Scenario& s, Symbol sym, double value) { *slot(s, sym) = value; }

SymbolValues base_values(const Scenario& s) {
  SymbolValues v{};
  for (std::size_t i = 0; i < kBaseSymbolCount; ++i) {
    v[i] = get_symbol(s, static_cast<Symbol>(i));
  }
  return v;
}

SymbolValues context_values(const Scenario& s, Context ctx) {
  SymbolValues v = base_values(s);
  if (ctx == Context::Base) return v;
  const auto state = static_cast<ListingState>(static_cast<int>(ctx) - 1);
  if (const StateOverlay* o = s.states.overlay(state)) {
    for (const auto& [sym, value] : o->overrides) {
      if (!is_composite(sym)) v[index_of(sym)] = value;
    }
  }
  return v;
}

const ResponseFunction* find_response(const Scenario& s, Symbol driven, Symbol driver,
                                      Context ctx) {
  const ResponseFunction* fallback = nullptr;
  for (const auto& rf : s.responses) {
    if (rf.driven != driven || rf.driver != driver) continue;
    if (rf.context == ctx) return &rf;
    if (rf.context == Context::Base) fallback = &rf;
  }
  return fallback;
}

const TimePath* find_time_path(const Scenario& s, Symbol sym) {
  for (const auto& p : s.time_paths) {
    if (p.symbol == sym) return &p;
  }
  return nullptr;
}

void reanchor_responses(Scenario& s) {
  for (auto& rf : s.responses) {
    const SymbolValues v = context_values(s, rf.context);
    const double x0 = symbol_value(rf.driver, v, JointMode::Product);
    const double y0 = symbol_value(rf.driven, v, JointMode::Product);
    rf.shift(y0 - rf(x0));
  }
}

Scenario with_symbol(const Scenario& s, Symbol sym, double value) {
  if (is_composite(sym)) {
    throw Error(Errc::InvalidArgument,
                "cannot assign composite symbol '" + std::string(symbol_name(sym)) + "'");
  }
  if (sym == Symbol::I) {
    throw Error(Errc::InvalidArgument, "I is determined by I_p + I_i; assign the components");
  }
  Scenario out = s;
  set_symbol(out, sym, value);
  if (sym == Symbol::I_p || sym == Symbol::I_i) out.info.I = out.info.I_p + out.info.I_i;
  reanchor_responses(out);
  return out;
}

std::string_view violation_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::NonFinite: return "NonFinite";
    case ViolationCode::NonPositiveValue: return "NonPositiveValue";
    case ViolationCode::CommissionOutOfRange: return "CommissionOutOfRange";
    case ViolationCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ViolationCode::InformationIdentity: return "InformationIdentity";
    case ViolationCode::InformationInclusion: return "InformationInclusion";
    case ViolationCode::ProspectCount: return "ProspectCount";
    case ViolationCode::ValuedTimeShareOutOfRange: return "ValuedTimeShareOutOfRange";
    case ViolationCode::SelfReferentialResponse: return "SelfReferentialResponse";
    case ViolationCode::DuplicateResponse: return "DuplicateResponse";
    case ViolationCode::PolynomialDegree: return "PolynomialDegree";
    case ViolationCode::EmptyResponse: return "EmptyResponse";
    case ViolationCode::KnotOrder: return "KnotOrder";
    case ViolationCode::ResponseInconsistent: return "ResponseInconsistent";
    case ViolationCode::InformationMonotonicity: return "InformationMonotonicity";
    case ViolationCode::OverlayState: return "OverlayState";
    case ViolationCode::OverlayComposite: return "OverlayComposite";
    case ViolationCode::TimePathInvalid: return "TimePathInvalid";
    case ViolationCode::DuplicateTimePath: return "DuplicateTimePath";
    case ViolationCode::UnknownSymbol: return "UnknownSymbol";
  }
  return "Unknown";
}

bool ValidationReport::has(ViolationCode code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [code](const Violation& v) { return v.code == code; });
}

namespace {

// Domain checks on one set of symbol values (the base scenario, or the base
// with one overlay applied).
void check_domains(const SymbolValues& v, const std::string& where,
                   std::vector<Violation>& out) {
  auto at = [&](Symbol s) { return v[index_of(s)]; };
  auto path = [&](Symbol s) { return where + std::string(symbol_name(s)); };
  bool all_finite = true;
  for (std::size_t i = 0; i < kBaseSymbolCount; ++i) {
    if (!std::isfinite(v[i])) {
      all_finite = false;
      auto sym = static_cast<Symbol>(i);
      out.push_back({ViolationCode::NonFinite, path(sym),
                     std::string(symbol_name(sym)) + " must be finite"});
    }
  }
  for (auto s : {Symbol::P, Symbol::P_b}) {
    if (at(s) <= 0) {
      out.push_back({ViolationCode::NonPositiveValue, path(s),
                     std::string(symbol_name(s)) + " must be > 0, got " + fmt_num(at(s))});
    }
  }
  if (!(at(Symbol::c) > 0 && at(Symbol::c) < 1)) {
    out.push_back({ViolationCode::CommissionOutOfRange, path(Symbol::c),
                   "commission rate c must lie in (0, 1), got " + fmt_num(at(Symbol::c))});
  }
  for (auto s : {Symbol::rho_p, Symbol::rho_i, Symbol::rho_s}) {
    if (!(at(s) >= 0 && at(s) <= 1)) {
      out.push_back({ViolationCode::ProbabilityOutOfRange, path(s),
                     std::string(symbol_name(s)) + " must lie in [0, 1], got " + fmt_num(at(s))});
    }
  }
  if (!all_finite) return;
  const double sum = at(Symbol::I_p) + at(Symbol::I_i);
  if (round_sig12(at(Symbol::I)) != round_sig12(sum)) {
    out.push_back({ViolationCode::InformationIdentity, path(Symbol::I),
                   "I must equal I_p + I_i (" + fmt_num(at(Symbol::I)) + " vs " + fmt_num(sum) +
                       ")"});
  }
  if (at(Symbol::I_o) < at(Symbol::I_i)) {
    out.push_back({ViolationCode::InformationInclusion, path(Symbol::I_o),
                   "I_o must be at least I_i"});
  }
}

void check_response(const Scenario& s, const ResponseFunction& rf, const std::string& where,
                    std::vector<Violation>& out) {
  if (rf.driven == rf.driver) {
    out.push_back({ViolationCode::SelfReferentialResponse, where,
                   "driven and driver must differ"});
    return;
  }
  if (rf.kind == ResponseKind::Polynomial) {
    if (rf.coeffs.empty()) {
      out.push_back({ViolationCode::EmptyResponse, where + ".coeffs", "no coefficients"});
      return;
    }
    if (rf.coeffs.size() > kMaxPolynomialDegree + 1) {
      out.push_back({ViolationCode::PolynomialDegree, where + ".coeffs",
                     "polynomial degree exceeds " + std::to_string(kMaxPolynomialDegree)});
    }
    bool finite = std::isfinite(rf.center);
    for (double a : rf.coeffs) finite = finite && std::isfinite(a);
    if (!finite) {
      out.push_back({ViolationCode::NonFinite, where, "coefficients must be finite"});
      return;
    }
  } else {
    if (rf.knots.size() < 2) {
      out.push_back({ViolationCode::EmptyResponse, where + ".knots", "need at least two knots"});
      return;
    }
    for (std::size_t i = 0; i < rf.knots.size(); ++i) {
      if (!std::isfinite(rf.knots[i].x) || !std::isfinite(rf.knots[i].y)) {
        out.push_back({ViolationCode::NonFinite, where + ".knots", "knots must be finite"});
        return;
      }
      if (i > 0 && !(rf.knots[i].x > rf.knots[i - 1].x)) {
        out.push_back({ViolationCode::KnotOrder, where + ".knots",
                       "knot abscissae must be strictly increasing"});
        return;
      }
    }
  }

  const SymbolValues v = context_values(s, rf.context);
  const double x0 = symbol_value(rf.driver, v, JointMode::Product);
  const double y0 = symbol_value(rf.driven, v, JointMode::Product);
  const double y = rf(x0);
  // Tolerance follows the size of the terms, so large cancelling powers
  // do not read as inconsistency.
  double scale = std::max(1.0, std::fabs(y0));
  if (rf.kind == ResponseKind::Polynomial) {
    double term = 1, sum = 0;
    for (double a : rf.coeffs) {
      sum += std::fabs(a) * term;
      term *= std::fabs(x0 - rf.center);
    }
    scale = std::max(scale, sum);
  }
  if (!(std::fabs(y - y0) <= 1e-9 * scale)) {
    out.push_back({ViolationCode::ResponseInconsistent, where,
                   std::string(symbol_name(rf.driven)) + "(" + std::string(symbol_name(rf.driver)) +
                       ") evaluates to " + fmt_num(y) + " at the base point, stored value is " +
                       fmt_num(y0)});
  }

  if (rf.driven == Symbol::I && rf.driver == Symbol::B_b && rf.context == Context::Base) {
    auto f = [&rf](double x) { return rf(x); };
    const double h = default_step(x0, 1e-3);
    if (!(central_difference(f, x0, 1, h) > 0) || !(central_difference(f, x0, 2, h) > 0)) {
      out.push_back({ViolationCode::InformationMonotonicity, where,
                     "I(B_b) must have positive first and second differences at the base point"});
    }
  }
}

}  // namespace

ValidationReport validate_scenario(const Scenario& s) {
  ValidationReport report;
  auto& out = report.violations;

  check_domains(base_values(s), "", out);

  if (s.broker_costs.prospect_count < 1) {
    out.push_back({ViolationCode::ProspectCount, "prospect_count", "prospect_count must be >= 1"});
  }
  if (s.search.valued_time_share) {
    const double share = *s.search.valued_time_share;
    if (!(share >= 0 && share <= 1)) {
      out.push_back({ViolationCode::ValuedTimeShareOutOfRange, "valued_time_share",
                     "valued_time_share must lie in [0, 1]"});
    }
  }

  for (auto st : {ListingState::E_s, ListingState::E_p, ListingState::E_m}) {
    const StateOverlay* o = s.states.overlay(st);
    if (o == nullptr) continue;
    const std::string where = "overlays." + std::string(state_name(st)) + ".";
    bool usable = true;
    for (const auto& [sym, value] : o->overrides) {
      if (is_composite(sym)) {
        usable = false;
        out.push_back({ViolationCode::OverlayComposite, where + std::string(symbol_name(sym)),
                       "overlays may only override stored symbols"});
      } else if (symbol_info(sym).group == SymbolGroup::ListingStates) {
        usable = false;
        out.push_back({ViolationCode::OverlayState, where + std::string(symbol_name(sym)),
                       "overlays never override listing-state values"});
      }
    }
    if (usable) check_domains(context_values(s, context_of(st)), where, out);
  }

  std::set<std::tuple<Symbol, Symbol, Context>> seen;
  for (std::size_t i = 0; i < s.responses.size(); ++i) {
    const auto& rf = s.responses[i];
    const std::string where = "responses[" + std::to_string(i) + "]";
    if (!seen.insert({rf.driven, rf.driver, rf.context}).second) {
      out.push_back({ViolationCode::DuplicateResponse, where,
                     "more than one response for (" + std::string(symbol_name(rf.driven)) + ", " +
                         std::string(symbol_name(rf.driver)) + ") in context " +
                         std::string(context_name(rf.context))});
      continue;
    }
    check_response(s, rf, where, out);
  }

  std::set<Symbol> path_symbols;
  for (std::size_t i = 0; i < s.time_paths.size(); ++i) {
    const auto& p = s.time_paths[i];
    const std::string where = "time_paths[" + std::to_string(i) + "]";
    if (is_composite(p.symbol)) {
      out.push_back({ViolationCode::TimePathInvalid, where, "time paths need a stored symbol"});
    }
    if (!path_symbols.insert(p.symbol).second) {
      out.push_back({ViolationCode::DuplicateTimePath, where,
                     "duplicate time path for " + std::string(symbol_name(p.symbol))});
    }
    bool finite = std::isfinite(p.value) && std::isfinite(p.intercept) && std::isfinite(p.slope);
    for (double t : p.times) finite = finite && std::isfinite(t);
    for (double x : p.values) finite = finite && std::isfinite(x);
    if (!finite) {
      out.push_back({ViolationCode::TimePathInvalid, where, "path parameters must be finite"});
    }
    if (p.kind == PathKind::Samples) {
      if (p.times.empty() || p.times.size() != p.values.size()) {
        out.push_back({ViolationCode::TimePathInvalid, where,
                       "samples need matching, non-empty times and values"});
      }
      for (std::size_t k = 1; k < p.times.size(); ++k) {
        if (!(p.times[k] > p.times[k - 1])) {
          out.push_back({ViolationCode::TimePathInvalid, where,
                         "sample times must be strictly increasing"});
          break;
        }
      }
    }
  }
  return report;
}

namespace {
std::string describe(const ValidationReport& r) {
  std::string msg;
  for (const auto& v : r.violations) {
    if (!msg.empty()) msg += "; ";
    msg += std::string(violation_name(v.code)) + " at " + v.path + ": " + v.message;
  }
  return msg;
}
}  // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error(Errc::ValidationError, describe(report)), report_(std::move(report)) {}

}  // namespace dismed
