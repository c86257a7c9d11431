#include "dismed/conditions.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace dismed {
namespace {

using ex::constant;
using ex::d;
using ex::sym;
using S = Symbol;

constexpr char set_prefix(ConditionSet set) {
  switch (set) {
    case ConditionSet::Buyer: return 'B';
    case ConditionSet::BrokerWeb: return 'W';
    case ConditionSet::Seller: return 'S';
  }
  return '?';
}

Inequality gt(Expression l, Expression r, ContextRule ctx = ContextRule::Base) {
  return {std::move(l), Comparison::Greater, std::move(r), ctx, ctx};
}
Inequality lt(Expression l, Expression r, ContextRule ctx = ContextRule::Base) {
  return {std::move(l), Comparison::Less, std::move(r), ctx, ctx};
}
Inequality approx(Expression l, Expression r) {
  return {std::move(l), Comparison::ApproxEqual, std::move(r)};
}
Inequality near_zero(Expression l) { return {std::move(l), Comparison::ApproxZero, Expression{}}; }

Expression cP() { return sym(S::c) * sym(S::P); }

const char* const kMaxContextNote = "Max(E_m, E_p, E_s) conditioning: evaluated under the argmax state's overlay";

ConditionDefinition buyer(int k, const EvalConfig& cfg) {
  ConditionDefinition def;
  auto& p = def.parts;
  auto& notes = def.notes;
  const auto one = constant(1);
  const auto zero = constant(0);
  const auto sumI = S::sum_I_p_I_i;
  const auto sumU = S::sum_U_ip_U_iw;
  const auto maxpsi = S::max_psi_bi_psi_b;
  switch (k) {
    case 1: {
      auto guard = gt(sym(S::U_iw), sym(S::U_ip));
      p.push_back(gt(sym(S::I_i), sym(S::I_p)));
      p.push_back(gt(sym(S::I_i) + sym(S::I_o), sym(S::I_p)));
      if (cfg.b1 == B1Reading::Guard) {
        def.guard = guard;
        notes.emplace_back("(U_iw > U_ip) read as a guard");
      } else {
        p.push_back(guard);
        notes.emplace_back("(U_iw > U_ip) read as a joint requirement");
      }
      break;
    }
    case 2:
      p.push_back(approx(sym(S::I_i), sym(S::psi_b)));
      break;
    case 3:
    case 4: {
      def.guard = k == 3 ? Inequality{sym(S::P_s), Comparison::ApproxEqual, sym(S::P_b),
                                      ContextRule::ArgmaxAll, ContextRule::ArgmaxAll}
                         : gt(sym(S::U_iw), sym(S::U_ip), ContextRule::ArgmaxAll);
      Inequality ineq = gt(cP() + sym(S::psi_b) + sym(S::pi_b),
                           sym(S::psi_bi) + sym(S::pi_i) + sym(S::U_iw));
      ineq.lhs_ctx = ContextRule::ArgmaxAll;
      p.push_back(ineq);
      notes.emplace_back(kMaxContextNote);
      notes.emplace_back("right-hand side evaluated in the base context");
      break;
    }
    case 5:
      p.push_back(gt(sym(S::psi_b), sym(S::psi_bi)));
      p.push_back(gt(sym(S::U_iw), sym(S::U_ip)));
      break;
    case 6:
      p.push_back(lt(d(S::psi_b, S::U_ip, 2), ex::min(d(S::psi_bi, S::U_iw, 2), one)));
      p.push_back(lt(d(S::psi_b, S::U_ip, 1), ex::min(d(S::psi_bi, S::U_iw, 1), one)));
      break;
    case 7:
      p.push_back(gt(d(S::U_iw, S::pi_i, 1), ex::min(d(S::U_ip, S::pi_b, 1), zero)));
      p.push_back(gt(d(S::U_iw, S::pi_i, 2), ex::min(d(S::U_ip, S::pi_b, 2), zero)));
      break;
    case 8:
      p.push_back(gt(d(S::I_o, S::psi_bi, 2), ex::max(d(sumI, S::psi_b, 2), one)));
      p.push_back(gt(d(S::I_o, S::psi_bi, 1), ex::max(d(sumI, S::psi_b, 1), one)));
      break;
    case 9:
      p.push_back(lt(d(sumI, S::max_E, 1), one));
      break;
    case 10:
      p.push_back(lt(d(sumI, sumU, 1), ex::min(d(S::I_o, S::U_a, 1), one)));
      p.push_back(lt(d(sumI, sumU, 2), ex::min(d(S::I_o, S::U_a, 2), one)));
      break;
    case 11:
      p.push_back(lt(d(sumI, sumU, 3), one));
      p.push_back(lt(d(S::I_o, S::U_a, 3), one));
      break;
    case 12:
      p.push_back(gt(d(S::P_b, S::P, 3), ex::max(d(S::I_o, sumI, 3), one)));
      p.push_back(gt(d(S::P_b, S::P, 1), ex::max(d(S::I_o, sumI, 1), one)));
      break;
    case 13:
      p.push_back(lt(sym(S::u_hat_s), cP() + sym(S::pi_sb) + sym(S::I_p) + sym(S::I_i)));
      break;
    case 14:
      p.push_back(lt(d(S::u_hat_s, S::sum_pi_sb_I_p_I_i, 1), one));
      break;
    case 15:
      p.push_back(gt(sym(S::SC_b) - sym(S::psi_bi) - sym(S::psi_b),
                     sym(S::U_ip) + sym(S::U_iw) + sym(S::I_p) + sym(S::I_i) + sym(S::pi_b)));
      break;
    case 16:
      p.push_back(gt(d(S::SC_b, maxpsi, 1), ex::max(one, d(sumU, S::sum_I_p_I_i_pi_b, 1))));
      break;
    case 17:
      p.push_back(gt(d(S::SC_b, maxpsi, 2), ex::max(zero, d(sumU, S::sum_I_p_I_i_pi_b, 2))));
      break;
    case 18:
      p.push_back(gt(d(S::SC_b, maxpsi, 1), ex::max(one, d(S::joint_rho_i_rho_p, sumU, 1))));
      break;
    case 19:
      p.push_back(gt(d(S::SC_b, maxpsi, 2), ex::max(zero, d(S::joint_rho_i_rho_p, sumU, 2))));
      break;
    default:
      break;
  }
  return def;
}

ConditionDefinition broker_web(int k, const EvalConfig&) {
  ConditionDefinition def;
  auto& p = def.parts;
  auto& notes = def.notes;
  switch (k) {
    case 1:
      def.guard = gt(sym(S::psi_b), sym(S::psi_bi), ContextRule::SemiExclusive);
      p.push_back(lt(cP() * sym(S::rho_p) - sym(S::B_b) - sym(S::B_s), sym(S::B_i),
                     ContextRule::SemiExclusive));
      notes.emplace_back("evaluated under the E_p overlay");
      break;
    case 2:
      p.push_back(lt(sym(S::U_ip), sym(S::U_iw), ContextRule::ArgmaxExclusive));
      notes.emplace_back("Max(E_s, E_p) conditioning: evaluated under the argmax state's overlay");
      break;
    case 3:
      p.push_back(gt(sym(S::psi_bi) * sym(S::rho_i), cP() * sym(S::rho_p)));
      break;
    case 4:
      p.push_back(near_zero(d(S::rho_i, S::rho_p, 1)));
      break;
    case 5:
      p.push_back(near_zero(d(S::rho_i, S::B_total, 1)));
      p.push_back(near_zero(d(S::rho_p, S::B_total, 1)));
      notes.emplace_back("B read as total broker cost B_b + B_s + B_i + B_n");
      break;
    case 6:
      p.push_back(lt(d(S::B_i, S::I_i, 1), d(S::sum_RC_br_SC_br, S::I_i, 1)));
      notes.emplace_back("differentials taken with respect to I_i (no variable is printed)");
      break;
    case 7:
      p.push_back(gt(d(S::sum_RC_br_SC_br, S::B_i, 1), constant(1)));
      break;
    default:
      break;
  }
  return def;
}

ConditionDefinition seller(int k, const EvalConfig& cfg) {
  ConditionDefinition def;
  auto& p = def.parts;
  auto& notes = def.notes;
  const auto one = constant(1);
  const auto zero = constant(0);
  const Symbol ua = cfg.seller_uses_U_sa ? S::U_sa : S::U_a;
  const char* ua_note = cfg.seller_uses_U_sa ? "U_sa substituted for U_a"
                                             : "U_a (a buyer utility) used literally";
  const auto sumUs = S::sum_U_sp_U_sw;
  const auto maxpsi = S::max_psi_si_psi_s;
  switch (k) {
    case 1:
      p.push_back(gt(sym(S::rho_s), ex::joint(sym(S::rho_p), sym(S::rho_i))));
      p.push_back(gt(sym(S::rho_s), sym(S::rho_p)));
      p.push_back(gt(sym(S::rho_s), sym(S::rho_i)));
      break;
    case 2:
      p.push_back(gt(d(S::I_o, S::psi_si, 1), ex::max(d(S::sum_I_p_I_o, S::psi_sb, 1), one)));
      p.push_back(gt(d(S::I_o, S::psi_si, 3), ex::max(d(S::sum_I_p_I_o, S::psi_sb, 3), one)));
      notes.emplace_back("I_p + I_o used literally as printed");
      break;
    case 3:
      p.push_back(gt(d(ua, S::psi_si, 1), ex::max(d(sumUs, S::psi_s, 1), one)));
      p.push_back(gt(d(ua, S::psi_si, 3), ex::max(d(sumUs, S::psi_s, 3), one)));
      notes.emplace_back(ua_note);
      notes.emplace_back("bracket [x, 1] read as Max[x, 1]");
      break;
    case 4:
      p.push_back(gt(sym(S::psi_s), sym(S::psi_si)));
      p.push_back(gt(sym(S::psi_s), sym(S::psi_si), ContextRule::ArgmaxAll));
      notes.emplace_back(kMaxContextNote);
      break;
    case 5:
      p.push_back(gt(sym(S::I_o), sym(S::I_i) + sym(S::I_p)));
      p.push_back(gt(sym(S::I_o), sym(S::I_i) + sym(S::I_p), ContextRule::ArgmaxAll));
      notes.emplace_back(kMaxContextNote);
      break;
    case 6:
      p.push_back(gt(d(S::P_s, S::P, 1), one));
      break;
    case 7:
      p.push_back(gt(d(S::pi_sb, sumUs, 1), d(S::pi_s, ua, 1)));
      p.push_back(gt(sym(S::pi_sb), sym(S::pi_s)));
      notes.emplace_back(ua_note);
      break;
    case 8:
      p.push_back(gt(d(S::P, S::pi_sb, 1), ex::max(d(S::P, S::pi_s, 1), one)));
      p.push_back(gt(d(S::P_s, S::pi_sb, 1), ex::max(d(S::P_s, S::pi_s, 1), one)));
      p.push_back(gt(d(S::P_s, S::P, 1), one));
      p.push_back(gt(d(S::P, S::c, 1), one));
      notes.emplace_back("fragment \"dP > dpi_s\" read as dP/dpi_s (likewise for P_s)");
      break;
    case 9:
      p.push_back(gt(sym(S::psi_sb) + sym(S::pi_sb), sym(S::psi_si) + sym(S::pi_s)));
      p.push_back(gt(d(S::sum_psi_sb_pi_sb, S::P_s, 1), d(S::sum_psi_si_pi_s, S::P_s, 1)));
      break;
    case 10:
      p.push_back(gt(d(S::sum_psi_sb_pi_sb, S::c, 1), d(S::sum_psi_si_pi_s, S::c, 1)));
      break;
    case 11:
      p.push_back(gt(d(S::sum_psi_sb_pi_sb, S::pi_sb, 1), d(S::sum_psi_si_pi_s, S::pi_sb, 1)));
      break;
    case 12:
      p.push_back(gt(sym(S::rho_s), sym(S::rho_p)));
      p.push_back(gt(sym(S::rho_s), sym(S::rho_i)));
      break;
    case 13: {
      auto self = ex::integral(sym(S::rho_s) * (sym(S::P_s) - sym(S::pi_b) - sym(S::pi_s) -
                                                sym(S::psi_si)));
      auto physical = ex::integral(sym(S::rho_p) * (sym(S::P) - sym(S::pi_b) - sym(S::pi_sb) -
                                                    sym(S::psi_s)));
      auto both = ex::integral(ex::joint(sym(S::rho_i), sym(S::rho_p)) *
                               (sym(S::P) - sym(S::pi_b) - sym(S::pi_sb) - sym(S::psi_sb)));
      p.push_back(gt(self, ex::max(physical, both)));
      break;
    }
    case 14:
      p.push_back(gt(sym(S::SC_s) - sym(S::psi_si) - sym(S::pi_sb) * sym(S::pi_sb),
                     sym(S::U_sw) + sym(S::U_sp) + sym(S::I_p) + sym(S::I_i) + sym(S::pi_sb)));
      notes.emplace_back("(pi_sb * pi_sb) implemented literally as pi_sb^2; likely a typographical artifact");
      break;
    case 15:
      p.push_back(gt(d(S::SC_s, maxpsi, 1), ex::max(one, d(sumUs, S::sum_I_p_I_i_pi_b, 1))));
      break;
    case 16:
      p.push_back(gt(d(S::SC_s, maxpsi, 2), ex::max(zero, d(sumUs, S::sum_I_p_I_i_pi_b, 2))));
      break;
    case 17:
      p.push_back(gt(d(S::SC_s, maxpsi, 1), ex::max(one, d(S::joint_rho_i_rho_p, sumUs, 1))));
      break;
    case 18:
      p.push_back(gt(d(S::SC_s, maxpsi, 2), ex::max(zero, d(S::joint_rho_i_rho_p, sumUs, 2))));
      break;
    default:
      break;
  }
  return def;
}

std::string_view comparison_glyph(Comparison c) {
  switch (c) {
    case Comparison::Greater: return " > ";
    case Comparison::Less: return " < ";
    case Comparison::ApproxEqual: return " ≈ ";
    case Comparison::ApproxZero: return " ≈ 0";
  }
  return " ? ";
}

std::string_view rule_suffix(ContextRule r) {
  switch (r) {
    case ContextRule::Base: return "";
    case ContextRule::ArgmaxAll: return " | Max(E_m, E_p, E_s)";
    case ContextRule::ArgmaxExclusive: return " | Max(E_s, E_p)";
    case ContextRule::SemiExclusive: return " | E_p";
  }
  return "";
}

PartTrace eval_part(const Scenario& s, const Inequality& q, const EvalConfig& cfg,
                    std::vector<std::string>& notes) {
  PartTrace t;
  t.text = q.text();
  t.lhs = evaluate_expression(s, q.lhs, resolve_context(s, q.lhs_ctx), cfg, &notes);
  t.rhs = q.cmp == Comparison::ApproxZero
              ? ExtendedValue::point(0)
              : evaluate_expression(s, q.rhs, resolve_context(s, q.rhs_ctx), cfg, &notes);
  t.truth = compare(t.lhs, q.cmp, t.rhs, cfg, &t.margin);
  return t;
}

void add_note(std::vector<std::string>& notes, const std::string& n) {
  if (std::find(notes.begin(), notes.end(), n) == notes.end()) notes.push_back(n);
}

}  // namespace

std::string_view set_name(ConditionSet set) {
  switch (set) {
    case ConditionSet::Buyer: return "buyer";
    case ConditionSet::BrokerWeb: return "broker";
    case ConditionSet::Seller: return "seller";
  }
  return "";
}

std::optional<ConditionSet> set_from_name(std::string_view name) {
  for (auto set : {ConditionSet::Buyer, ConditionSet::BrokerWeb, ConditionSet::Seller}) {
    if (set_name(set) == name) return set;
  }
  return std::nullopt;
}

std::string ConditionId::str() const { return set_prefix(set) + std::to_string(index); }

std::optional<ConditionId> ConditionId::parse(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  ConditionId id;
  switch (text[0]) {
    case 'B': case 'b': id.set = ConditionSet::Buyer; break;
    case 'W': case 'w': id.set = ConditionSet::BrokerWeb; break;
    case 'S': case 's': id.set = ConditionSet::Seller; break;
    default: return std::nullopt;
  }
  const char* first = text.data() + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, id.index);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  if (id.index < 1 || id.index > condition_count(id.set)) return std::nullopt;
  return id;
}

std::vector<ConditionId> conditions_of(ConditionSet set) {
  std::vector<ConditionId> out;
  for (int i = 1; i <= condition_count(set); ++i) out.push_back({set, i});
  return out;
}

std::vector<ConditionId> all_conditions() {
  std::vector<ConditionId> out;
  for (auto set : {ConditionSet::Buyer, ConditionSet::BrokerWeb, ConditionSet::Seller}) {
    auto part = conditions_of(set);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Satisfied: return "Satisfied";
    case Status::Violated: return "Violated";
    case Status::VacuouslySatisfied: return "VacuouslySatisfied";
    case Status::Indeterminate: return "Indeterminate";
  }
  return "";
}

std::string_view aggregate_name(AggregateStatus a) {
  switch (a) {
    case AggregateStatus::Satisfied: return "Satisfied";
    case AggregateStatus::NotSatisfied: return "NotSatisfied";
    case AggregateStatus::Indeterminate: return "Indeterminate";
  }
  return "";
}

Context resolve_context(const Scenario& s, ContextRule rule) {
  switch (rule) {
    case ContextRule::Base: return Context::Base;
    case ContextRule::ArgmaxAll: return context_of(argmax_state(s.states));
    case ContextRule::ArgmaxExclusive: {
      static constexpr std::array<ListingState, 2> kAmong{ListingState::E_s, ListingState::E_p};
      return context_of(argmax_state(s.states, kAmong));
    }
    case ContextRule::SemiExclusive: return Context::E_p;
  }
  return Context::Base;
}

std::string Inequality::text() const {
  std::string out = lhs.to_string();
  if (lhs_ctx != ContextRule::Base && lhs_ctx != rhs_ctx) out += rule_suffix(lhs_ctx);
  out += comparison_glyph(cmp);
  if (cmp != Comparison::ApproxZero) {
    out += rhs.to_string();
    out += rule_suffix(rhs_ctx);
  }
  return out;
}

std::string ConditionDefinition::text() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += "; ";
    out += parts[i].text();
  }
  if (guard) out += " | (" + guard->text() + ")";
  return out;
}

ConditionDefinition condition_definition(ConditionId id, const EvalConfig& cfg) {
  if (id.index < 1 || id.index > condition_count(id.set)) {
    throw Error(Errc::InvalidArgument, "no condition " + id.str());
  }
  ConditionDefinition def;
  switch (id.set) {
    case ConditionSet::Buyer: def = buyer(id.index, cfg); break;
    case ConditionSet::BrokerWeb: def = broker_web(id.index, cfg); break;
    case ConditionSet::Seller: def = seller(id.index, cfg); break;
  }
  def.id = id;
  return def;
}

Truth compare(const ExtendedValue& lhs, Comparison cmp, const ExtendedValue& rhs,
              const EvalConfig& cfg, std::optional<double>* margin) {
  std::optional<double> m;
  Truth t = Truth::Unknown;
  switch (cmp) {
    case Comparison::Greater:
    case Comparison::Less: {
      const auto& hi_side = cmp == Comparison::Greater ? lhs : rhs;
      const auto& lo_side = cmp == Comparison::Greater ? rhs : lhs;
      t = greater(hi_side, lo_side);
      if (t == Truth::True) m = hi_side.lower() - lo_side.upper();
      if (t == Truth::False) m = hi_side.upper() - lo_side.lower();
      break;
    }
    case Comparison::ApproxEqual:
      if (lhs.is_point() && rhs.is_point()) {
        const double a = lhs.lower();
        const double b = rhs.lower();
        t = approx_equal(a, b, cfg.rel_tol) ? Truth::True : Truth::False;
        const double scale = std::max({std::fabs(a), std::fabs(b), 1e-12});
        m = cfg.rel_tol * scale - std::fabs(a - b);
      }
      break;
    case Comparison::ApproxZero: {
      t = within(lhs, cfg.zero_tol);
      const double max_abs = std::max(std::fabs(lhs.lower()), std::fabs(lhs.upper()));
      const double min_abs = lhs.contains(0.0)
                                 ? 0.0
                                 : std::min(std::fabs(lhs.lower()), std::fabs(lhs.upper()));
      if (t == Truth::True) m = cfg.zero_tol - max_abs;
      if (t == Truth::False) m = cfg.zero_tol - min_abs;
      break;
    }
  }
  if (m && !std::isfinite(*m)) m.reset();
  if (margin != nullptr) *margin = m;
  return t;
}

ConditionVerdict eval_condition(const Scenario& s, ConditionId id, const EvalConfig& cfg) {
  const ConditionDefinition def = condition_definition(id, cfg);
  ConditionVerdict v;
  v.id = id;
  v.notes = def.notes;

  std::vector<std::string> runtime_notes;
  Truth truth = Truth::True;
  for (const auto& q : def.parts) {
    v.parts.push_back(eval_part(s, q, cfg, runtime_notes));
    truth = both(truth, v.parts.back().truth);
  }

  // Binding part: first undecided, else first failing, else smallest slack.
  const PartTrace* binding = nullptr;
  for (const auto& pt : v.parts) {
    if (pt.truth == Truth::Unknown) {
      binding = &pt;
      break;
    }
  }
  if (binding == nullptr) {
    for (const auto& pt : v.parts) {
      if (binding == nullptr || (pt.truth == Truth::False && binding->truth != Truth::False) ||
          (pt.truth == binding->truth && pt.margin && binding->margin &&
           *pt.margin < *binding->margin)) {
        binding = &pt;
      }
    }
  }
  if (binding != nullptr) {
    v.lhs = binding->lhs;
    v.rhs = binding->rhs;
  }
  if (truth != Truth::Unknown) {
    for (const auto& pt : v.parts) {
      if (pt.margin && (!v.margin || *pt.margin < *v.margin)) v.margin = pt.margin;
    }
  }

  switch (truth) {
    case Truth::True: v.status = Status::Satisfied; break;
    case Truth::False: v.status = Status::Violated; break;
    case Truth::Unknown: v.status = Status::Indeterminate; break;
  }

  if (def.guard) {
    std::vector<std::string> guard_notes;
    const PartTrace g = eval_part(s, *def.guard, cfg, guard_notes);
    v.guard_status = g.truth;
    for (const auto& n : guard_notes) add_note(runtime_notes, n);
    if (g.truth == Truth::False) {
      switch (cfg.guard) {
        case GuardMode::Vacuous:
          v.status = Status::VacuouslySatisfied;
          v.notes.emplace_back("guard failed: vacuously satisfied");
          break;
        case GuardMode::Skip:
          v.status = Status::VacuouslySatisfied;
          v.skipped = true;
          v.notes.emplace_back("guard failed: skipped");
          break;
        case GuardMode::Violated:
          v.status = Status::Violated;
          v.notes.emplace_back("guard failed: treated as violated");
          break;
      }
      v.margin.reset();
    } else if (g.truth == Truth::Unknown) {
      v.status = Status::Indeterminate;
      v.margin.reset();
    }
  }

  for (const auto& n : runtime_notes) add_note(v.notes, n);
  return v;
}

AggregateStatus aggregate(const std::vector<ConditionVerdict>& verdicts,
                          const AggregationConfig& agg) {
  std::size_t total = 0, pass = 0, violated = 0, unknown = 0;
  for (const auto& v : verdicts) {
    if (v.skipped) continue;
    ++total;
    switch (v.status) {
      case Status::Satisfied:
      case Status::VacuouslySatisfied: ++pass; break;
      case Status::Violated: ++violated; break;
      case Status::Indeterminate: ++unknown; break;
    }
  }
  if (agg.mode == AggregationMode::Conjunction) {
    if (violated > 0) return AggregateStatus::NotSatisfied;
    if (unknown > 0) return AggregateStatus::Indeterminate;
    return AggregateStatus::Satisfied;
  }
  if (agg.violations_blocking && violated > 0) return AggregateStatus::NotSatisfied;
  if (total == 0) return AggregateStatus::Satisfied;
  const double n = static_cast<double>(total);
  if (static_cast<double>(pass) / n >= agg.q) return AggregateStatus::Satisfied;
  if (static_cast<double>(pass + unknown) / n >= agg.q) return AggregateStatus::Indeterminate;
  return AggregateStatus::NotSatisfied;
}

ConditionReport eval_condition_set(const Scenario& s, ConditionSet set, const EvalConfig& cfg,
                                   const AggregationConfig& agg) {
  ConditionReport r;
  r.scenario_label = s.label;
  r.set = set;
  r.eval = cfg;
  r.agg = agg;
  for (const auto& id : conditions_of(set)) r.verdicts.push_back(eval_condition(s, id, cfg));
  r.aggregate = aggregate(r.verdicts, agg);
  return r;
}

DecisionSummary decide(const Scenario& s, const EvalConfig& cfg, const AggregationConfig& agg) {
  DecisionSummary out;
  out.buyer = eval_condition_set(s, ConditionSet::Buyer, cfg, agg);
  out.broker = eval_condition_set(s, ConditionSet::BrokerWeb, cfg, agg);
  out.seller = eval_condition_set(s, ConditionSet::Seller, cfg, agg);
  out.buyer_disintermediates = out.buyer.aggregate;
  out.broker_provides_web_info = out.broker.aggregate;
  out.seller_disintermediates = out.seller.aggregate;
  return out;
}

}  // namespace dismed
