#include "dismed/symbols.hpp"

#include <stdexcept>

namespace dismed {
namespace {

using S = Symbol;
using G = SymbolGroup;
using U = Unit;

constexpr SymbolInfo base(S id, std::string_view name, G g, U u) {
  return SymbolInfo{id, name, g, u};
}

constexpr SymbolInfo derived(S id, std::string_view name, U u, CompositeOp op,
                             std::array<S, 4> parts, std::uint8_t count) {
  return SymbolInfo{id, name, G::Composite, u, op, parts, count};
}

constexpr std::array<SymbolInfo, kSymbolCount> kTable{{
    base(S::P, "P", G::Valuation, U::Currency),
    base(S::P_b, "P_b", G::Valuation, U::Currency),
    base(S::P_s, "P_s", G::Valuation, U::Currency),
    base(S::c, "c", G::Valuation, U::Fraction),
    base(S::B_b, "B_b", G::BrokerCosts, U::Currency),
    base(S::B_n, "B_n", G::BrokerCosts, U::Currency),
    base(S::B_op, "B_op", G::BrokerCosts, U::Currency),
    base(S::B_s, "B_s", G::BrokerCosts, U::Currency),
    base(S::B_i, "B_i", G::BrokerCosts, U::Currency),
    base(S::B_it, "B_it", G::BrokerCosts, U::Currency),
    base(S::I, "I", G::Information, U::InfoValue),
    base(S::I_p, "I_p", G::Information, U::InfoValue),
    base(S::I_i, "I_i", G::Information, U::InfoValue),
    base(S::I_o, "I_o", G::Information, U::InfoValue),
    base(S::psi_b, "psi_b", G::SearchCosts, U::Currency),
    base(S::psi_bi, "psi_bi", G::SearchCosts, U::Currency),
    base(S::psi_s, "psi_s", G::SearchCosts, U::Currency),
    base(S::psi_si, "psi_si", G::SearchCosts, U::Currency),
    base(S::psi_sb, "psi_sb", G::SearchCosts, U::Currency),
    base(S::U_ip, "U_ip", G::Utility, U::Utility),
    base(S::U_iw, "U_iw", G::Utility, U::Utility),
    base(S::U_a, "U_a", G::Utility, U::Utility),
    base(S::U_sp, "U_sp", G::Utility, U::Utility),
    base(S::U_sw, "U_sw", G::Utility, U::Utility),
    base(S::U_sa, "U_sa", G::Utility, U::Utility),
    base(S::pi_b, "pi_b", G::ClosingCosts, U::Currency),
    base(S::pi_i, "pi_i", G::ClosingCosts, U::Currency),
    base(S::pi_sb, "pi_sb", G::ClosingCosts, U::Currency),
    base(S::pi_s, "pi_s", G::ClosingCosts, U::Currency),
    base(S::E_s, "E_s", G::ListingStates, U::StateValue),
    base(S::E_p, "E_p", G::ListingStates, U::StateValue),
    base(S::E_m, "E_m", G::ListingStates, U::StateValue),
    base(S::rho_p, "rho_p", G::ClosingProbabilities, U::Probability),
    base(S::rho_i, "rho_i", G::ClosingProbabilities, U::Probability),
    base(S::rho_s, "rho_s", G::ClosingProbabilities, U::Probability),
    base(S::u_hat, "u_hat", G::BrokerEffortCapital, U::Currency),
    base(S::u_hat_s, "u_hat_s", G::BrokerEffortCapital, U::Currency),
    base(S::RC_br, "RC_br", G::BrokerEffortCapital, U::Capital),
    base(S::SC_br, "SC_br", G::BrokerEffortCapital, U::Capital),
    base(S::SC_s, "SC_s", G::PartySocialCapital, U::Capital),
    base(S::SC_b, "SC_b", G::PartySocialCapital, U::Capital),

    derived(S::sum_I_p_I_i, "I_p+I_i", U::InfoValue, CompositeOp::Sum, {S::I_p, S::I_i}, 2),
    derived(S::sum_I_p_I_o, "I_p+I_o", U::InfoValue, CompositeOp::Sum, {S::I_p, S::I_o}, 2),
    derived(S::sum_U_ip_U_iw, "U_ip+U_iw", U::Utility, CompositeOp::Sum, {S::U_ip, S::U_iw}, 2),
    derived(S::sum_U_sp_U_sw, "U_sp+U_sw", U::Utility, CompositeOp::Sum, {S::U_sp, S::U_sw}, 2),
    derived(S::sum_I_p_I_i_pi_b, "I_p+I_i+pi_b", U::Mixed, CompositeOp::Sum,
            {S::I_p, S::I_i, S::pi_b}, 3),
    derived(S::sum_pi_sb_I_p_I_i, "pi_sb+I_p+I_i", U::Mixed, CompositeOp::Sum,
            {S::pi_sb, S::I_p, S::I_i}, 3),
    derived(S::sum_psi_sb_pi_sb, "psi_sb+pi_sb", U::Currency, CompositeOp::Sum,
            {S::psi_sb, S::pi_sb}, 2),
    derived(S::sum_psi_si_pi_s, "psi_si+pi_s", U::Currency, CompositeOp::Sum,
            {S::psi_si, S::pi_s}, 2),
    derived(S::sum_RC_br_SC_br, "RC_br+SC_br", U::Capital, CompositeOp::Sum,
            {S::RC_br, S::SC_br}, 2),
    derived(S::max_E, "max(E_m,E_p,E_s)", U::StateValue, CompositeOp::Max,
            {S::E_m, S::E_p, S::E_s}, 3),
    derived(S::max_psi_bi_psi_b, "max(psi_bi,psi_b)", U::Currency, CompositeOp::Max,
            {S::psi_bi, S::psi_b}, 2),
    derived(S::max_psi_si_psi_s, "max(psi_si,psi_s)", U::Currency, CompositeOp::Max,
            {S::psi_si, S::psi_s}, 2),
    derived(S::joint_rho_i_rho_p, "rho_i&rho_p", U::Probability, CompositeOp::Joint,
            {S::rho_i, S::rho_p}, 2),
    derived(S::B_total, "B", U::Currency, CompositeOp::Sum, {S::B_b, S::B_s, S::B_i, S::B_n}, 4),
}};

constexpr bool table_is_ordered() {
  for (std::size_t i = 0; i < kTable.size(); ++i) {
    if (index_of(kTable[i].id) != i) return false;
  }
  return true;
}
static_assert(table_is_ordered());
static_assert(index_of(Symbol::B_total) + 1 == kSymbolCount);
static_assert(index_of(Symbol::SC_b) + 1 == kBaseSymbolCount);

}  // namespace

std::span<const SymbolInfo> symbol_table() { return kTable; }

const SymbolInfo& symbol_info(Symbol s) {
  auto i = index_of(s);
  if (i >= kTable.size()) throw std::out_of_range("symbol index out of range");
  return kTable[i];
}

std::string_view symbol_name(Symbol s) { return symbol_info(s).name; }

std::optional<Symbol> symbol_from_name(std::string_view name) {
  if (name == "e") return Symbol::u_hat;
  for (const auto& info : kTable) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

}  // namespace dismed
