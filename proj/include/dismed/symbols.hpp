#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace dismed {

// Every quantity a condition, response function, overlay or time path can
// refer to. The first block are stored scenario fields; the second block are
// derived bundles that appear as a single operand of a partial derivative
// (e.g. "(I_p + I_i)" or "Max(psi_bi, psi_b)").
enum class Symbol : std::uint8_t {
  P, P_b, P_s, c,
  B_b, B_n, B_op, B_s, B_i, B_it,
  I, I_p, I_i, I_o,
  psi_b, psi_bi, psi_s, psi_si, psi_sb,
  U_ip, U_iw, U_a, U_sp, U_sw, U_sa,
  pi_b, pi_i, pi_sb, pi_s,
  E_s, E_p, E_m,
  rho_p, rho_i, rho_s,
  u_hat, u_hat_s, RC_br, SC_br,
  SC_s, SC_b,

  sum_I_p_I_i,           // I_p + I_i
  sum_I_p_I_o,           // I_p + I_o
  sum_U_ip_U_iw,         // U_ip + U_iw
  sum_U_sp_U_sw,         // U_sp + U_sw
  sum_I_p_I_i_pi_b,      // I_p + I_i + pi_b
  sum_pi_sb_I_p_I_i,     // pi_sb + I_p + I_i
  sum_psi_sb_pi_sb,      // psi_sb + pi_sb
  sum_psi_si_pi_s,       // psi_si + pi_s
  sum_RC_br_SC_br,       // RC_br + SC_br
  max_E,                 // Max(E_m, E_p, E_s)
  max_psi_bi_psi_b,      // Max(psi_bi, psi_b)
  max_psi_si_psi_s,      // Max(psi_si, psi_s)
  joint_rho_i_rho_p,     // rho_i ∩ rho_p
  B_total,               // B_b + B_s + B_i + B_n
};

inline constexpr std::size_t kBaseSymbolCount = 41;
inline constexpr std::size_t kSymbolCount = 55;

enum class SymbolGroup : std::uint8_t {
  Valuation,
  BrokerCosts,
  Information,
  SearchCosts,
  Utility,
  ClosingCosts,
  ListingStates,
  ClosingProbabilities,
  BrokerEffortCapital,
  PartySocialCapital,
  Composite,
};

// Semantic tag only; all values share one numeric type.
enum class Unit : std::uint8_t {
  Currency,
  Fraction,
  InfoValue,
  Utility,
  StateValue,
  Probability,
  Capital,
  Mixed,
};

enum class CompositeOp : std::uint8_t { None, Sum, Max, Joint };

struct SymbolInfo {
  Symbol id;
  std::string_view name;
  SymbolGroup group;
  Unit unit;
  CompositeOp op = CompositeOp::None;
  std::array<Symbol, 4> parts{};
  std::uint8_t part_count = 0;

  std::span<const Symbol> components() const { return {parts.data(), part_count}; }
};

using SymbolValues = std::array<double, kBaseSymbolCount>;

std::span<const SymbolInfo> symbol_table();
const SymbolInfo& symbol_info(Symbol s);
std::string_view symbol_name(Symbol s);

// Accepts the canonical names plus the alias "e" for u_hat.
std::optional<Symbol> symbol_from_name(std::string_view name);

constexpr std::size_t index_of(Symbol s) { return static_cast<std::size_t>(s); }
constexpr bool is_composite(Symbol s) { return index_of(s) >= kBaseSymbolCount; }

}  // namespace dismed
