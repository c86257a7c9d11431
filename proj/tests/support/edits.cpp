#include "support/edits.hpp"

#include <algorithm>
#include <stdexcept>

#include <dismed/calculus.hpp>

namespace edits {

using dismed::Symbol;

namespace {

Symbol parse(const std::string& name) {
  auto sym = dismed::symbol_from_name(name);
  if (!sym) throw std::invalid_argument("unknown symbol " + name);
  return *sym;
}

dismed::ResponseFunction& find(dismed::Scenario& s, const std::string& driven,
                               const std::string& driver) {
  const Symbol y = parse(driven), x = parse(driver);
  for (auto& rf : s.responses) {
    if (rf.driven == y && rf.driver == x && rf.context == dismed::Context::Base) return rf;
  }
  throw std::invalid_argument("no response " + driven + "(" + driver + ")");
}

}  // namespace

void recenter(dismed::Scenario& s) {
  for (auto& rf : s.responses) {
    if (rf.kind != dismed::ResponseKind::Polynomial) continue;
    const auto v = dismed::context_values(s, rf.context);
    rf.center = dismed::symbol_value(rf.driver, v, dismed::JointMode::Product);
    rf.coeffs.at(0) = dismed::symbol_value(rf.driven, v, dismed::JointMode::Product);
  }
}

void set_values(dismed::Scenario& s, std::initializer_list<std::pair<const char*, double>> kv) {
  for (const auto& [name, value] : kv) dismed::set_symbol(s, parse(name), value);
  s.info.I = s.info.I_p + s.info.I_i;
  recenter(s);
}

void set_coeff(dismed::Scenario& s, const std::string& driven, const std::string& driver,
               std::size_t k, double value) {
  auto& rf = find(s, driven, driver);
  if (rf.coeffs.size() <= k) rf.coeffs.resize(k + 1, 0.0);
  rf.coeffs[k] = value;
}

void drop_response(dismed::Scenario& s, const std::string& driven, const std::string& driver) {
  const Symbol y = parse(driven), x = parse(driver);
  std::erase_if(s.responses, [&](const dismed::ResponseFunction& rf) {
    return rf.driven == y && rf.driver == x;
  });
}

}  // namespace edits
