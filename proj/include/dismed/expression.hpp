#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "dismed/calculus.hpp"

namespace dismed {

enum class ExprKind : std::uint8_t {
  Constant,
  Symbol,
  Add,
  Sub,
  Mul,
  Div,
  Max,
  Min,
  Derivative,
  Joint,
  Integral,
};

struct ExprNode;

// Immutable expression tree over scenario symbols. Nodes are shared, so
// copies are cheap.
class Expression {
 public:
  Expression() = default;
  explicit Expression(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

  const ExprNode& node() const { return *node_; }
  bool empty() const { return !node_; }

  std::string to_string() const;

 private:
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  ExprKind kind = ExprKind::Constant;
  double constant = 0;
  Symbol symbol = Symbol::P;  // Symbol, or the driven symbol of a Derivative
  Symbol driver = Symbol::P;  // Derivative only
  int order = 0;              // Derivative only
  std::vector<Expression> args;
};

namespace ex {
Expression constant(double v);
Expression sym(Symbol s);
// d^order(driven) / d(driver)^order through the declared response function.
Expression d(Symbol driven, Symbol driver, int order = 1);
Expression max(Expression a, Expression b);
Expression min(Expression a, Expression b);
// Probability intersection under the configured JointMode.
Expression joint(Expression a, Expression b);
// Integral of the integrand over [0, horizon] at the configured spacing.
Expression integral(Expression integrand);
}  // namespace ex

Expression operator+(Expression a, Expression b);
Expression operator-(Expression a, Expression b);
Expression operator*(Expression a, Expression b);
Expression operator/(Expression a, Expression b);

// Interval evaluation. Missing response links evaluate to Indeterminate and
// append a note such as "missing response (I_o, psi_bi)". Integrals that
// cannot be computed also become Indeterminate with a note. Division by an
// interval containing 0 throws Error(DivisionByZeroInterval).
ExtendedValue evaluate_expression(const Scenario& s, const Expression& e, Context ctx,
                                  const EvalConfig& cfg, std::vector<std::string>* notes = nullptr);

// Trapezoid rule over [0, horizon] with nodes 0, dt, 2dt, ... and a final
// shorter step when dt does not divide horizon. Symbols with a TimePath
// follow it; all others stay at their base values. Throws
// Error(IndeterminateIntegrand) if the integrand is not a point at some node
// or a sampled path does not cover the horizon.
double integrate_horizon(const Scenario& s, const Expression& integrand, double horizon,
                         double dt, const EvalConfig& cfg);

// Every symbol referenced, including derivative drivens/drivers.
void collect_symbols(const Expression& e, std::set<Symbol>& out);

struct DerivativeRef {
  Symbol driven;
  Symbol driver;
  int order;
  auto operator<=>(const DerivativeRef&) const = default;
};
void collect_derivatives(const Expression& e, std::set<DerivativeRef>& out);

}  // namespace dismed
