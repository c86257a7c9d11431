#include "dismed/expression.hpp"

#include <cmath>
#include <optional>

namespace dismed {
namespace {

Expression make(ExprNode n) { return Expression(std::make_shared<const ExprNode>(std::move(n))); }

Expression binary(ExprKind k, Expression a, Expression b) {
  ExprNode n;
  n.kind = k;
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

struct Evaluator {
  const Scenario& s;
  Context ctx;
  const EvalConfig& cfg;
  std::vector<std::string>* notes;
  SymbolValues values;
  std::optional<double> time;

  void note(std::string msg) {
    if (notes == nullptr) return;
    for (const auto& n : *notes) {
      if (n == msg) return;
    }
    notes->push_back(std::move(msg));
  }

  double base_lookup(Symbol sym) const {
    if (time) {
      if (const TimePath* p = find_time_path(s, sym)) return p->at(*time);
    }
    return values[index_of(sym)];
  }

  ExtendedValue eval(const Expression& e) {
    const ExprNode& n = e.node();
    switch (n.kind) {
      case ExprKind::Constant:
        return ExtendedValue::point(n.constant);
      case ExprKind::Symbol:
        return ExtendedValue::point(
            symbol_value(n.symbol, [this](Symbol b) { return base_lookup(b); }, cfg.joint));
      case ExprKind::Add: return eval(n.args[0]) + eval(n.args[1]);
      case ExprKind::Sub: return eval(n.args[0]) - eval(n.args[1]);
      case ExprKind::Mul: return eval(n.args[0]) * eval(n.args[1]);
      case ExprKind::Div: return eval(n.args[0]) / eval(n.args[1]);
      case ExprKind::Max: return max(eval(n.args[0]), eval(n.args[1]));
      case ExprKind::Min: return min(eval(n.args[0]), eval(n.args[1]));
      case ExprKind::Joint: {
        const auto a = eval(n.args[0]);
        const auto b = eval(n.args[1]);
        if (cfg.joint == JointMode::Product) return a * b;
        return min(a, b);
      }
      case ExprKind::Derivative: {
        auto v = finite_difference(s, n.symbol, n.driver, n.order, 0.0, ctx, cfg);
        if (v.is_indeterminate()) {
          note("missing response (" + std::string(symbol_name(n.symbol)) + ", " +
               std::string(symbol_name(n.driver)) + ")");
        }
        return v;
      }
      case ExprKind::Integral: {
        try {
          return ExtendedValue::point(integrate_horizon(s, n.args[0], cfg.horizon, cfg.dt, cfg));
        } catch (const Error& err) {
          if (err.code() != Errc::IndeterminateIntegrand) throw;
          note(std::string("integral indeterminate: ") + err.what());
          return ExtendedValue::indeterminate();
        }
      }
    }
    return ExtendedValue::indeterminate();
  }
};

void to_string_impl(const Expression& e, std::string& out) {
  const ExprNode& n = e.node();
  auto bin = [&](const char* op) {
    out += "(";
    to_string_impl(n.args[0], out);
    out += op;
    to_string_impl(n.args[1], out);
    out += ")";
  };
  auto fn = [&](const char* name) {
    out += name;
    out += "[";
    to_string_impl(n.args[0], out);
    out += ", ";
    to_string_impl(n.args[1], out);
    out += "]";
  };
  switch (n.kind) {
    case ExprKind::Constant: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", n.constant);
      out += buf;
      break;
    }
    case ExprKind::Symbol: out += symbol_name(n.symbol); break;
    case ExprKind::Add: bin(" + "); break;
    case ExprKind::Sub: bin(" - "); break;
    case ExprKind::Mul: bin(" * "); break;
    case ExprKind::Div: bin(" / "); break;
    case ExprKind::Max: fn("Max"); break;
    case ExprKind::Min: fn("Min"); break;
    case ExprKind::Joint: bin(" ∩ "); break;
    case ExprKind::Derivative: {
      const char* prefix = n.order == 1 ? "d" : n.order == 2 ? "d2" : "d3";
      out += prefix;
      out += "(";
      out += symbol_name(n.symbol);
      out += ")/d(";
      out += symbol_name(n.driver);
      out += ")";
      if (n.order > 1) out += "^" + std::to_string(n.order);
      break;
    }
    case ExprKind::Integral:
      out += "∫{";
      to_string_impl(n.args[0], out);
      out += "}dt";
      break;
  }
}

}  // namespace

std::string Expression::to_string() const {
  std::string out;
  if (node_) to_string_impl(*this, out);
  return out;
}

namespace ex {

Expression constant(double v) {
  ExprNode n;
  n.kind = ExprKind::Constant;
  n.constant = v;
  return make(std::move(n));
}

Expression sym(Symbol s) {
  ExprNode n;
  n.kind = ExprKind::Symbol;
  n.symbol = s;
  return make(std::move(n));
}

Expression d(Symbol driven, Symbol driver, int order) {
  if (order < 1 || order > 3) throw Error(Errc::InvalidArgument, "derivative order must be 1..3");
  ExprNode n;
  n.kind = ExprKind::Derivative;
  n.symbol = driven;
  n.driver = driver;
  n.order = order;
  return make(std::move(n));
}

Expression max(Expression a, Expression b) { return binary(ExprKind::Max, std::move(a), std::move(b)); }
Expression min(Expression a, Expression b) { return binary(ExprKind::Min, std::move(a), std::move(b)); }
Expression joint(Expression a, Expression b) {
  return binary(ExprKind::Joint, std::move(a), std::move(b));
}

Expression integral(Expression integrand) {
  ExprNode n;
  n.kind = ExprKind::Integral;
  n.args = {std::move(integrand)};
  return make(std::move(n));
}

}  // namespace ex

Expression operator+(Expression a, Expression b) { return binary(ExprKind::Add, std::move(a), std::move(b)); }
Expression operator-(Expression a, Expression b) { return binary(ExprKind::Sub, std::move(a), std::move(b)); }
Expression operator*(Expression a, Expression b) { return binary(ExprKind::Mul, std::move(a), std::move(b)); }
Expression operator/(Expression a, Expression b) { return binary(ExprKind::Div, std::move(a), std::move(b)); }

ExtendedValue evaluate_expression(const Scenario& s, const Expression& e, Context ctx,
                                  const EvalConfig& cfg, std::vector<std::string>* notes) {
  Evaluator ev{s, ctx, cfg, notes, context_values(s, ctx), std::nullopt};
  return ev.eval(e);
}

double integrate_horizon(const Scenario& s, const Expression& integrand, double horizon,
                         double dt, const EvalConfig& cfg) {
  if (!(horizon > 0) || !(dt > 0) || dt > horizon) {
    throw Error(Errc::InvalidArgument, "integration needs horizon > 0 and 0 < dt <= horizon");
  }
  std::set<Symbol> used;
  collect_symbols(integrand, used);
  for (Symbol sym : used) {
    auto check = [&](Symbol b) {
      if (const TimePath* p = find_time_path(s, b); p && !p->covers(horizon)) {
        throw Error(Errc::IndeterminateIntegrand,
                    "time path for " + std::string(symbol_name(b)) + " does not cover [0, T]");
      }
    };
    if (is_composite(sym)) {
      for (Symbol part : symbol_info(sym).components()) check(part);
    } else {
      check(sym);
    }
  }

  Evaluator ev{s, Context::Base, cfg, nullptr, base_values(s), std::nullopt};
  auto f = [&](double t) {
    ev.time = t;
    const ExtendedValue v = ev.eval(integrand);
    if (!v.is_point() || !std::isfinite(v.lower())) {
      throw Error(Errc::IndeterminateIntegrand, "integrand is not determinate at t = " +
                                                    std::to_string(t));
    }
    return v.lower();
  };

  const auto full_steps = static_cast<long>(std::floor(horizon / dt + 1e-9));
  double total = 0;
  double t0 = 0;
  double f0 = f(0.0);
  for (long k = 1; k <= full_steps; ++k) {
    const double t1 = std::min(horizon, static_cast<double>(k) * dt);
    const double f1 = f(t1);
    total += 0.5 * (t1 - t0) * (f0 + f1);
    t0 = t1;
    f0 = f1;
  }
  if (horizon - t0 > 1e-12 * horizon) {
    const double f1 = f(horizon);
    total += 0.5 * (horizon - t0) * (f0 + f1);
  }
  return total;
}

void collect_symbols(const Expression& e, std::set<Symbol>& out) {
  if (e.empty()) return;
  const ExprNode& n = e.node();
  if (n.kind == ExprKind::Symbol) out.insert(n.symbol);
  if (n.kind == ExprKind::Derivative) {
    out.insert(n.symbol);
    out.insert(n.driver);
  }
  for (const auto& a : n.args) collect_symbols(a, out);
}

void collect_derivatives(const Expression& e, std::set<DerivativeRef>& out) {
  if (e.empty()) return;
  const ExprNode& n = e.node();
  if (n.kind == ExprKind::Derivative) out.insert({n.symbol, n.driver, n.order});
  for (const auto& a : n.args) collect_derivatives(a, out);
}

}  // namespace dismed
