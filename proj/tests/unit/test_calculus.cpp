#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include <dismed/expression.hpp>
#include <dismed/scenario_io.hpp>

#include "support/oracle.hpp"
#include "support/random_scenario.hpp"

using namespace dismed;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Scenario base() { return load_scenario(oracle::fixture("all_three_satisfied.json")); }

// psi_b = f(U_ip) as a polynomial centred at 0.
Scenario with_poly(double x0, std::vector<double> coeffs) {
  auto s = base();
  s.responses.clear();
  s.utility.U_ip = x0;
  ResponseFunction rf;
  rf.driven = Symbol::psi_b;
  rf.driver = Symbol::U_ip;
  rf.coeffs = std::move(coeffs);
  s.search.psi_b = rf(x0);
  s.responses.push_back(rf);
  return s;
}

ListingStates states(double es, double ep, double em) {
  ListingStates st;
  st.E_s = es;
  st.E_p = ep;
  st.E_m = em;
  return st;
}

}  // namespace

TEST_CASE("argmax and argmin of listing states") {
  CHECK(argmax_state(states(5, 3, 1)) == ListingState::E_s);
  CHECK(argmax_state(states(2, 2, 1)) == ListingState::E_s);
  CHECK(argmax_state(states(-1, 0, 4)) == ListingState::E_m);
  CHECK(argmax_state(states(1, 2, 2)) == ListingState::E_p);
  CHECK(argmin_state(states(5, 3, 1)) == ListingState::E_m);
  CHECK(argmin_state(states(1, 1, 1)) == ListingState::E_m);
  CHECK(argmin_state(states(1, 1, 3)) == ListingState::E_p);
  const ListingState pair[] = {ListingState::E_s, ListingState::E_p};
  CHECK(argmax_state(states(1, 2, 9), pair) == ListingState::E_p);
  CHECK(argmax_state(states(2, 2, 9), pair) == ListingState::E_s);
}

TEST_CASE("approx_equal") {
  CHECK(approx_equal(10, 10, 0.05));
  CHECK(approx_equal(10, 10.4, 0.05));
  CHECK_FALSE(approx_equal(10, 11, 0.05));
  CHECK(approx_equal(0, 0, 0.05));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-100, 100), t(0.001, 0.5);
  for (int i = 0; i < 2000; ++i) {
    const double a = u(rng), b = i % 3 ? u(rng) : a * (1 + t(rng) / 4), tol = t(rng);
    CHECK(approx_equal(a, b, tol) == approx_equal(b, a, tol));
  }
}

TEST_CASE("joint_prob") {
  CHECK(joint_prob(0.5, 0.4, JointMode::Product) == doctest::Approx(0.2));
  CHECK(joint_prob(0.37, 1, JointMode::Product) == 0.37);
  CHECK(joint_prob(0.5, 0.4, JointMode::Min) == 0.4);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const double a = u(rng), b = u(rng);
    for (auto m : {JointMode::Product, JointMode::Min}) {
      const double p = joint_prob(a, b, m);
      CHECK(p == joint_prob(b, a, m));
      CHECK(p >= 0);
      CHECK(p <= 1);
    }
    CHECK(joint_prob(a, b, JointMode::Product) <= joint_prob(a, b, JointMode::Min));
  }
}

TEST_CASE("interval comparisons") {
  const auto one = ExtendedValue::point(1);
  const auto ind = ExtendedValue::indeterminate();
  CHECK(ind.is_indeterminate());
  CHECK(greater(ExtendedValue::point(2), one) == Truth::True);
  CHECK(greater(one, ExtendedValue::point(2)) == Truth::False);
  CHECK(greater(one, one) == Truth::False);
  CHECK(greater(ExtendedValue::interval(0, 2), one) == Truth::Unknown);
  CHECK(greater(ind, one) == Truth::Unknown);
  CHECK(less(ExtendedValue::interval(-3, 0.5), one) == Truth::True);
  CHECK(within(ExtendedValue::interval(-0.001, 0.001), 0.01) == Truth::True);
  CHECK(within(ExtendedValue::interval(-0.001, 0.5), 0.01) == Truth::Unknown);
  CHECK(within(ExtendedValue::point(0.5), 0.01) == Truth::False);

  CHECK(max(ind, one) == ExtendedValue::interval(1, kInf));
  CHECK(min(ind, one) == ExtendedValue::interval(-kInf, 1));
  CHECK(greater(ExtendedValue::point(0.5), max(ind, one)) == Truth::False);
  CHECK(greater(ExtendedValue::point(0.5), min(ind, one)) == Truth::Unknown);

  CHECK(both(Truth::True, Truth::True) == Truth::True);
  CHECK(both(Truth::False, Truth::Unknown) == Truth::False);
  CHECK(both(Truth::Unknown, Truth::True) == Truth::Unknown);

  const auto a = ExtendedValue::interval(-1, 2), b = ExtendedValue::interval(3, 4);
  CHECK(a + b == ExtendedValue::interval(2, 6));
  CHECK(a - b == ExtendedValue::interval(-5, -1));
  CHECK(a * b == ExtendedValue::interval(-4, 8));
  CHECK(b / ExtendedValue::point(2) == ExtendedValue::interval(1.5, 2));
  try {
    (void)(b / a);
    FAIL("expected DivisionByZeroInterval");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DivisionByZeroInterval);
  }
}

TEST_CASE("finite differences through declared responses") {
  EvalConfig cfg;
  auto sq = with_poly(3, {0, 0, 1});
  CHECK(finite_difference(sq, Symbol::psi_b, Symbol::U_ip, 1, 1e-3, Context::Base, cfg)
            .lower() == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(finite_difference(sq, Symbol::psi_b, Symbol::U_ip, 2, 1e-3, Context::Base, cfg)
            .lower() == doctest::Approx(2.0).epsilon(1e-4));
  auto cube = with_poly(2, {0, 0, 0, 1});
  auto d3 = finite_difference(cube, Symbol::psi_b, Symbol::U_ip, 3, 1e-2, Context::Base, cfg);
  CHECK(d3.is_point());
  CHECK(std::fabs(d3.lower() - 6.0) < 1e-3);

  CHECK(finite_difference(sq, Symbol::I_o, Symbol::psi_bi, 1, 0, Context::Base, cfg)
            .is_indeterminate());

  CHECK(central_difference([](double x) { return x * x * x; }, 2, 1, 1e-3) ==
        doctest::Approx(12).epsilon(1e-6));
  CHECK(default_step(0.5, 1e-3) == 1e-3);
  CHECK(default_step(3, 1e-3) == doctest::Approx(3e-3));
  CHECK(default_step(-5000, 1e-3) == doctest::Approx(5));
}

TEST_CASE("state-context responses fall back to the base context") {
  EvalConfig cfg;
  auto s = with_poly(3, {0, 0, 1});
  ResponseFunction rf = s.responses.front();
  rf.context = Context::E_s;
  rf.coeffs = {s.search.psi_b - 30, 10};
  s.responses.push_back(rf);
  REQUIRE(validate_scenario(s).ok());
  auto in_es = finite_difference(s, Symbol::psi_b, Symbol::U_ip, 1, 1e-3, Context::E_s, cfg);
  auto in_ep = finite_difference(s, Symbol::psi_b, Symbol::U_ip, 1, 1e-3, Context::E_p, cfg);
  CHECK(in_es.lower() == doctest::Approx(10));
  CHECK(in_ep.lower() == doctest::Approx(6));
}

TEST_CASE("finite differences on quadratics match analytic derivatives") {
  EvalConfig cfg;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-5, 5), x(-1e4, 1e4);
  for (int i = 0; i < 300; ++i) {
    const double a0 = u(rng), a1 = u(rng), a2 = u(rng), x0 = i % 2 ? x(rng) : u(rng);
    auto s = with_poly(x0, {a0, a1, a2});
    const double d1 = a1 + 2 * a2 * x0, d2 = 2 * a2;
    auto f1 = finite_difference(s, Symbol::psi_b, Symbol::U_ip, 1, 0, Context::Base, cfg);
    auto f2 = finite_difference(s, Symbol::psi_b, Symbol::U_ip, 2, 0, Context::Base, cfg);
    CHECK(std::fabs(f1.lower() - d1) <= 1e-6 * std::max(1.0, std::fabs(d1)));
    CHECK(std::fabs(f2.lower() - d2) <= 1e-6 * std::max(1.0, std::fabs(d2)));
  }
}

TEST_CASE("piecewise-linear responses") {
  ResponseFunction rf;
  rf.kind = ResponseKind::PiecewiseLinear;
  rf.knots = {{0, 0}, {1, 2}, {3, 3}};
  CHECK(rf(0.5) == 1);
  CHECK(rf(2) == 2.5);
  CHECK(rf(-1) == -2);
  CHECK(rf(5) == 4);
  rf.shift(1);
  CHECK(rf(0) == 1);
}

TEST_CASE("expression evaluation") {
  EvalConfig cfg;
  auto s = base();
  s.valuation.c = 0.06;
  s.valuation.P = 300000;
  auto cp = ex::sym(Symbol::c) * ex::sym(Symbol::P);
  auto v = evaluate_expression(s, cp, Context::Base, cfg);
  CHECK(v.is_point());
  CHECK(v.lower() == doctest::Approx(18000));

  s.responses.clear();
  std::vector<std::string> notes;
  auto miss = evaluate_expression(s, ex::d(Symbol::I_o, Symbol::psi_bi), Context::Base, cfg, &notes);
  CHECK(miss.is_indeterminate());
  REQUIRE(notes.size() == 1);
  CHECK(notes[0] == "missing response (I_o, psi_bi)");

  auto bound = ex::max(ex::d(Symbol::I_o, Symbol::psi_bi), ex::constant(1));
  auto x = ex::constant(0.5);
  auto lhs = evaluate_expression(s, x, Context::Base, cfg);
  auto rhs = evaluate_expression(s, bound, Context::Base, cfg);
  CHECK(compare(lhs, Comparison::Greater, rhs, cfg) == Truth::False);

  auto zero = ex::sym(Symbol::P) - ex::sym(Symbol::P);
  try {
    evaluate_expression(s, ex::constant(1) / (zero + ex::d(Symbol::I_o, Symbol::psi_bi)),
                        Context::Base, cfg);
    FAIL("expected DivisionByZeroInterval");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DivisionByZeroInterval);
  }

  auto sum = ex::sym(Symbol::sum_I_p_I_i);
  CHECK(evaluate_expression(s, sum, Context::Base, cfg).lower() == s.info.I_p + s.info.I_i);
  auto mx = ex::sym(Symbol::max_psi_bi_psi_b);
  CHECK(evaluate_expression(s, mx, Context::Base, cfg).lower() ==
        std::max(s.search.psi_bi, s.search.psi_b));
  CHECK(cp.to_string().size() > 0);
}

TEST_CASE("point inputs give point results") {
  EvalConfig cfg;
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    auto s = testgen::random_scenario(rng);
    for (auto id : all_conditions()) {
      auto def = condition_definition(id, cfg);
      for (const auto& p : def.parts) {
        for (const auto& e : {p.lhs, p.rhs}) {
          if (e.empty()) continue;
          if (e.to_string().find("∫") != std::string::npos) continue;
          auto v = evaluate_expression(s, e, resolve_context(s, p.lhs_ctx), cfg);
          CHECK(v.is_point());
        }
      }
    }
  }
}

TEST_CASE("overlay application is idempotent") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    auto s = testgen::random_scenario(rng);
    for (auto ctx : {Context::E_s, Context::E_p, Context::E_m}) {
      const auto once = context_values(s, ctx);
      Scenario applied = s;
      for (std::size_t k = 0; k < kBaseSymbolCount; ++k) {
        set_symbol(applied, symbol_table()[k].id, once[k]);
      }
      CHECK(context_values(applied, ctx) == once);
    }
  }
}

TEST_CASE("horizon integrals") {
  EvalConfig cfg;
  auto s = base();
  s.probs.rho_s = 1;
  CHECK(integrate_horizon(s, ex::sym(Symbol::rho_s) * ex::constant(7), 10, 1, cfg) ==
        doctest::Approx(70));

  TimePath zero;
  zero.symbol = Symbol::rho_s;
  zero.value = 0;
  auto z = s;
  z.time_paths = {zero};
  CHECK(integrate_horizon(z, ex::sym(Symbol::rho_s) * ex::sym(Symbol::P_s), 10, 1, cfg) == 0);

  TimePath line;
  line.symbol = Symbol::rho_s;
  line.kind = PathKind::Linear;
  line.slope = 1;
  auto l = s;
  l.time_paths = {line};
  CHECK(integrate_horizon(l, ex::sym(Symbol::rho_s), 10, 1, cfg) == 50);
  // dt that does not divide T ends with a shorter step; still exact for t.
  CHECK(integrate_horizon(l, ex::sym(Symbol::rho_s), 10, 3, cfg) == doctest::Approx(50));

  TimePath shortp;
  shortp.symbol = Symbol::P_s;
  shortp.kind = PathKind::Samples;
  shortp.times = {0, 0.5};
  shortp.values = {1, 1};
  auto sh = s;
  sh.time_paths = {shortp};
  try {
    integrate_horizon(sh, ex::sym(Symbol::P_s), 1, 0.1, cfg);
    FAIL("expected IndeterminateIntegrand");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndeterminateIntegrand);
  }
  auto nr = s;
  nr.responses.clear();
  try {
    integrate_horizon(nr, ex::d(Symbol::I_o, Symbol::psi_bi), 1, 0.1, cfg);
    FAIL("expected IndeterminateIntegrand");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndeterminateIntegrand);
  }
  try {
    integrate_horizon(s, ex::sym(Symbol::rho_s), 1, 2, cfg);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
}
