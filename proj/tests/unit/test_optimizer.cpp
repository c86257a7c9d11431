#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <dismed/config.hpp>
#include <dismed/optimizer.hpp>
#include <dismed/scenario_io.hpp>

#include "support/oracle.hpp"

using namespace dismed;

namespace {

Scenario load(const std::string& name) { return load_scenario(oracle::fixture(name + ".json")); }

DecisionBounds bounds_file(const std::string& name, const Scenario& s) {
  return load_bounds(oracle::fixture(name + ".json"), s);
}

DecisionVector dv(double bb, double bs, double bi, double bn) {
  DecisionVector d;
  d.B_b = bb;
  d.B_s = bs;
  d.B_i = bi;
  d.B_n = bn;
  return d;
}

ResponseFunction poly(Symbol driven, Symbol driver, std::vector<double> coeffs) {
  ResponseFunction rf;
  rf.driven = driven;
  rf.driver = driver;
  rf.coeffs = std::move(coeffs);
  return rf;
}

// Concave capital in B_i and B_n, other decisions fixed at zero.
Scenario concave(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(1, 6), b(0.2, 1.5);
  auto s = load("optimizer_quadratic");
  s.broker_costs.B_i = 0;
  s.broker_costs.B_n = 0;
  const double a1 = a(rng), b1 = b(rng), a2 = a(rng), b2 = b(rng);
  s.responses = {poly(Symbol::RC_br, Symbol::B_i, {0, a1, -b1}),
                 poly(Symbol::SC_br, Symbol::B_n, {0, a2, -b2})};
  s.effort.RC_br = 0;
  s.effort.SC_br = 0;
  return s;
}

DecisionBounds box(const Scenario& s, double hi) {
  auto b = DecisionBounds::fixed_at(s);
  b.range[2] = {0, hi};
  b.range[3] = {0, hi};
  return b;
}

}  // namespace

TEST_CASE("objective examples") {
  const auto s = load("optimizer_constants");
  const auto d = dv(1, 1, 0.5, 0.5);
  CHECK(broker_capital(s, d) == doctest::Approx(5));
  // Capital 5 less cost 3.
  CHECK(d.cost() == doctest::Approx(3));
  CHECK(broker_objective(s, d, ObjectiveMode::Combined) == doctest::Approx(2.0));
  CHECK(broker_objective(s, d, ObjectiveMode::WeightedSum, 1, 1) ==
        broker_objective(s, d, ObjectiveMode::Combined));
  CHECK(broker_objective(s, d, ObjectiveMode::WeightedSum, 2, 0.5) == doctest::Approx(10 - 1.5));

  const auto q = load("optimizer_quadratic");
  CHECK(broker_objective(q, dv(0, 0, 1, 0), ObjectiveMode::Combined) == doctest::Approx(2));
  CHECK(broker_capital(q, dv(0, 0, 2, 0)) == doctest::Approx(4));
}

TEST_CASE("capital needs a response on a decision field") {
  auto s = load("optimizer_constants");
  s.responses.clear();
  try {
    broker_capital(s, dv(1, 1, 1, 1));
    FAIL("expected MissingCapitalResponse");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingCapitalResponse);
  }
}

TEST_CASE("quadratic instance") {
  const auto s = load("optimizer_quadratic");
  const auto b = bounds_file("bounds_quadratic", s);
  OptimizerConfig cfg;
  cfg.workers = 1;

  // Capital alone peaks at the vertex.
  auto cap = maximize_capital(s, b, 1e9, cfg);
  REQUIRE(cap.feasible);
  CHECK(std::fabs(cap.decision.B_i - 2) < 1e-4);
  CHECK(cap.capital == doctest::Approx(4));
  CHECK(broker_objective(s, cap.decision, ObjectiveMode::Combined) == doctest::Approx(2));

  // Capital minus the linear cost of B_i peaks where 4 - 2 B_i = 1.
  auto comb = optimize_broker(s, b, cfg);
  REQUIRE(comb.feasible);
  CHECK(std::fabs(comb.decision.B_i - 1.5) < 1e-4);
  CHECK(comb.objective == doctest::Approx(2.25).epsilon(1e-8));
  CHECK(commission_covers(s, comb.decision));
  CHECK(comb.decision.state == broker_state(s));
}

TEST_CASE("infeasible bounds") {
  const auto s = load("optimizer_quadratic");
  const auto b = bounds_file("bounds_infeasible", s);
  OptimizerConfig cfg;
  auto r = optimize_broker(s, b, cfg);
  CHECK_FALSE(r.feasible);
  CHECK_FALSE(feasible_cost_range(s, b).has_value());
  CHECK(pareto_sweep(s, b, 5, cfg).empty());
}

TEST_CASE("commission constraint") {
  auto s = load("optimizer_quadratic");
  const double cp = s.valuation.c * s.valuation.P;
  CHECK(commission_covers(s, dv(cp / 2, 0, 0, 1e9)));
  CHECK_FALSE(commission_covers(s, dv(cp, 0, 0, 0)));
  CHECK(commission_covers(s, dv(-10, 0, 0, 0)));
  // Evaluated under the argmin state's overlay.
  StateOverlay o;
  o.state = broker_state(s);
  o.overrides[Symbol::c] = 1e-6;
  s.states.overlays[static_cast<std::size_t>(o.state)] = o;
  CHECK_FALSE(commission_covers(s, dv(cp / 2, 0, 0, 0)));
}

TEST_CASE("broker state is the smallest listing state") {
  auto s = load("optimizer_quadratic");
  s.states.E_s = 5;
  s.states.E_p = 3;
  s.states.E_m = 1;
  CHECK(broker_state(s) == ListingState::E_m);
  s.states.E_m = 3;
  CHECK(broker_state(s) == ListingState::E_m);
  s.states.E_m = 4;
  CHECK(broker_state(s) == ListingState::E_p);
}

TEST_CASE("bounds") {
  const auto s = load("optimizer_quadratic");
  auto b = DecisionBounds::fixed_at(s);
  CHECK(b.range[2].lo == s.broker_costs.B_i);
  CHECK(b.range[2].hi == s.broker_costs.B_i);
  b.range[0] = {2, 1};
  try {
    b.check();
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
  auto j = nlohmann::json::parse(R"({"B_i": [0, 3]})");
  auto pb = parse_bounds(j, s);
  CHECK(pb.range[2].hi == 3);
  CHECK(pb.range[0].lo == s.broker_costs.B_b);
}

TEST_CASE("returned points are feasible and reproducible") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 15; ++i) {
    const auto s = concave(rng);
    const auto b = box(s, 8);
    OptimizerConfig cfg;
    cfg.seed = i;
    cfg.workers = 1;
    auto r1 = optimize_broker(s, b, cfg);
    cfg.workers = 4;
    auto r4 = optimize_broker(s, b, cfg);
    REQUIRE(r1.feasible);
    CHECK(commission_covers(s, r1.decision));
    CHECK(r1.decision == r4.decision);
    CHECK(r1.objective == r4.objective);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(r1.decision[k] >= b.range[k].lo);
      CHECK(r1.decision[k] <= b.range[k].hi);
    }
  }
}

TEST_CASE("pareto frontier") {
  OptimizerConfig cfg;
  cfg.workers = 1;

  SUBCASE("constant capital collapses to the cheapest point") {
    const auto s = load("optimizer_constants");
    auto b = DecisionBounds::fixed_at(s);
    b.range[0] = {0, 1000};
    b.range[2] = {0, 300};
    auto pts = pareto_sweep(s, b, 6, cfg);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].cost == doctest::Approx(s.broker_costs.B_s + s.broker_costs.B_n));
    CHECK(pts[0].capital == doctest::Approx(5));
  }

  SUBCASE("two points are the endpoints") {
    const auto s = load("optimizer_quadratic");
    const auto b = bounds_file("bounds_quadratic", s);
    auto pts = pareto_sweep(s, b, 2, cfg);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].cost == doctest::Approx(0));
    CHECK(pts[0].capital == doctest::Approx(0));
    CHECK(std::fabs(pts[1].decision.B_i - 2) < 1e-4);
    CHECK(pts[1].capital == doctest::Approx(4));
  }

  SUBCASE("frontier is sorted and mutually non-dominated") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 5; ++i) {
      const auto s = concave(rng);
      auto pts = pareto_sweep(s, box(s, 8), 12, cfg);
      REQUIRE(pts.size() >= 2);
      for (std::size_t k = 1; k < pts.size(); ++k) {
        CHECK(pts[k].cost > pts[k - 1].cost);
        CHECK(pts[k].capital > pts[k - 1].capital);
      }
      for (const auto& p : pts) CHECK(commission_covers(s, p.decision));
    }
  }

  SUBCASE("too few points") {
    const auto s = load("optimizer_quadratic");
    try {
      pareto_sweep(s, bounds_file("bounds_quadratic", s), 1, cfg);
      FAIL("expected InvalidArgument");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InvalidArgument);
    }
  }
}

TEST_CASE("weighted-sum optima lie on the frontier") {
  std::mt19937_64 rng(5);
  OptimizerConfig cfg;
  cfg.workers = 1;
  for (int i = 0; i < 10; ++i) {
    const auto s = concave(rng);
    const auto b = box(s, 8);
    for (auto [wc, wk] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 0.5}, {1.0, 3.0}}) {
      cfg.mode = ObjectiveMode::WeightedSum;
      cfg.w_capital = wc;
      cfg.w_cost = wk;
      auto ws = optimize_broker(s, b, cfg);
      REQUIRE(ws.feasible);
      // No cheaper-or-equal point carries more capital.
      auto best = maximize_capital(s, b, ws.cost + 1e-9, cfg);
      CHECK(best.capital <= ws.capital + 1e-3 * std::max(1.0, std::fabs(ws.capital)));
    }
  }
}
