#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <dismed/market_sim.hpp>
#include <dismed/report.hpp>
#include <dismed/rng.hpp>

#include "support/edits.hpp"
#include "support/oracle.hpp"
#include "support/random_scenario.hpp"

using namespace dismed;

namespace {

Scenario load(const std::string& name) { return load_scenario(oracle::fixture(name + ".json")); }
DistributionSpec dist(const std::string& name) {
  return load_distribution(oracle::fixture(name + ".json"));
}
ConditionId id(const char* text) { return *ConditionId::parse(text); }

template <class F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::IoError;
}

const SetRate& set_rate(const SweepStats& st, ConditionSet set) {
  return *std::find_if(st.sets.begin(), st.sets.end(),
                       [&](const SetRate& r) { return r.set == set; });
}

const ConditionFrequency& freq(const SweepStats& st, const char* cid) {
  return *std::find_if(st.conditions.begin(), st.conditions.end(),
                       [&](const ConditionFrequency& f) { return f.id == id(cid); });
}

}  // namespace

TEST_CASE("point-mass distributions copy the base") {
  const auto base = load("all_three_satisfied");
  auto out = sample_scenarios(base, dist("dist_point"), 7, 1);
  REQUIRE(out.scenarios.size() == 7);
  CHECK(out.rejections == 0);
  for (const auto& s : out.scenarios) CHECK(canonical_scenario_text(s) == canonical_scenario_text(base));

  DistributionSpec pm;
  Marginal m;
  m.value = 0.04;
  pm.marginals[Symbol::c] = m;
  out = sample_scenarios(base, pm, 3, 1);
  for (const auto& s : out.scenarios) CHECK(s.valuation.c == 0.04);
}

TEST_CASE("sampling is deterministic and independent of worker count") {
  const auto base = load("all_three_satisfied");
  const auto d = dist("dist_wide");
  auto a = sample_scenarios(base, d, 200, 9, 1);
  auto b = sample_scenarios(base, d, 200, 9, 1);
  auto c = sample_scenarios(base, d, 200, 9, 6);
  REQUIRE(a.scenarios.size() == 200);
  CHECK(a.rejections == b.rejections);
  CHECK(a.rejections == c.rejections);
  for (std::size_t i = 0; i < a.scenarios.size(); ++i) {
    CHECK(canonical_scenario_text(a.scenarios[i]) == canonical_scenario_text(b.scenarios[i]));
    CHECK(canonical_scenario_text(a.scenarios[i]) == canonical_scenario_text(c.scenarios[i]));
  }
  auto other = sample_scenarios(base, d, 200, 10, 1);
  CHECK(canonical_scenario_text(other.scenarios[0]) != canonical_scenario_text(a.scenarios[0]));
}

TEST_CASE("invalid draws are rejected and never emitted") {
  const auto base = load("all_three_satisfied");
  auto out = sample_scenarios(base, dist("dist_uniform_c"), 200, 3, 2);
  REQUIRE(out.scenarios.size() == 200);
  CHECK(out.rejections > 0);
  for (const auto& s : out.scenarios) {
    CHECK(s.valuation.c < 1);
    CHECK(validate_scenario(s).ok());
  }
  auto wide = sample_scenarios(base, dist("dist_wide"), 300, 4, 3);
  for (const auto& s : wide.scenarios) {
    CHECK(validate_scenario(s).ok());
    CHECK(s.info.I == s.info.I_p + s.info.I_i);
  }
}

TEST_CASE("rejection limit and argument checks") {
  const auto base = load("all_three_satisfied");
  DistributionSpec bad;
  Marginal m;
  m.kind = MarginalKind::Uniform;
  m.lo = 1.1;
  m.hi = 1.2;
  bad.marginals[Symbol::c] = m;
  CHECK(error_code([&] { sample_scenarios(base, bad, 2, 1); }) == Errc::RejectionLimit);
  CHECK(error_code([&] { sample_scenarios(base, dist("dist_point"), 0, 1); }) ==
        Errc::InvalidArgument);
}

TEST_CASE("distribution files") {
  auto j = nlohmann::json::parse(R"({"marginals": {"zeta": {"kind": "point", "value": 1}}})");
  CHECK(error_code([&] { parse_distribution(j); }) == Errc::UnknownField);
  j = nlohmann::json::parse(R"({"marginals": {"c": {"kind": "point", "value": 1, "x": 2}}})");
  CHECK(error_code([&] { parse_distribution(j); }) == Errc::UnknownField);
  j = nlohmann::json::parse(R"({"marginals": {"I": {"kind": "point", "value": 1}}})");
  CHECK(error_code([&] { parse_distribution(j); }) == Errc::ParseError);
  j = nlohmann::json::parse(R"({"marginals": {"c": {"kind": "cauchy"}}})");
  CHECK(error_code([&] { parse_distribution(j); }) == Errc::ParseError);
  j = nlohmann::json::parse(R"({"extra": {}})");
  CHECK(error_code([&] { parse_distribution(j); }) == Errc::UnknownField);

  for (auto name : {"dist_point", "dist_mixture", "dist_uniform_c", "dist_wide"}) {
    const auto d = dist(name);
    const auto back = parse_distribution(nlohmann::json::parse(distribution_to_json(d).dump()));
    CHECK(distribution_to_json(back) == distribution_to_json(d));
  }
}

TEST_CASE("degenerate sweeps") {
  EvalConfig cfg;
  auto st = run_sweep(load("all_satisfied_buyer"), dist("dist_point"), 20, 1, cfg);
  CHECK(set_rate(st, ConditionSet::Buyer).rate == 1.0);
  CHECK(st.n == 20);
  st = run_sweep(load("buyer_b5_violated"), dist("dist_point"), 20, 1, cfg);
  CHECK(set_rate(st, ConditionSet::Buyer).rate == 0.0);
  CHECK(freq(st, "B5").frequency == 0.0);
  CHECK(freq(st, "B4").frequency == 1.0);
}

TEST_CASE("two-point mixture matches a replay of the draw sequence") {
  const auto base = load("all_satisfied_buyer");
  const auto d = dist("dist_mixture");
  const std::size_t n = 1000;
  const std::uint64_t seed = 42;

  // Each draw uses its own engine keyed by (seed, draw, attempt); both
  // values are valid, so attempt 0 is always accepted.
  std::uint64_t satisfying = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    auto rng = substream(seed, i, 0);
    std::discrete_distribution<std::size_t> pick({1.0, 1.0});
    satisfying += pick(rng) == 0;
  }
  REQUIRE(satisfying > 400);
  REQUIRE(satisfying < 600);

  EvalConfig cfg;
  auto st = run_sweep(base, d, n, seed, cfg, {}, 4);
  CHECK(st.rejections == 0);
  CHECK(set_rate(st, ConditionSet::Buyer).satisfied == satisfying);
  CHECK(set_rate(st, ConditionSet::Buyer).rate == double(satisfying) / double(n));
  CHECK(freq(st, "B5").satisfied == satisfying);

  auto samples = sample_scenarios(base, d, n, seed, 2);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto rng = substream(seed, i, 0);
    std::discrete_distribution<std::size_t> pick({1.0, 1.0});
    CHECK(samples.scenarios[i].search.psi_bi == (pick(rng) == 0 ? 6000.0 : 9000.0));
  }
}

TEST_CASE("sweep frequencies are bounded and consistent") {
  EvalConfig cfg;
  const auto base = load("all_three_satisfied");
  auto st = run_sweep(base, dist("dist_wide"), 400, 17, cfg, {}, 3);
  auto again = run_sweep(base, dist("dist_wide"), 400, 17, cfg, {}, 1);
  RunConfig rc;
  CHECK(json_text(sweep_to_json(st, rc)) == json_text(sweep_to_json(again, rc)));
  CHECK(sweep_csv(st) == sweep_csv(again));
  CHECK(st.conditions.size() == 44);
  for (const auto& f : st.conditions) {
    CHECK(f.frequency >= 0);
    CHECK(f.frequency <= 1);
    CHECK(f.satisfied + f.violated + f.indeterminate == st.n);
  }
  for (const auto& sr : st.sets) {
    CHECK(sr.rate >= 0);
    CHECK(sr.rate <= 1);
    for (const auto& f : st.conditions) {
      if (f.id.set == sr.set) CHECK(sr.rate <= f.frequency);
    }
  }
  auto only = run_sweep(base, dist("dist_wide"), 50, 17, cfg, {}, 1, ConditionSet::Seller);
  CHECK(only.conditions.size() == 18);
  CHECK(only.sets.size() == 1);
  CHECK_FALSE(st.stream.empty());
}

TEST_CASE("sensitivity examples") {
  EvalConfig cfg;
  auto s = load("all_three_satisfied");
  edits::set_values(s, {{"psi_b", 9}, {"psi_bi", 7}, {"U_iw", 9}, {"U_ip", 4}});
  auto r = sensitivity(s, id("B5"), Symbol::psi_b, 0.1, cfg);
  CHECK(r.status == Status::Satisfied);
  CHECK(r.margin == doctest::Approx(2));
  CHECK(*r.margin_plus == doctest::Approx(2.9));
  CHECK(*r.margin_minus == doctest::Approx(1.1));
  CHECK(*r.elasticity == doctest::Approx(4.5));
  REQUIRE(r.delta_to_flip.has_value());
  CHECK(eval_condition(with_symbol(s, Symbol::psi_b, 9 + *r.delta_to_flip), id("B5"), cfg).status ==
        Status::Violated);
  CHECK(*r.delta_to_flip == doctest::Approx(-2).epsilon(1e-9));

  r = sensitivity(s, id("B5"), Symbol::SC_s, 0.1, cfg);
  CHECK(*r.elasticity == 0);
  CHECK_FALSE(r.delta_to_flip.has_value());

  auto w = load("all_three_satisfied");
  edits::set_values(w, {{"psi_bi", 100}, {"rho_i", 0.5}, {"c", 0.06}, {"P", 300000}, {"rho_p", 0.9}});
  r = sensitivity(w, id("W3"), Symbol::psi_bi, 0.1, cfg);
  auto margin = [](double psi_bi) { return psi_bi * 0.5 - 0.06 * 300000 * 0.9; };
  CHECK(r.status == Status::Violated);
  CHECK(r.margin == doctest::Approx(margin(100)));
  CHECK(r.margin == doctest::Approx(-16150));
  const double expect = ((margin(110) - margin(90)) / margin(100)) / 0.2;
  CHECK(*r.elasticity == doctest::Approx(expect));
  CHECK_FALSE(r.delta_to_flip.has_value());
}

TEST_CASE("sensitivity errors") {
  EvalConfig cfg;
  auto s = load("zero_responses");
  CHECK(error_code([&] { sensitivity(s, id("B8"), Symbol::psi_bi, 0.1, cfg); }) ==
        Errc::IndeterminateAtBase);
  auto g = load("all_three_satisfied");
  edits::set_values(g, {{"U_iw", 10}, {"U_ip", 20}});
  CHECK(error_code([&] { sensitivity(g, id("B1"), Symbol::I_i, 0.1, cfg); }) ==
        Errc::IndeterminateAtBase);
  CHECK(error_code([&] { sensitivity(g, id("B5"), Symbol::I, 0.1, cfg); }) ==
        Errc::InvalidArgument);
  CHECK(error_code([&] { sensitivity(g, id("B5"), Symbol::B_total, 0.1, cfg); }) ==
        Errc::InvalidArgument);
  CHECK(error_code([&] { sensitivity(g, id("B5"), Symbol::psi_b, 1.5, cfg); }) ==
        Errc::InvalidArgument);
}

TEST_CASE("sensitivity margin sign agrees with status") {
  EvalConfig cfg;
  std::mt19937_64 rng(404);
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    const auto s = testgen::random_scenario(rng);
    for (auto cid : all_conditions()) {
      const auto v = eval_condition(s, cid, cfg);
      if (v.status != Status::Satisfied && v.status != Status::Violated) continue;
      if (cid.index % 5 != i % 5) continue;
      auto r = sensitivity(s, cid, Symbol::psi_b, 0.05, cfg);
      CHECK(r.status == v.status);
      CHECK((r.margin > 0) == (v.status == Status::Satisfied));
      ++checked;
    }
  }
  CHECK(checked > 50);
}
