#include "dismed/market_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "dismed/parallel.hpp"
#include "dismed/rng.hpp"
#include "dismed/scenario_io.hpp"

namespace dismed {
namespace {

constexpr std::uint64_t kRejectionFactor = 1000;
constexpr int kFlipScanSteps = 64;
constexpr int kBisectionSteps = 60;

[[noreturn]] void bad(const std::string& msg) { throw Error(Errc::ParseError, "distribution: " + msg); }

double number(const nlohmann::json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) bad(where + "." + key + " must be a number");
  return it->get<double>();
}

std::vector<double> numbers(const nlohmann::json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) bad(where + "." + key + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : *it) {
    if (!v.is_number()) bad(where + "." + key + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

void only_keys(const nlohmann::json& j, std::initializer_list<const char*> keys,
               const std::string& where) {
  for (const auto& [k, _] : j.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) throw Error(Errc::UnknownField, "distribution: unknown key '" + where + "." + k + "'");
  }
}

Marginal parse_marginal(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) bad(where + ".kind must be a string");
  const auto k = kind->get<std::string>();
  Marginal m;
  if (k == "point") {
    only_keys(j, {"kind", "value"}, where);
    m.kind = MarginalKind::Point;
    m.value = number(j, "value", where);
  } else if (k == "uniform") {
    only_keys(j, {"kind", "lo", "hi"}, where);
    m.kind = MarginalKind::Uniform;
    m.lo = number(j, "lo", where);
    m.hi = number(j, "hi", where);
    if (!(m.lo <= m.hi)) bad(where + " needs lo <= hi");
  } else if (k == "normal") {
    only_keys(j, {"kind", "mean", "sd"}, where);
    m.kind = MarginalKind::Normal;
    m.mean = number(j, "mean", where);
    m.sd = number(j, "sd", where);
    if (!(m.sd >= 0)) bad(where + " needs sd >= 0");
  } else if (k == "discrete") {
    only_keys(j, {"kind", "values", "weights"}, where);
    m.kind = MarginalKind::Discrete;
    m.values = numbers(j, "values", where);
    m.weights = j.contains("weights") ? numbers(j, "weights", where)
                                      : std::vector<double>(m.values.size(), 1.0);
    if (m.values.empty() || m.values.size() != m.weights.size()) {
      bad(where + " needs matching non-empty values and weights");
    }
    double total = 0;
    for (double w : m.weights) {
      if (!(w >= 0) || !std::isfinite(w)) bad(where + " weights must be finite and >= 0");
      total += w;
    }
    if (!(total > 0)) bad(where + " weights must not all be zero");
  } else {
    bad(where + ".kind must be point, uniform, normal or discrete");
  }
  return m;
}

double draw_value(const Marginal& m, std::mt19937_64& rng) {
  switch (m.kind) {
    case MarginalKind::Point: return m.value;
    case MarginalKind::Uniform: {
      if (m.lo == m.hi) return m.lo;
      return std::uniform_real_distribution<double>(m.lo, m.hi)(rng);
    }
    case MarginalKind::Normal: {
      if (m.sd == 0) return m.mean;
      return std::normal_distribution<double>(m.mean, m.sd)(rng);
    }
    case MarginalKind::Discrete: {
      std::discrete_distribution<std::size_t> pick(m.weights.begin(), m.weights.end());
      return m.values[pick(rng)];
    }
  }
  return m.value;
}

bool passes(Status s) { return s == Status::Satisfied || s == Status::VacuouslySatisfied; }

double rate(std::uint64_t k, std::uint64_t n) {
  return n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n);
}

}  // namespace

DistributionSpec parse_distribution(const nlohmann::json& j) {
  if (!j.is_object()) bad("top level must be an object");
  only_keys(j, {"marginals"}, "");
  DistributionSpec d;
  auto it = j.find("marginals");
  if (it == j.end()) return d;
  if (!it->is_object()) bad("marginals must be an object");
  for (const auto& [name, spec] : it->items()) {
    const auto sym = symbol_from_name(name);
    if (!sym) throw Error(Errc::UnknownField, "distribution: unknown symbol '" + name + "'");
    if (is_composite(*sym) || *sym == Symbol::I) {
      bad("'" + name + "' cannot be sampled directly");
    }
    d.marginals[*sym] = parse_marginal(spec, "marginals." + name);
  }
  return d;
}

DistributionSpec load_distribution(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
  return parse_distribution(j);
}

nlohmann::ordered_json distribution_to_json(const DistributionSpec& d) {
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& [sym, mg] : d.marginals) {
    nlohmann::ordered_json e;
    switch (mg.kind) {
      case MarginalKind::Point:
        e["kind"] = "point";
        e["value"] = mg.value;
        break;
      case MarginalKind::Uniform:
        e["kind"] = "uniform";
        e["lo"] = mg.lo;
        e["hi"] = mg.hi;
        break;
      case MarginalKind::Normal:
        e["kind"] = "normal";
        e["mean"] = mg.mean;
        e["sd"] = mg.sd;
        break;
      case MarginalKind::Discrete:
        e["kind"] = "discrete";
        e["values"] = mg.values;
        e["weights"] = mg.weights;
        break;
    }
    m[std::string(symbol_name(sym))] = e;
  }
  nlohmann::ordered_json out;
  out["marginals"] = m;
  return out;
}

Scenario draw_scenario(const Scenario& base, const DistributionSpec& dist, std::uint64_t seed,
                       std::uint64_t draw, std::uint64_t attempt) {
  auto rng = substream(seed, draw, attempt);
  Scenario s = base;
  for (const auto& [sym, m] : dist.marginals) set_symbol(s, sym, draw_value(m, rng));
  s.info.I = s.info.I_p + s.info.I_i;
  reanchor_responses(s);
  return s;
}

SampleSet sample_scenarios(const Scenario& base, const DistributionSpec& dist, std::size_t n,
                           std::uint64_t seed, int workers) {
  if (n < 1) throw Error(Errc::InvalidArgument, "sample count must be at least 1");
  const std::uint64_t limit = kRejectionFactor * n;
  SampleSet out;
  out.scenarios.resize(n);
  std::vector<std::uint64_t> rejected(n, 0);
  std::vector<char> ok(n, 0);
  // Rejections only accumulate, so once the running total passes the limit
  // the outcome is already decided and remaining draws can stop.
  std::atomic<std::uint64_t> running{0};
  parallel_for(n, workers, [&](std::size_t i) {
    for (std::uint64_t a = 0; running.load() <= limit; ++a) {
      Scenario s = draw_scenario(base, dist, seed, i, a);
      if (validate_scenario(s).ok()) {
        out.scenarios[i] = std::move(s);
        ok[i] = 1;
        return;
      }
      ++rejected[i];
      ++running;
    }
  });
  for (std::size_t i = 0; i < n; ++i) out.rejections += rejected[i];
  if (out.rejections > limit || std::find(ok.begin(), ok.end(), 0) != ok.end()) {
    throw Error(Errc::RejectionLimit, std::to_string(out.rejections) +
                                          " rejected draws exceed the limit of " +
                                          std::to_string(limit));
  }
  return out;
}

SweepStats run_sweep(const Scenario& base, const DistributionSpec& dist, std::size_t n,
                     std::uint64_t seed, const EvalConfig& cfg, const AggregationConfig& agg,
                     int workers, std::optional<ConditionSet> only) {
  const SampleSet samples = sample_scenarios(base, dist, n, seed, workers);

  std::vector<ConditionSet> sets;
  if (only) {
    sets.push_back(*only);
  } else {
    sets = {ConditionSet::Buyer, ConditionSet::BrokerWeb, ConditionSet::Seller};
  }

  std::vector<std::vector<ConditionReport>> reports(n);
  parallel_for(n, workers, [&](std::size_t i) {
    for (ConditionSet set : sets) {
      reports[i].push_back(eval_condition_set(samples.scenarios[i], set, cfg, agg));
    }
  });

  SweepStats st;
  st.scenario_label = base.label;
  st.n = n;
  st.seed = seed;
  st.rejections = samples.rejections;
  st.stream = std::string(kStreamName);
  st.eval = cfg;
  st.agg = agg;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    SetRate sr;
    sr.set = sets[k];
    std::vector<ConditionFrequency> freq;
    for (const auto& id : conditions_of(sets[k])) freq.push_back({id});
    for (std::size_t i = 0; i < n; ++i) {
      const ConditionReport& r = reports[i][k];
      for (std::size_t c = 0; c < r.verdicts.size(); ++c) {
        const Status s = r.verdicts[c].status;
        if (passes(s)) ++freq[c].satisfied;
        else if (s == Status::Violated) ++freq[c].violated;
        else ++freq[c].indeterminate;
      }
      switch (r.aggregate) {
        case AggregateStatus::Satisfied: ++sr.satisfied; break;
        case AggregateStatus::NotSatisfied: ++sr.not_satisfied; break;
        case AggregateStatus::Indeterminate: ++sr.indeterminate; break;
      }
    }
    for (auto& f : freq) {
      f.frequency = rate(f.satisfied, n);
      f.indeterminate_rate = rate(f.indeterminate, n);
      st.conditions.push_back(f);
    }
    sr.rate = rate(sr.satisfied, n);
    sr.indeterminate_rate = rate(sr.indeterminate, n);
    st.sets.push_back(sr);
  }
  return st;
}

SensitivityResult sensitivity(const Scenario& s, ConditionId id, Symbol parameter, double rel_step,
                              const EvalConfig& cfg) {
  if (is_composite(parameter) || parameter == Symbol::I) {
    throw Error(Errc::InvalidArgument,
                "sensitivity parameter must be a stored symbol other than I");
  }
  if (!(rel_step > 0) || !(rel_step < 1)) {
    throw Error(Errc::InvalidArgument, "rel_step must lie in (0, 1)");
  }
  const ConditionVerdict base = eval_condition(s, id, cfg);
  if (base.status == Status::Indeterminate || base.status == Status::VacuouslySatisfied ||
      !base.margin) {
    throw Error(Errc::IndeterminateAtBase,
                id.str() + " is " + std::string(status_name(base.status)) + " at the base point");
  }

  SensitivityResult r;
  r.condition = id;
  r.parameter = parameter;
  r.rel_step = rel_step;
  r.status = base.status;
  r.margin = *base.margin;
  const double p = get_symbol(s, parameter);
  r.base_value = p;

  auto verdict_at = [&](double x) { return eval_condition(with_symbol(s, parameter, x), id, cfg); };
  auto margin_at = [&](double x) -> std::optional<double> {
    const ConditionVerdict v = verdict_at(x);
    if (v.status == Status::Indeterminate || v.status == Status::VacuouslySatisfied) return std::nullopt;
    return v.margin;
  };

  if (p != 0) {
    r.margin_minus = margin_at(p * (1 - rel_step));
    r.margin_plus = margin_at(p * (1 + rel_step));
    if (r.margin_minus && r.margin_plus && r.margin != 0) {
      r.elasticity = ((*r.margin_plus - *r.margin_minus) / r.margin) / (2 * rel_step);
    }

    const bool base_pass = passes(base.status);
    auto flipped = [&](double delta) {
      const ConditionVerdict v = verdict_at(p + delta);
      return v.status != Status::Indeterminate && passes(v.status) != base_pass;
    };
    const double half = 0.5 * std::fabs(p);
    for (double dir : {-1.0, 1.0}) {
      double inside = 0;
      for (int k = 1; k <= kFlipScanSteps; ++k) {
        const double delta = dir * half * k / kFlipScanSteps;
        if (!flipped(delta)) {
          inside = delta;
          continue;
        }
        double outside = delta;
        for (int b = 0; b < kBisectionSteps; ++b) {
          const double mid = 0.5 * (inside + outside);
          if (flipped(mid)) outside = mid;
          else inside = mid;
        }
        if (!r.delta_to_flip || std::fabs(outside) < std::fabs(*r.delta_to_flip)) {
          r.delta_to_flip = outside;
        }
        break;
      }
    }
  }
  return r;
}

}  // namespace dismed
