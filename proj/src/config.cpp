#include "dismed/config.hpp"

#include <cmath>

#include "dismed/scenario_io.hpp"

namespace dismed {
namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(Errc::ParseError, "config: " + msg); }

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  for (const auto& [k, _] : j.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) throw Error(Errc::UnknownField, "config: unknown key '" + where + k + "'");
  }
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) bad(key + " must be a number");
  return j.get<double>();
}

double positive(const json& j, const std::string& key) {
  const double v = number(j, key);
  if (!(v > 0) || !std::isfinite(v)) bad(key + " must be positive");
  return v;
}

bool boolean(const json& j, const std::string& key) {
  if (!j.is_boolean()) bad(key + " must be true or false");
  return j.get<bool>();
}

std::string text(const json& j, const std::string& key) {
  if (!j.is_string()) bad(key + " must be a string");
  return j.get<std::string>();
}

long long integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) bad(key + " must be an integer");
  return j.get<long long>();
}

template <class E>
E choice(const json& j, const std::string& key,
         std::initializer_list<std::pair<const char*, E>> options) {
  const std::string v = text(j, key);
  for (const auto& [name, value] : options) {
    if (v == name) return value;
  }
  bad(key + " has unsupported value '" + v + "'");
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  only_keys(j,
            {"rel_tol", "zero_tol", "fd_step_scale", "aggregation", "intersection", "guard_mode",
             "b1_guard", "seller_uses_U_sa", "horizon", "optimizer", "workers", "format",
             "bounds"},
            "");
  RunConfig c;
  if (j.contains("rel_tol")) c.eval.rel_tol = positive(j["rel_tol"], "rel_tol");
  if (j.contains("zero_tol")) c.eval.zero_tol = positive(j["zero_tol"], "zero_tol");
  if (j.contains("fd_step_scale")) {
    c.eval.fd_step_scale = positive(j["fd_step_scale"], "fd_step_scale");
  }
  if (j.contains("aggregation")) {
    const json& a = j["aggregation"];
    only_keys(a, {"mode", "q", "violations_blocking"}, "aggregation.");
    if (a.contains("mode")) {
      c.agg.mode = choice<AggregationMode>(a["mode"], "aggregation.mode",
                                           {{"conjunction", AggregationMode::Conjunction},
                                            {"quorum", AggregationMode::Quorum}});
    }
    if (a.contains("q")) {
      c.agg.q = number(a["q"], "aggregation.q");
      if (!(c.agg.q > 0 && c.agg.q <= 1)) bad("aggregation.q must lie in (0, 1]");
    }
    if (a.contains("violations_blocking")) {
      c.agg.violations_blocking = boolean(a["violations_blocking"], "aggregation.violations_blocking");
    }
  }
  if (j.contains("intersection")) {
    c.eval.joint = choice<JointMode>(j["intersection"], "intersection",
                                     {{"product", JointMode::Product}, {"min", JointMode::Min}});
  }
  if (j.contains("guard_mode")) {
    c.eval.guard = choice<GuardMode>(j["guard_mode"], "guard_mode",
                                     {{"vacuous", GuardMode::Vacuous},
                                      {"skip", GuardMode::Skip},
                                      {"violated", GuardMode::Violated}});
  }
  if (j.contains("b1_guard")) {
    c.eval.b1 = choice<B1Reading>(j["b1_guard"], "b1_guard",
                                  {{"guard", B1Reading::Guard}, {"joint", B1Reading::Joint}});
  }
  if (j.contains("seller_uses_U_sa")) {
    c.eval.seller_uses_U_sa = boolean(j["seller_uses_U_sa"], "seller_uses_U_sa");
  }
  if (j.contains("horizon")) {
    const json& h = j["horizon"];
    only_keys(h, {"T", "dt"}, "horizon.");
    if (h.contains("T")) c.eval.horizon = positive(h["T"], "horizon.T");
    if (h.contains("dt")) c.eval.dt = positive(h["dt"], "horizon.dt");
    if (c.eval.dt > c.eval.horizon) bad("horizon.dt must not exceed horizon.T");
  }
  if (j.contains("optimizer")) {
    const json& o = j["optimizer"];
    only_keys(o, {"mode", "weights", "restarts", "seed", "max_iterations"}, "optimizer.");
    if (o.contains("mode")) {
      c.optimizer.mode = choice<ObjectiveMode>(o["mode"], "optimizer.mode",
                                               {{"combined", ObjectiveMode::Combined},
                                                {"weighted_sum", ObjectiveMode::WeightedSum}});
    }
    if (o.contains("weights")) {
      const json& w = o["weights"];
      if (!w.is_array() || w.size() != 2) bad("optimizer.weights must be [w_capital, w_cost]");
      c.optimizer.w_capital = number(w[0], "optimizer.weights[0]");
      c.optimizer.w_cost = number(w[1], "optimizer.weights[1]");
    }
    if (o.contains("restarts")) {
      const auto r = integer(o["restarts"], "optimizer.restarts");
      if (r < 1) bad("optimizer.restarts must be >= 1");
      c.optimizer.restarts = static_cast<int>(r);
    }
    if (o.contains("seed")) {
      if (!o["seed"].is_number_unsigned()) bad("optimizer.seed must be a non-negative integer");
      c.optimizer.seed = o["seed"].get<std::uint64_t>();
    }
    if (o.contains("max_iterations")) {
      const auto m = integer(o["max_iterations"], "optimizer.max_iterations");
      if (m < 1) bad("optimizer.max_iterations must be >= 1");
      c.optimizer.max_iterations = static_cast<int>(m);
    }
  }
  if (j.contains("workers")) {
    const auto w = integer(j["workers"], "workers");
    if (w < 0) bad("workers must be >= 0");
    c.workers = static_cast<int>(w);
  }
  c.optimizer.workers = c.workers;
  if (j.contains("format")) {
    c.format = choice<OutputFormat>(j["format"], "format",
                                    {{"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}});
  }
  if (j.contains("bounds")) {
    if (!j["bounds"].is_object()) bad("bounds must be an object");
    c.bounds = j["bounds"];
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const std::string body = read_text_file(path);
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
  return parse_run_config(j);
}

DecisionBounds parse_bounds(const json& j, const Scenario& s) {
  only_keys(j, {"B_b", "B_s", "B_i", "B_n"}, "bounds.");
  DecisionBounds b = DecisionBounds::fixed_at(s);
  for (std::size_t i = 0; i < kDecisionSymbols.size(); ++i) {
    const std::string name(symbol_name(kDecisionSymbols[i]));
    if (!j.contains(name)) continue;
    const json& r = j[name];
    if (!r.is_array() || r.size() != 2) bad("bounds." + name + " must be [lo, hi]");
    b.range[i] = {number(r[0], "bounds." + name), number(r[1], "bounds." + name)};
  }
  b.check();
  return b;
}

DecisionBounds load_bounds(const std::filesystem::path& path, const Scenario& s) {
  const std::string body = read_text_file(path);
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
  return parse_bounds(j, s);
}

nlohmann::ordered_json eval_config_to_json(const EvalConfig& e) {
  nlohmann::ordered_json j;
  j["rel_tol"] = e.rel_tol;
  j["zero_tol"] = e.zero_tol;
  j["fd_step_scale"] = e.fd_step_scale;
  j["intersection"] = e.joint == JointMode::Product ? "product" : "min";
  j["guard_mode"] = e.guard == GuardMode::Vacuous ? "vacuous"
                    : e.guard == GuardMode::Skip  ? "skip"
                                                  : "violated";
  j["b1_guard"] = e.b1 == B1Reading::Guard ? "guard" : "joint";
  j["seller_uses_U_sa"] = e.seller_uses_U_sa;
  j["horizon"] = {{"T", e.horizon}, {"dt", e.dt}};
  return j;
}

nlohmann::ordered_json aggregation_to_json(const AggregationConfig& a) {
  nlohmann::ordered_json j;
  j["mode"] = a.mode == AggregationMode::Conjunction ? "conjunction" : "quorum";
  j["q"] = a.q;
  j["violations_blocking"] = a.violations_blocking;
  return j;
}

nlohmann::ordered_json run_config_to_json(const RunConfig& c) {
  nlohmann::ordered_json j = eval_config_to_json(c.eval);
  j["aggregation"] = aggregation_to_json(c.agg);
  nlohmann::ordered_json o;
  o["mode"] = c.optimizer.mode == ObjectiveMode::Combined ? "combined" : "weighted_sum";
  o["weights"] = {c.optimizer.w_capital, c.optimizer.w_cost};
  o["restarts"] = c.optimizer.restarts;
  o["seed"] = c.optimizer.seed;
  o["max_iterations"] = c.optimizer.max_iterations;
  j["optimizer"] = o;
  j["workers"] = c.workers;
  j["format"] = c.format == OutputFormat::Json ? "json" : "csv";
  if (c.bounds) j["bounds"] = nlohmann::ordered_json::parse(c.bounds->dump());
  return j;
}

}  // namespace dismed
