#include "dismed/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>

namespace dismed {
namespace {

ojson number_or_null(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

ojson end_json(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  return x;
}

double end_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  if (!j.is_number()) throw Error(Errc::ParseError, "interval end must be a number, \"inf\" or \"-inf\"");
  return j.get<double>();
}

std::string_view truth_name(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    case Truth::Unknown: return "unknown";
  }
  return "";
}

Truth truth_from_name(const std::string& s) {
  if (s == "true") return Truth::True;
  if (s == "false") return Truth::False;
  if (s == "unknown") return Truth::Unknown;
  throw Error(Errc::ParseError, "bad truth value '" + s + "'");
}

Status status_from_name(const std::string& s) {
  for (auto st : {Status::Satisfied, Status::Violated, Status::VacuouslySatisfied,
                  Status::Indeterminate}) {
    if (status_name(st) == s) return st;
  }
  throw Error(Errc::ParseError, "bad status '" + s + "'");
}

AggregateStatus aggregate_from_name(const std::string& s) {
  for (auto a : {AggregateStatus::Satisfied, AggregateStatus::NotSatisfied,
                 AggregateStatus::Indeterminate}) {
    if (aggregate_name(a) == s) return a;
  }
  throw Error(Errc::ParseError, "bad aggregate '" + s + "'");
}

std::optional<double> optional_number(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

ojson decision_json(const DecisionVector& d) {
  ojson j;
  j["B_b"] = d.B_b;
  j["B_s"] = d.B_s;
  j["B_i"] = d.B_i;
  j["B_n"] = d.B_n;
  j["state"] = std::string(state_name(d.state));
  return j;
}

ojson bounds_json(const DecisionBounds& b) {
  ojson j;
  for (std::size_t i = 0; i < kDecisionSymbols.size(); ++i) {
    j[std::string(symbol_name(kDecisionSymbols[i]))] = {b.range[i].lo, b.range[i].hi};
  }
  return j;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_optional(const std::optional<double>& x) { return x ? csv_number(*x) : ""; }

std::string join_notes(const std::vector<std::string>& notes) {
  std::string out;
  for (std::size_t i = 0; i < notes.size(); ++i) {
    if (i > 0) out += "; ";
    out += notes[i];
  }
  return out;
}

}  // namespace

ojson value_to_json(const ExtendedValue& v) {
  if (v.is_point() && std::isfinite(v.lower())) return v.lower();
  ojson j;
  j["lower"] = end_json(v.lower());
  j["upper"] = end_json(v.upper());
  return j;
}

ExtendedValue value_from_json(const nlohmann::json& j) {
  if (j.is_number()) return ExtendedValue::point(j.get<double>());
  if (!j.is_object()) throw Error(Errc::ParseError, "value must be a number or {lower, upper}");
  return ExtendedValue::interval(end_from_json(j.at("lower")), end_from_json(j.at("upper")));
}

ojson verdict_to_json(const ConditionVerdict& v) {
  ojson j;
  j["id"] = v.id.str();
  j["status"] = std::string(status_name(v.status));
  j["lhs"] = value_to_json(v.lhs);
  j["rhs"] = value_to_json(v.rhs);
  j["guard"] = v.guard_status ? ojson(std::string(truth_name(*v.guard_status))) : ojson(nullptr);
  j["skipped"] = v.skipped;
  j["margin"] = number_or_null(v.margin);
  ojson parts = ojson::array();
  for (const auto& p : v.parts) {
    ojson pj;
    pj["text"] = p.text;
    pj["lhs"] = value_to_json(p.lhs);
    pj["rhs"] = value_to_json(p.rhs);
    pj["truth"] = std::string(truth_name(p.truth));
    pj["margin"] = number_or_null(p.margin);
    parts.push_back(pj);
  }
  j["parts"] = parts;
  j["notes"] = v.notes;
  return j;
}

ojson condition_report_to_json(const ConditionReport& r) {
  ojson j;
  j["scenario"] = r.scenario_label;
  j["set"] = std::string(set_name(r.set));
  j["aggregate"] = std::string(aggregate_name(r.aggregate));
  ojson cfg = eval_config_to_json(r.eval);
  cfg["aggregation"] = aggregation_to_json(r.agg);
  j["config"] = cfg;
  ojson vs = ojson::array();
  for (const auto& v : r.verdicts) vs.push_back(verdict_to_json(v));
  j["verdicts"] = vs;
  return j;
}

ConditionReport condition_report_from_json(const nlohmann::json& j) {
  try {
    ConditionReport r;
    r.scenario_label = j.at("scenario").get<std::string>();
    const auto set = set_from_name(j.at("set").get<std::string>());
    if (!set) throw Error(Errc::ParseError, "bad condition set");
    r.set = *set;
    r.aggregate = aggregate_from_name(j.at("aggregate").get<std::string>());
    const RunConfig cfg = parse_run_config(j.at("config"));
    r.eval = cfg.eval;
    r.agg = cfg.agg;
    for (const auto& vj : j.at("verdicts")) {
      ConditionVerdict v;
      const auto id = ConditionId::parse(vj.at("id").get<std::string>());
      if (!id) throw Error(Errc::ParseError, "bad condition id");
      v.id = *id;
      v.status = status_from_name(vj.at("status").get<std::string>());
      v.lhs = value_from_json(vj.at("lhs"));
      v.rhs = value_from_json(vj.at("rhs"));
      if (!vj.at("guard").is_null()) v.guard_status = truth_from_name(vj.at("guard").get<std::string>());
      v.skipped = vj.at("skipped").get<bool>();
      v.margin = optional_number(vj.at("margin"));
      for (const auto& pj : vj.at("parts")) {
        PartTrace p;
        p.text = pj.at("text").get<std::string>();
        p.lhs = value_from_json(pj.at("lhs"));
        p.rhs = value_from_json(pj.at("rhs"));
        p.truth = truth_from_name(pj.at("truth").get<std::string>());
        p.margin = optional_number(pj.at("margin"));
        v.parts.push_back(std::move(p));
      }
      v.notes = vj.at("notes").get<std::vector<std::string>>();
      r.verdicts.push_back(std::move(v));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("condition report: ") + e.what());
  }
}

ojson validation_to_json(const std::string& label, const ValidationReport& r) {
  ojson j;
  j["scenario"] = label;
  j["ok"] = r.ok();
  ojson vs = ojson::array();
  for (const auto& v : r.violations) {
    ojson vj;
    vj["code"] = std::string(violation_name(v.code));
    vj["path"] = v.path;
    vj["message"] = v.message;
    vs.push_back(vj);
  }
  j["violations"] = vs;
  return j;
}

ojson decision_to_json(const DecisionSummary& d, const RunConfig& cfg) {
  ojson j;
  j["scenario"] = d.buyer.scenario_label;
  j["config"] = run_config_to_json(cfg);
  ojson dec;
  dec["buyer_disintermediates"] = std::string(aggregate_name(d.buyer_disintermediates));
  dec["broker_provides_web_info"] = std::string(aggregate_name(d.broker_provides_web_info));
  dec["seller_disintermediates"] = std::string(aggregate_name(d.seller_disintermediates));
  j["decision"] = dec;
  ojson reports;
  reports["buyer"] = condition_report_to_json(d.buyer);
  reports["broker"] = condition_report_to_json(d.broker);
  reports["seller"] = condition_report_to_json(d.seller);
  j["reports"] = reports;
  return j;
}

ojson conditions_to_json(const ConditionReport& r, const RunConfig& cfg) {
  ojson j;
  j["scenario"] = r.scenario_label;
  j["config"] = run_config_to_json(cfg);
  j["report"] = condition_report_to_json(r);
  return j;
}

ojson opt_result_to_json(const OptResult& r, const DecisionBounds& b, const RunConfig& cfg) {
  ojson j;
  j["config"] = run_config_to_json(cfg);
  j["bounds"] = bounds_json(b);
  j["feasible"] = r.feasible;
  j["mode"] = r.mode == ObjectiveMode::Combined ? "combined" : "weighted_sum";
  if (r.feasible) {
    j["objective"] = r.objective;
    j["capital"] = r.capital;
    j["cost"] = r.cost;
    j["decision"] = decision_json(r.decision);
  } else {
    j["objective"] = nullptr;
    j["capital"] = nullptr;
    j["cost"] = nullptr;
    j["decision"] = nullptr;
  }
  j["iterations"] = r.iterations;
  return j;
}

ojson frontier_to_json(const std::vector<ParetoPoint>& pts, const DecisionBounds& b, int k,
                       const RunConfig& cfg) {
  ojson j;
  j["config"] = run_config_to_json(cfg);
  j["bounds"] = bounds_json(b);
  j["points"] = k;
  j["feasible"] = !pts.empty();
  ojson fr = ojson::array();
  for (const auto& p : pts) {
    ojson pj;
    pj["cost"] = p.cost;
    pj["capital"] = p.capital;
    pj["decision"] = decision_json(p.decision);
    fr.push_back(pj);
  }
  j["frontier"] = fr;
  return j;
}

ojson sweep_to_json(const SweepStats& st, const RunConfig& cfg) {
  ojson j;
  j["scenario"] = st.scenario_label;
  ojson c = run_config_to_json(cfg);
  c.update(eval_config_to_json(st.eval));
  c["aggregation"] = aggregation_to_json(st.agg);
  j["config"] = c;
  j["n"] = st.n;
  j["seed"] = st.seed;
  j["stream"] = st.stream;
  j["rejections"] = st.rejections;
  ojson sets = ojson::array();
  for (const auto& s : st.sets) {
    ojson sj;
    sj["set"] = std::string(set_name(s.set));
    sj["rate"] = s.rate;
    sj["indeterminate_rate"] = s.indeterminate_rate;
    sj["satisfied"] = s.satisfied;
    sj["not_satisfied"] = s.not_satisfied;
    sj["indeterminate"] = s.indeterminate;
    sets.push_back(sj);
  }
  j["sets"] = sets;
  ojson conds = ojson::array();
  for (const auto& f : st.conditions) {
    ojson fj;
    fj["id"] = f.id.str();
    fj["frequency"] = f.frequency;
    fj["indeterminate_rate"] = f.indeterminate_rate;
    fj["satisfied"] = f.satisfied;
    fj["violated"] = f.violated;
    fj["indeterminate"] = f.indeterminate;
    conds.push_back(fj);
  }
  j["conditions"] = conds;
  return j;
}

ojson sensitivity_to_json(const SensitivityResult& r, const RunConfig& cfg) {
  ojson j;
  j["config"] = run_config_to_json(cfg);
  j["condition"] = r.condition.str();
  j["parameter"] = std::string(symbol_name(r.parameter));
  j["base_value"] = r.base_value;
  j["rel_step"] = r.rel_step;
  j["status"] = std::string(status_name(r.status));
  j["margin"] = r.margin;
  j["margin_minus"] = number_or_null(r.margin_minus);
  j["margin_plus"] = number_or_null(r.margin_plus);
  j["elasticity"] = number_or_null(r.elasticity);
  j["delta_to_flip"] = number_or_null(r.delta_to_flip);
  return j;
}

std::string json_text(const ojson& j) { return j.dump(2) + "\n"; }

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw Error(Errc::IoError, "number formatting failed");
  return std::string(buf, ptr);
}

std::string validation_csv(const ValidationReport& r) {
  std::string out = "code,path,message\n";
  for (const auto& v : r.violations) {
    out += csv_field(violation_name(v.code)) + "," + csv_field(v.path) + "," +
           csv_field(v.message) + "\n";
  }
  return out;
}

std::string conditions_csv(const std::vector<const ConditionReport*>& reports) {
  std::string out = "set,id,status,lhs_lower,lhs_upper,rhs_lower,rhs_upper,margin,notes\n";
  for (const ConditionReport* r : reports) {
    for (const auto& v : r->verdicts) {
      out += std::string(set_name(r->set)) + "," + v.id.str() + "," +
             std::string(status_name(v.status)) + "," + csv_number(v.lhs.lower()) + "," +
             csv_number(v.lhs.upper()) + "," + csv_number(v.rhs.lower()) + "," +
             csv_number(v.rhs.upper()) + "," + csv_optional(v.margin) + "," +
             csv_field(join_notes(v.notes)) + "\n";
    }
  }
  return out;
}

std::string opt_result_csv(const OptResult& r) {
  std::string out = "feasible,objective,capital,cost,B_b,B_s,B_i,B_n,state,iterations,mode\n";
  const std::string mode = r.mode == ObjectiveMode::Combined ? "combined" : "weighted_sum";
  if (!r.feasible) {
    out += "false,,,,,,,,," + std::to_string(r.iterations) + "," + mode + "\n";
    return out;
  }
  const auto& d = r.decision;
  out += "true," + csv_number(r.objective) + "," + csv_number(r.capital) + "," +
         csv_number(r.cost) + "," + csv_number(d.B_b) + "," + csv_number(d.B_s) + "," +
         csv_number(d.B_i) + "," + csv_number(d.B_n) + "," + std::string(state_name(d.state)) +
         "," + std::to_string(r.iterations) + "," + mode + "\n";
  return out;
}

std::string frontier_csv(const std::vector<ParetoPoint>& pts) {
  std::string out = "cost,capital,B_b,B_s,B_i,B_n,state\n";
  for (const auto& p : pts) {
    const auto& d = p.decision;
    out += csv_number(p.cost) + "," + csv_number(p.capital) + "," + csv_number(d.B_b) + "," +
           csv_number(d.B_s) + "," + csv_number(d.B_i) + "," + csv_number(d.B_n) + "," +
           std::string(state_name(d.state)) + "\n";
  }
  return out;
}

std::string sweep_csv(const SweepStats& st) {
  std::string out = "id,frequency,indeterminate_rate\n";
  for (const auto& f : st.conditions) {
    out += f.id.str() + "," + csv_number(f.frequency) + "," + csv_number(f.indeterminate_rate) +
           "\n";
  }
  return out;
}

std::string sensitivity_csv(const SensitivityResult& r) {
  std::string out =
      "condition,parameter,base_value,status,margin,rel_step,margin_minus,margin_plus,"
      "elasticity,delta_to_flip\n";
  out += r.condition.str() + "," + std::string(symbol_name(r.parameter)) + "," +
         csv_number(r.base_value) + "," + std::string(status_name(r.status)) + "," +
         csv_number(r.margin) + "," + csv_number(r.rel_step) + "," + csv_optional(r.margin_minus) +
         "," + csv_optional(r.margin_plus) + "," + csv_optional(r.elasticity) + "," +
         csv_optional(r.delta_to_flip) + "\n";
  return out;
}

void render_report(const std::string& text, const std::optional<std::filesystem::path>& out) {
  if (out) {
    write_text_file(*out, text);
    return;
  }
  std::cout << text;
  std::cout.flush();
  if (!std::cout) throw Error(Errc::IoError, "failed to write to standard output");
}

}  // namespace dismed
