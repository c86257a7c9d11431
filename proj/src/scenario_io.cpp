#include "dismed/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace dismed {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(Errc::ParseError, where.empty() ? what : where + ": " + what);
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (auto a : allowed) known = known || it.key() == a;
    if (!known) {
      throw Error(Errc::UnknownField,
                  "'" + it.key() + "' is not a recognised field" + (where.empty() ? "" : " of " + where));
    }
  }
}

double number_at(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, "missing required field '" + key + "'");
  if (!it->is_number()) parse_fail(where, "field '" + key + "' must be a number");
  return it->get<double>();
}

std::vector<double> number_array(const json& v, const std::string& where) {
  if (!v.is_array()) parse_fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) parse_fail(where, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::string string_at(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, "missing required field '" + key + "'");
  if (!it->is_string()) parse_fail(where, "field '" + key + "' must be a string");
  return it->get<std::string>();
}

struct PendingSymbols {
  std::vector<Violation> unknown;

  std::optional<Symbol> resolve(const std::string& name, const std::string& where) {
    if (auto s = symbol_from_name(name)) return s;
    unknown.push_back({ViolationCode::UnknownSymbol, where, "unknown symbol '" + name + "'"});
    return std::nullopt;
  }
};

std::optional<ResponseFunction> parse_response(const json& j, const std::string& where,
                                               PendingSymbols& pending) {
  if (!j.is_object()) parse_fail(where, "response must be an object");
  reject_unknown_keys(j, {"driven", "driver", "kind", "coeffs", "knots", "center", "context"}, where);
  ResponseFunction rf;
  auto driven = pending.resolve(string_at(j, "driven", where), where + ".driven");
  auto driver = pending.resolve(string_at(j, "driver", where), where + ".driver");

  const std::string kind = string_at(j, "kind", where);
  if (kind == "polynomial") {
    rf.kind = ResponseKind::Polynomial;
    if (!j.contains("coeffs")) parse_fail(where, "polynomial response needs 'coeffs'");
    if (j.contains("knots")) parse_fail(where, "polynomial response cannot carry 'knots'");
    rf.coeffs = number_array(j.at("coeffs"), where + ".coeffs");
    if (j.contains("center")) {
      if (!j.at("center").is_number()) parse_fail(where, "'center' must be a number");
      rf.center = j.at("center").get<double>();
    }
  } else if (kind == "piecewise_linear") {
    rf.kind = ResponseKind::PiecewiseLinear;
    if (!j.contains("knots")) parse_fail(where, "piecewise_linear response needs 'knots'");
    if (j.contains("coeffs") || j.contains("center")) {
      parse_fail(where, "piecewise_linear response takes only 'knots'");
    }
    const auto& knots = j.at("knots");
    if (!knots.is_array()) parse_fail(where, "'knots' must be an array of [x, y] pairs");
    for (const auto& k : knots) {
      auto xy = number_array(k, where + ".knots");
      if (xy.size() != 2) parse_fail(where, "each knot must be an [x, y] pair");
      rf.knots.push_back({xy[0], xy[1]});
    }
  } else {
    parse_fail(where, "kind must be 'polynomial' or 'piecewise_linear'");
  }

  if (j.contains("context")) {
    const auto& c = j.at("context");
    if (!c.is_string()) parse_fail(where, "'context' must be a string");
    auto ctx = context_from_name(c.get<std::string>());
    if (!ctx) parse_fail(where, "context must be one of base, E_s, E_p, E_m");
    rf.context = *ctx;
  }
  if (!driven || !driver) return std::nullopt;
  rf.driven = *driven;
  rf.driver = *driver;
  return rf;
}

std::optional<TimePath> parse_time_path(const json& j, const std::string& where,
                                        PendingSymbols& pending) {
  if (!j.is_object()) parse_fail(where, "time path must be an object");
  TimePath p;
  auto sym = pending.resolve(string_at(j, "symbol", where), where + ".symbol");
  const std::string kind = string_at(j, "kind", where);
  if (kind == "constant") {
    reject_unknown_keys(j, {"symbol", "kind", "value"}, where);
    p.kind = PathKind::Constant;
    p.value = number_at(j, "value", where);
  } else if (kind == "linear") {
    reject_unknown_keys(j, {"symbol", "kind", "intercept", "slope"}, where);
    p.kind = PathKind::Linear;
    p.intercept = number_at(j, "intercept", where);
    p.slope = number_at(j, "slope", where);
  } else if (kind == "samples") {
    reject_unknown_keys(j, {"symbol", "kind", "times", "values"}, where);
    p.kind = PathKind::Samples;
    if (!j.contains("times") || !j.contains("values")) {
      parse_fail(where, "samples path needs 'times' and 'values'");
    }
    p.times = number_array(j.at("times"), where + ".times");
    p.values = number_array(j.at("values"), where + ".values");
  } else {
    parse_fail(where, "kind must be 'constant', 'linear' or 'samples'");
  }
  if (!sym) return std::nullopt;
  p.symbol = *sym;
  return p;
}

}  // namespace

Scenario parse_scenario(const json& j, const std::string& default_label) {
  if (!j.is_object()) parse_fail("", "scenario must be a JSON object");

  std::set<std::string> allowed{"label", "prospect_count", "valued_time_share", "overlays",
                                "responses", "time_paths"};
  for (std::size_t i = 0; i < kBaseSymbolCount; ++i) {
    allowed.insert(std::string(symbol_name(static_cast<Symbol>(i))));
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw Error(Errc::UnknownField, "'" + it.key() + "' is not a recognised scenario field");
    }
  }

  Scenario s;
  s.label = default_label;
  if (j.contains("label")) {
    if (!j.at("label").is_string()) parse_fail("label", "must be a string");
    s.label = j.at("label").get<std::string>();
  }
  for (std::size_t i = 0; i < kBaseSymbolCount; ++i) {
    const auto sym = static_cast<Symbol>(i);
    set_symbol(s, sym, number_at(j, std::string(symbol_name(sym)), ""));
  }
  if (j.contains("prospect_count")) {
    const auto& v = j.at("prospect_count");
    if (!v.is_number_integer()) parse_fail("prospect_count", "must be an integer");
    s.broker_costs.prospect_count = v.get<int>();
  }
  if (j.contains("valued_time_share")) {
    const auto& v = j.at("valued_time_share");
    if (!v.is_number()) parse_fail("valued_time_share", "must be a number");
    s.search.valued_time_share = v.get<double>();
  }

  PendingSymbols pending;
  if (j.contains("overlays")) {
    const auto& ov = j.at("overlays");
    if (!ov.is_object()) parse_fail("overlays", "must be an object keyed by E_s, E_p, E_m");
    for (auto it = ov.begin(); it != ov.end(); ++it) {
      auto state = state_from_name(it.key());
      if (!state) throw Error(Errc::UnknownField, "'" + it.key() + "' is not a listing state");
      const std::string where = "overlays." + it.key();
      if (!it->is_object()) parse_fail(where, "must be an object of symbol overrides");
      StateOverlay overlay{*state, {}};
      for (auto o = it->begin(); o != it->end(); ++o) {
        if (!o->is_number()) parse_fail(where, "override '" + o.key() + "' must be a number");
        if (auto sym = pending.resolve(o.key(), where + "." + o.key())) {
          overlay.overrides[*sym] = o->get<double>();
        }
      }
      s.states.overlays[static_cast<std::size_t>(*state)] = std::move(overlay);
    }
  }
  if (j.contains("responses")) {
    const auto& arr = j.at("responses");
    if (!arr.is_array()) parse_fail("responses", "must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (auto rf = parse_response(arr[i], "responses[" + std::to_string(i) + "]", pending)) {
        s.responses.push_back(std::move(*rf));
      }
    }
  }
  if (j.contains("time_paths")) {
    const auto& arr = j.at("time_paths");
    if (!arr.is_array()) parse_fail("time_paths", "must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (auto p = parse_time_path(arr[i], "time_paths[" + std::to_string(i) + "]", pending)) {
        s.time_paths.push_back(std::move(*p));
      }
    }
  }

  ValidationReport report = validate_scenario(s);
  report.violations.insert(report.violations.begin(), pending.unknown.begin(),
                           pending.unknown.end());
  if (!report.ok()) throw ValidationError(std::move(report));
  return s;
}

Scenario parse_scenario_text(std::string_view text, const std::string& default_label) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return parse_scenario(j, default_label);
}

Scenario load_scenario(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  return parse_scenario_text(text, path.stem().string());
}

ojson scenario_to_json(const Scenario& s) {
  ojson j;
  j["label"] = s.label;
  for (std::size_t i = 0; i < kBaseSymbolCount; ++i) {
    const auto sym = static_cast<Symbol>(i);
    j[std::string(symbol_name(sym))] = get_symbol(s, sym);
    if (sym == Symbol::B_it) j["prospect_count"] = s.broker_costs.prospect_count;
    if (sym == Symbol::psi_sb && s.search.valued_time_share) {
      j["valued_time_share"] = *s.search.valued_time_share;
    }
  }
  ojson overlays = ojson::object();
  for (auto st : {ListingState::E_s, ListingState::E_p, ListingState::E_m}) {
    if (const auto* o = s.states.overlay(st)) {
      ojson ov = ojson::object();
      for (const auto& [sym, value] : o->overrides) ov[std::string(symbol_name(sym))] = value;
      overlays[std::string(state_name(st))] = std::move(ov);
    }
  }
  if (!overlays.empty()) j["overlays"] = std::move(overlays);

  if (!s.responses.empty()) {
    ojson arr = ojson::array();
    for (const auto& rf : s.responses) {
      ojson r;
      r["driven"] = std::string(symbol_name(rf.driven));
      r["driver"] = std::string(symbol_name(rf.driver));
      if (rf.kind == ResponseKind::Polynomial) {
        r["kind"] = "polynomial";
        r["coeffs"] = rf.coeffs;
        if (rf.center != 0) r["center"] = rf.center;
      } else {
        r["kind"] = "piecewise_linear";
        ojson knots = ojson::array();
        for (const auto& k : rf.knots) knots.push_back({k.x, k.y});
        r["knots"] = std::move(knots);
      }
      r["context"] = std::string(context_name(rf.context));
      arr.push_back(std::move(r));
    }
    j["responses"] = std::move(arr);
  }
  if (!s.time_paths.empty()) {
    ojson arr = ojson::array();
    for (const auto& p : s.time_paths) {
      ojson t;
      t["symbol"] = std::string(symbol_name(p.symbol));
      switch (p.kind) {
        case PathKind::Constant:
          t["kind"] = "constant";
          t["value"] = p.value;
          break;
        case PathKind::Linear:
          t["kind"] = "linear";
          t["intercept"] = p.intercept;
          t["slope"] = p.slope;
          break;
        case PathKind::Samples:
          t["kind"] = "samples";
          t["times"] = p.times;
          t["values"] = p.values;
          break;
      }
      arr.push_back(std::move(t));
    }
    j["time_paths"] = std::move(arr);
  }
  return j;
}

std::string canonical_scenario_text(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  write_text_file(path, canonical_scenario_text(s));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(Errc::IoError, "write to '" + path.string() + "' failed");
}

}  // namespace dismed
