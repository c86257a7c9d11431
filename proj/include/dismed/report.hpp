#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dismed/config.hpp"
#include "dismed/market_sim.hpp"
#include "dismed/scenario_io.hpp"

namespace dismed {

// Points render as numbers; proper intervals as {"lower", "upper"} with
// infinite ends written "-inf" / "inf".
ojson value_to_json(const ExtendedValue& v);
ExtendedValue value_from_json(const nlohmann::json& j);

ojson verdict_to_json(const ConditionVerdict& v);
ojson condition_report_to_json(const ConditionReport& r);
// Inverse of condition_report_to_json.
ConditionReport condition_report_from_json(const nlohmann::json& j);

ojson validation_to_json(const std::string& label, const ValidationReport& r);
ojson decision_to_json(const DecisionSummary& d, const RunConfig& cfg);
ojson conditions_to_json(const ConditionReport& r, const RunConfig& cfg);
ojson opt_result_to_json(const OptResult& r, const DecisionBounds& b, const RunConfig& cfg);
ojson frontier_to_json(const std::vector<ParetoPoint>& pts, const DecisionBounds& b, int k,
                       const RunConfig& cfg);
ojson sweep_to_json(const SweepStats& st, const RunConfig& cfg);
ojson sensitivity_to_json(const SensitivityResult& r, const RunConfig& cfg);

// 2-space indent, newline-terminated.
std::string json_text(const ojson& j);

// Shortest round-trip decimal, locale independent.
std::string csv_number(double x);

std::string validation_csv(const ValidationReport& r);
std::string conditions_csv(const std::vector<const ConditionReport*>& reports);
std::string opt_result_csv(const OptResult& r);
std::string frontier_csv(const std::vector<ParetoPoint>& pts);
std::string sweep_csv(const SweepStats& st);
std::string sensitivity_csv(const SensitivityResult& r);

// Writes to `out`, or standard output when absent. Throws Error(IoError).
void render_report(const std::string& text, const std::optional<std::filesystem::path>& out);

}  // namespace dismed
