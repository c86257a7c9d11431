#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dismed/scenario.hpp"

namespace dismed {

using ojson = nlohmann::ordered_json;

// Parses one scenario object. Unknown keys raise Error(UnknownField);
// malformed content raises Error(ParseError); an invalid scenario raises
// ValidationError. `default_label` is used when the object has no "label".
Scenario parse_scenario(const nlohmann::json& j, const std::string& default_label = "");
Scenario parse_scenario_text(std::string_view text, const std::string& default_label = "");
Scenario load_scenario(const std::filesystem::path& path);

// Canonical form: fixed key order, one scenario object, 2-space indent,
// newline-terminated.
ojson scenario_to_json(const Scenario& s);
std::string canonical_scenario_text(const Scenario& s);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace dismed
