#pragma once

#include <filesystem>
#include <string_view>

#include "nlgbidi/diagnostics.hpp"

namespace nlgbidi {

struct Config {
  UnitTable units = UnitTable::builtin();
  RepetitionParams repetition;
};

// JSON file:
//   {"units": {"gram": ["g", "grams"]}, "replace_builtin_units": false,
//    "repetition": {"min_period": 1, "max_period": 10, "min_repeats": 3}}
// Every key is optional. Throws Error(IoFailure) or Error(InvalidConfig).
Config load_config(const std::filesystem::path& path);
Config parse_config(std::string_view json_text);

// Reads NLGBIDI_CONFIG when set, otherwise the built-in defaults.
Config config_from_env();

}  // namespace nlgbidi
