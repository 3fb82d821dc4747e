#include "nlgbidi/config.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nlgbidi/error.hpp"

namespace nlgbidi {

Config parse_config(std::string_view json_text) {
  using nlohmann::json;
  Config cfg;
  try {
    json j = json::parse(json_text);
    if (!j.is_object()) throw Error(Errc::InvalidConfig, "config must be a JSON object");

    if (j.value("replace_builtin_units", false)) cfg.units = UnitTable{};
    if (auto it = j.find("units"); it != j.end()) {
      for (const auto& [canonical, synonyms] : it->items()) {
        cfg.units.add(canonical, canonical);
        for (const auto& syn : synonyms) cfg.units.add(canonical, syn.get<std::string>());
      }
    }
    if (auto it = j.find("repetition"); it != j.end()) {
      cfg.repetition.min_period = it->value("min_period", cfg.repetition.min_period);
      cfg.repetition.max_period = it->value("max_period", cfg.repetition.max_period);
      cfg.repetition.min_repeats = it->value("min_repeats", cfg.repetition.min_repeats);
    }
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidConfig, std::string("config: ") + e.what());
  }
  const auto& r = cfg.repetition;
  if (r.min_period == 0 || r.max_period < r.min_period || r.min_repeats == 0) {
    throw Error(Errc::InvalidConfig, "config: repetition thresholds out of range");
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoFailure, "cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

Config config_from_env() {
  const char* path = std::getenv("NLGBIDI_CONFIG");
  if (path == nullptr || *path == '\0') return Config{};
  return load_config(path);
}

}  // namespace nlgbidi
