#pragma once

// Flat JSON run configuration shared by the command-line tool.

#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leadmine/classifier.hpp"
#include "leadmine/error.hpp"
#include "leadmine/stem.hpp"

namespace leadmine {

struct RunConfig {
  Language language = Language::italian;
  std::optional<std::string> stopword_path;
  std::vector<GridPoint> grid = default_grid();
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  std::size_t min_df = 1;
  /// Enabled corpus filters: "language", "spam".
  std::vector<std::string> filters{"language"};
  /// Pool NONE into micro/macro F1.
  bool include_none = true;
  bool train_none_model = false;
  double tol = 1e-3;
  std::size_t max_passes = 10000;

  void validate() const {
    if (folds < 2) throw InvalidArgument("config: folds must be at least 2");
    if (grid.empty()) throw InvalidArgument("config: grid must not be empty");
    for (const auto& p : grid)
      if (!(p.c > 0.0) || !(p.gamma > 0.0)) throw InvalidArgument("config: grid values must be positive");
    if (min_df < 1) throw InvalidArgument("config: min_df must be at least 1");
    if (!(tol > 0.0)) throw InvalidArgument("config: tol must be positive");
    if (max_passes < 1) throw InvalidArgument("config: max_passes must be positive");
    for (const auto& f : filters)
      if (f != "language" && f != "spam") throw InvalidArgument("config: unknown filter '" + f + "'");
  }

  bool filter_enabled(std::string_view name) const {
    for (const auto& f : filters)
      if (f == name) return true;
    return false;
  }
};

inline RunConfig parse_run_config(const nlohmann::json& j) {
  static const std::set<std::string> known{"language", "stopword_path", "grid",          "folds",
                                           "seed",     "min_df",        "filters",       "include_none",
                                           "train_none_model", "tol",   "max_passes"};
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw ParseError("config: unknown key '" + key + "'");
  RunConfig c;
  try {
    if (j.contains("language")) c.language = parse_language(j["language"].get<std::string>());
    if (j.contains("stopword_path") && !j["stopword_path"].is_null())
      c.stopword_path = j["stopword_path"].get<std::string>();
    if (j.contains("grid")) {
      c.grid.clear();
      for (const auto& p : j["grid"]) {
        if (p.is_array() && p.size() == 2) c.grid.push_back({p[0].get<double>(), p[1].get<double>()});
        else if (p.is_object()) c.grid.push_back({p.at("c").get<double>(), p.at("gamma").get<double>()});
        else throw ParseError("config: grid entries must be [C, gamma] or {\"c\", \"gamma\"}");
      }
    }
    if (j.contains("folds")) c.folds = j["folds"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("min_df")) c.min_df = j["min_df"].get<std::size_t>();
    if (j.contains("filters")) c.filters = j["filters"].get<std::vector<std::string>>();
    if (j.contains("include_none")) c.include_none = j["include_none"].get<bool>();
    if (j.contains("train_none_model")) c.train_none_model = j["train_none_model"].get<bool>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("max_passes")) c.max_passes = j["max_passes"].get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_run_config(j);
}

}  // namespace leadmine
