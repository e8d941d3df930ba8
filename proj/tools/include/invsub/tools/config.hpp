#pragma once

#include "invsub/levy.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace invsub::tools {

struct ExperimentConfig {
  std::string experiment;
  nlohmann::json raw = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string format = "csv";
  unsigned threads = 0;

  double number(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const;
  bool has(const std::string& key) const;

  std::uint64_t require_seed() const;
  // alpha, theta, q, r, drift and zeta.{kind, params}; defaults fill absent keys.
  levy::LevyModel model(double alpha = 0.75, double q = 0.0, double r = kInf) const;
};

ExperimentConfig parse_config(const std::string& text, const std::string& experiment);
ExperimentConfig load_config(const std::string& path, const std::string& experiment);

// FNV-1a over the canonical JSON dump of the config and the seed.
std::uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace invsub::tools
