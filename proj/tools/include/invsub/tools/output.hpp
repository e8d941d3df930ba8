#pragma once

#include "invsub/tools/config.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace invsub::tools {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

struct Provenance {
  std::string experiment;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version;
};

Provenance provenance_of(const ExperimentConfig& cfg);
std::string library_version();

// Documented headers; paths tables may append T and M_1..M_d and may lead with replica.
inline const std::vector<std::string> kPathsHeader = {"t", "L", "gamma", "Gamma"};
inline const std::vector<std::string> kWebHeader = {"t", "T", "replica", "tamsd"};
inline const std::vector<std::string> kWebSummaryHeader = {"t", "T", "mean", "ci_lo", "ci_hi"};
inline const std::vector<std::string> kStrongErrorHeader = {"replica", "t_star", "max_sq_error"};
inline const std::vector<std::string> kBenchmarkHeader = {"param", "repetition", "wall_ns", "ops"};
inline const std::vector<std::string> kStrongOrderHeader = {"h", "mean_sq_sup_error"};
inline const std::vector<std::string> kValidateHeader = {"coordinate", "statistic", "p_value"};

// Throws DomainError when the header differs from `expected` or a row has the wrong width.
void validate_schema(const Table& table, const std::vector<std::string>& expected);

std::string format_cell(const Cell& c);
// '#'-prefixed provenance lines, header, rows.
std::string to_csv(const Table& table, const Provenance& prov);
nlohmann::json to_json(const Table& table, const Provenance& prov);

// Writes <dir>/<name>.<format> after validating against `expected`.
std::filesystem::path write_table(const Table& table, const std::vector<std::string>& expected,
                                  const Provenance& prov, const std::string& dir, const std::string& format);
std::filesystem::path write_report(const std::string& name, const nlohmann::json& body, const Provenance& prov,
                                   const std::string& dir);

}  // namespace invsub::tools
