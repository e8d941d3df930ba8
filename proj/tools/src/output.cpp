#include "invsub/tools/output.hpp"

#include "invsub/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>

#ifndef INVSUB_VERSION
#define INVSUB_VERSION "0.0.0"
#endif

namespace invsub::tools {

std::string library_version() { return INVSUB_VERSION; }

Provenance provenance_of(const ExperimentConfig& cfg) {
  return {cfg.experiment, config_hash(cfg), cfg.seed.value_or(0), library_version()};
}

void validate_schema(const Table& table, const std::vector<std::string>& expected) {
  if (table.header != expected) {
    std::string got, want;
    for (const auto& h : table.header) got += (got.empty() ? "" : ",") + h;
    for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
    throw DomainError("table '" + table.name + "' header '" + got + "' does not match schema '" + want + "'");
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    if (table.rows[i].size() != expected.size())
      throw DomainError("table '" + table.name + "' row " + std::to_string(i) + " has " +
                        std::to_string(table.rows[i].size()) + " cells, schema has " +
                        std::to_string(expected.size()));
}

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return fmt::format("{}", *i);
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    if (std::isnan(*d)) return "nan";
    return fmt::format("{:.17g}", *d);
  }
  return std::get<std::string>(c);
}

namespace {

std::string provenance_lines(const Provenance& p) {
  return fmt::format("# experiment: {}\n# config_hash: {:016x}\n# seed: {}\n# version: {}\n", p.experiment,
                     p.config_hash, p.seed, p.version);
}

nlohmann::json provenance_json(const Provenance& p) {
  return {{"experiment", p.experiment},
          {"config_hash", fmt::format("{:016x}", p.config_hash)},
          {"seed", p.seed},
          {"version", p.version}};
}

nlohmann::json cell_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_cell(c);
    return *d;
  }
  return std::get<std::string>(c);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string to_csv(const Table& table, const Provenance& prov) {
  std::string s = provenance_lines(prov);
  for (std::size_t j = 0; j < table.header.size(); ++j) s += (j ? "," : "") + table.header[j];
  s += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) s += ',';
      s += format_cell(row[j]);
    }
    s += '\n';
  }
  return s;
}

nlohmann::json to_json(const Table& table, const Provenance& prov) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rows.push_back(std::move(r));
  }
  return {{"provenance", provenance_json(prov)}, {"columns", table.header}, {"rows", std::move(rows)}};
}

std::filesystem::path write_table(const Table& table, const std::vector<std::string>& expected,
                                  const Provenance& prov, const std::string& dir, const std::string& format) {
  validate_schema(table, expected);
  if (format != "csv" && format != "json") throw DomainError("format must be csv or json, got '" + format + "'");
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / (table.name + "." + format);
  write_file(path, format == "csv" ? to_csv(table, prov) : to_json(table, prov).dump(1) + "\n");
  return path;
}

std::filesystem::path write_report(const std::string& name, const nlohmann::json& body, const Provenance& prov,
                                   const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / (name + ".json");
  nlohmann::json j = body;
  j["provenance"] = provenance_json(prov);
  write_file(path, j.dump(1) + "\n");
  return path;
}

}  // namespace invsub::tools
