#include "invsub/tools/config.hpp"

#include "invsub/errors.hpp"

#include <fstream>
#include <sstream>

namespace invsub::tools {

namespace {

const nlohmann::json* find(const nlohmann::json& j, const std::string& key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  return &*it;
}

double as_number(const nlohmann::json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
  }
  throw DomainError("config key '" + key + "' must be a number");
}

}  // namespace

bool ExperimentConfig::has(const std::string& key) const { return find(raw, key) != nullptr; }

double ExperimentConfig::number(const std::string& key, double fallback) const {
  const auto* v = find(raw, key);
  return v ? as_number(*v, key) : fallback;
}

std::int64_t ExperimentConfig::integer(const std::string& key, std::int64_t fallback) const {
  const auto* v = find(raw, key);
  if (!v) return fallback;
  if (v->is_number_integer()) return v->get<std::int64_t>();
  if (v->is_number()) {
    const double d = v->get<double>();
    if (d == static_cast<double>(static_cast<std::int64_t>(d))) return static_cast<std::int64_t>(d);
  }
  throw DomainError("config key '" + key + "' must be an integer");
}

bool ExperimentConfig::flag(const std::string& key, bool fallback) const {
  const auto* v = find(raw, key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw DomainError("config key '" + key + "' must be true or false");
  return v->get<bool>();
}

std::string ExperimentConfig::text(const std::string& key, const std::string& fallback) const {
  const auto* v = find(raw, key);
  if (!v) return fallback;
  if (!v->is_string()) throw DomainError("config key '" + key + "' must be a string");
  return v->get<std::string>();
}

std::vector<double> ExperimentConfig::numbers(const std::string& key, const std::vector<double>& fallback) const {
  const auto* v = find(raw, key);
  if (!v) return fallback;
  if (!v->is_array()) throw DomainError("config key '" + key + "' must be an array");
  std::vector<double> out;
  for (const auto& e : *v) out.push_back(as_number(e, key));
  return out;
}

std::uint64_t ExperimentConfig::require_seed() const {
  if (!seed) throw DomainError("a seed is mandatory: pass --seed or set \"seed\" in the config");
  return *seed;
}

levy::LevyModel ExperimentConfig::model(double alpha, double q, double r) const {
  levy::LevyModel m;
  m.alpha = number("alpha", alpha);
  m.theta = number("theta", 1.0);
  m.q = number("q", q);
  m.r = number("r", r);
  m.drift = number("drift", 0.0);
  if (const auto* z = find(raw, "zeta")) {
    if (!z->is_object()) throw DomainError("config key 'zeta' must be an object");
    const std::string kind = z->value("kind", std::string("none"));
    std::vector<double> p;
    if (const auto* ps = find(*z, "params"))
      for (const auto& e : *ps) p.push_back(as_number(e, "zeta.params"));
    auto need = [&](std::size_t n) {
      if (p.size() != n) throw DomainError("zeta kind '" + kind + "' takes " + std::to_string(n) + " params");
    };
    if (kind == "none") {
    } else if (kind == "point") {
      need(2);
      m.zeta = levy::FiniteMeasure::point(p[0], p[1]);
    } else if (kind == "pareto5") {
      if (p.empty()) p.push_back(1.0);
      need(1);
      m.zeta = levy::FiniteMeasure::pareto5(p[0]);
    } else if (kind == "stable_tail") {
      if (p.empty()) p.push_back(m.r);
      need(1);
      m.zeta = levy::FiniteMeasure::stable_segment(m.alpha, m.theta, m.q, p[0], kInf);
    } else {
      throw DomainError("unknown zeta kind '" + kind + "' (none, point, pareto5, stable_tail)");
    }
  }
  m.validate();
  return m;
}

ExperimentConfig parse_config(const std::string& text, const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  if (!text.empty()) {
    try {
      c.raw = nlohmann::json::parse(text, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
      throw DomainError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!c.raw.is_object()) throw DomainError("config must be a JSON object");
  }
  if (c.has("seed")) c.seed = static_cast<std::uint64_t>(c.integer("seed", 0));
  c.out_dir = c.text("out", c.out_dir);
  c.format = c.text("format", c.format);
  c.threads = static_cast<unsigned>(c.integer("threads", 0));
  return c;
}

ExperimentConfig load_config(const std::string& path, const std::string& experiment) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), experiment);
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::string s = cfg.experiment + "\n" + cfg.raw.dump() + "\n" + std::to_string(cfg.seed.value_or(0));
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace invsub::tools
