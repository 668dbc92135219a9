#include "pdg/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "pdg/kinetic_model.hpp"
#include "pdg/scenarios.hpp"
#include "pdg/splitting.hpp"

namespace pdg {

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::kRun: return "run";
    case RunMode::kConverge: return "converge";
    case RunMode::kGraph: return "graph";
  }
  return "run";
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, int line) {
  double out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError(line, "malformed number '" + value + "'");
  }
  return out;
}

int parse_int(const std::string& value, int line) {
  int out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError(line, "malformed integer '" + value + "'");
  return out;
}

bool parse_bool(const std::string& value, int line) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ConfigError(line, "expected on/off, got '" + value + "'");
}

template <class T>
bool contains(const std::vector<T>& v, const T& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string content = trim(raw);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (value.empty()) throw ConfigError(line, "empty value for '" + key + "'");
    if (seen.count(key)) throw ConfigError(line, "duplicate key '" + key + "'");
    seen[key] = line;

    if (key == "scenario") {
      if (!contains(scenario_ids(), value)) throw ConfigError(line, "unknown scenario '" + value + "'");
      cfg.scenario = value;
    } else if (key == "model") {
      if (!contains(model_ids(), value)) throw ConfigError(line, "unknown model '" + value + "'");
      cfg.model = value;
    } else if (key == "scheme") {
      try {
        SplittingScheme::from_name(value);
      } catch (const std::exception&) {
        throw ConfigError(line, "unknown scheme '" + value + "'");
      }
      cfg.scheme = value;
    } else if (key == "d") {
      cfg.degree = parse_int(value, line);
      if (*cfg.degree < 1 || *cfg.degree > 8) throw ConfigError(line, "d must lie in [1, 8]");
    } else if (key == "nx" || key == "ny") {
      const int n = parse_int(value, line);
      if (n < 1) throw ConfigError(line, key + " must be >= 1");
      (key == "nx" ? cfg.nx : cfg.ny) = n;
    } else if (key == "dt" || key == "beta" || key == "tmax" || key == "lambda") {
      const double v = parse_double(value, line);
      if (!(v > 0)) throw ConfigError(line, key + " must be positive");
      if (key == "dt") cfg.dt = v;
      else if (key == "beta") cfg.beta = v;
      else if (key == "tmax") cfg.tmax = v;
      else cfg.lambda = v;
    } else if (key == "tau") {
      cfg.tau = parse_double(value, line);
      if (cfg.tau < 0) throw ConfigError(line, "tau must be >= 0");
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "mode") {
      if (value == "run") cfg.mode = RunMode::kRun;
      else if (value == "converge") cfg.mode = RunMode::kConverge;
      else if (value == "graph") cfg.mode = RunMode::kGraph;
      else throw ConfigError(line, "unknown mode '" + value + "'");
    } else if (key == "levels") {
      cfg.levels = parse_int(value, line);
      if (cfg.levels < 3) throw ConfigError(line, "levels must be >= 3");
    } else if (key == "source") {
      cfg.source = parse_bool(value, line);
    } else {
      throw ConfigError(line, "unknown key '" + key + "'");
    }
  }

  if (cfg.scenario.empty()) throw ConfigError(0, "missing scenario");
  if (cfg.dt && cfg.beta) throw ConfigError(std::max(seen["dt"], seen["beta"]), "dt and beta both set");
  if (!cfg.dt && !cfg.beta) {
    const Scenario s = make_scenario(cfg.scenario);
    if (s.beta > 0) cfg.beta = s.beta;
    else cfg.dt = s.dt;
  }
  if (!cfg.model.empty()) {
    const Scenario s = make_scenario(cfg.scenario);
    std::shared_ptr<const KineticModel> model;
    try {
      model = make_model(cfg.model, s.model_params);
    } catch (const std::exception& e) {
      throw ConfigError(seen["model"], e.what());
    }
    if (model->dimension() != s.dimension) {
      throw ConfigError(seen["model"], "model '" + cfg.model + "' does not match the scenario dimension");
    }
  }
  if (!cfg.degree) cfg.degree = make_scenario(cfg.scenario).degree;
  return cfg;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "scenario = " << c.scenario << "\n";
  if (!c.model.empty()) out << "model = " << c.model << "\n";
  out << "scheme = " << c.scheme << "\n";
  if (c.degree) out << "d = " << *c.degree << "\n";
  if (c.nx) out << "nx = " << *c.nx << "\n";
  if (c.ny) out << "ny = " << *c.ny << "\n";
  if (c.dt) out << "dt = " << format_double(*c.dt) << "\n";
  if (c.beta) out << "beta = " << format_double(*c.beta) << "\n";
  out << "tau = " << format_double(c.tau) << "\n";
  if (c.tmax) out << "tmax = " << format_double(*c.tmax) << "\n";
  if (c.lambda) out << "lambda = " << format_double(*c.lambda) << "\n";
  out << "output = " << c.output << "\n";
  out << "mode = " << to_string(c.mode) << "\n";
  out << "levels = " << c.levels << "\n";
  if (c.source) out << "source = " << (*c.source ? "on" : "off") << "\n";
  return out.str();
}

}  // namespace pdg
