#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace pdg {

enum class RunMode { kRun, kConverge, kGraph };

struct RunConfig {
  std::string scenario;
  std::string model;   // empty: the scenario's model
  std::string scheme = "m2";
  std::optional<int> degree;  // d
  std::optional<int> nx;
  std::optional<int> ny;
  std::optional<double> dt;
  std::optional<double> beta;
  double tau = 0;
  std::optional<double> tmax;
  std::optional<double> lambda;
  std::string output = "pdg";
  RunMode mode = RunMode::kRun;
  int levels = 3;          // converge mode
  std::optional<bool> source;  // source operator on/off, default from the scenario

  bool operator==(const RunConfig&) const = default;
};

/// Parse or validation failure. line() is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Flat `key = value` lines; `#` starts a comment. Unknown keys, repeated keys,
/// malformed numbers and invalid combinations throw ConfigError. The degree
/// defaults to the scenario's (5 in 1D, 2 for the vortex).
RunConfig parse_config(const std::string& text);

/// Inverse of parse_config: parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

std::string to_string(RunMode mode);

}  // namespace pdg
