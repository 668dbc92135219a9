#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pdg/driver.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kSolverError = 3;
constexpr int kIoError = 4;

int threads_from_env() {
  const char* env = std::getenv("PDG_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 0) throw pdg::ConfigError(0, "PDG_THREADS must be a non-negative integer");
  return static_cast<int>(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic DG solver with palindromic splitting"};
  std::string mode;
  std::string config_path;
  std::string prefix;
  app.add_option("mode", mode, "run | converge | graph")->required()->check(CLI::IsMember({"run", "converge", "graph"}));
  app.add_option("--config", config_path, "run configuration file")->required();
  app.add_option("--out", prefix, "output path prefix (default: the config's output key)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  pdg::RunConfig config;
  pdg::StepOptions options;
  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "pdg: cannot read " << config_path << "\n";
      return kIoError;
    }
    std::ostringstream text;
    text << in.rdbuf();
    config = pdg::parse_config(text.str());
    config.mode = mode == "run" ? pdg::RunMode::kRun
                  : mode == "converge" ? pdg::RunMode::kConverge
                                       : pdg::RunMode::kGraph;
    options.threads = threads_from_env();
  } catch (const pdg::ConfigError& e) {
    std::cerr << "pdg: config error: " << e.what() << "\n";
    return kConfigError;
  }
  if (prefix.empty()) prefix = config.output;

  try {
    for (const auto& path : pdg::run_config(config, prefix, options)) std::cout << path << "\n";
  } catch (const pdg::IoError& e) {
    std::cerr << "pdg: io error: " << e.what() << "\n";
    return kIoError;
  } catch (const pdg::CycleError& e) {
    std::cerr << "pdg: solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const pdg::SolverError& e) {
    std::cerr << "pdg: solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "pdg: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "pdg: solver error: " << e.what() << "\n";
    return kSolverError;
  }
  return 0;
}
