#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pdg/config.hpp"
#include "pdg/scenarios.hpp"

namespace pdg {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario with the config's model, lambda and tmax overrides applied.
Scenario configured_scenario(const RunConfig& config);
RunSpec configured_run_spec(const RunConfig& config, const Scenario& scenario,
                            const StepOptions& options = {});

/// Header `x[,y],<field names>` and one row per node of the real cells, in
/// topological order of velocity 0 and then node order.
std::string fields_csv(const Simulation& sim);
/// Header `level,dt,h,error_l2,slope_so_far`.
std::string convergence_csv(const ConvergenceReport& report);

/// Executes the configured mode and writes its artifacts under `prefix`.
/// Returns the written paths. Solver failures propagate as SolverError or
/// CycleError, write failures as IoError.
std::vector<std::string> run_config(const RunConfig& config, const std::string& prefix,
                                    const StepOptions& options = {});

}  // namespace pdg
