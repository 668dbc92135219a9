#include "pdg/driver.hpp"

#include <cstdio>
#include <fstream>

#include "pdg/dependency_graph.hpp"

namespace pdg {

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace

Scenario configured_scenario(const RunConfig& config) {
  Scenario s = make_scenario(config.scenario);
  if (!config.model.empty()) s.model_id = config.model;
  if (config.lambda) s.model_params.lambda = *config.lambda;
  if (config.tmax) s.tmax = *config.tmax;
  if (config.source) s.include_source = *config.source;
  return s;
}

RunSpec configured_run_spec(const RunConfig& config, const Scenario& scenario, const StepOptions& options) {
  SplittingScheme scheme = SplittingScheme::from_name(config.scheme);
  scheme.include_source = scenario.include_source;
  RunSpec spec = default_run_spec(scenario, scheme);
  spec.scheme.include_source = scenario.include_source;
  if (config.nx) spec.cells[0] = *config.nx;
  if (config.ny && scenario.dimension == 2) spec.cells[1] = *config.ny;
  if (config.degree) spec.degree = *config.degree;
  spec.dt = config.dt.value_or(0);
  spec.beta = config.beta.value_or(0);
  spec.tau = config.tau;
  spec.tmax = scenario.tmax;
  spec.options = options;
  return spec;
}

std::string fields_csv(const Simulation& sim) {
  const KineticModel& model = *sim.model;
  const DGSpace& space = *sim.space;
  const int dim = model.dimension();
  std::string out = dim == 2 ? "x,y" : "x";
  for (const auto& name : model.system().field_names()) out += "," + name;
  out += "\n";

  const std::vector<int> order =
      topological_order(build_dependency_graph(space.mesh(), model.velocity(0)));
  for (int cell : order) {
    if (space.mesh().is_ghost(cell)) continue;
    for (int node = 0; node < space.nodes_per_cell(); ++node) {
      const Point x = space.node_position(cell, node);
      const Vector w = macro_at_node(model, space, sim.state, cell, node);
      for (int k = 0; k < dim; ++k) {
        if (k > 0) out += ",";
        append_double(out, x[k]);
      }
      for (Eigen::Index l = 0; l < w.size(); ++l) {
        out += ",";
        append_double(out, w[l]);
      }
      out += "\n";
    }
  }
  return out;
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::string out = "level,dt,h,error_l2,slope_so_far\n";
  for (const auto& level : report.levels) {
    out += std::to_string(level.level) + ",";
    append_double(out, level.dt);
    out += ",";
    append_double(out, level.h);
    out += ",";
    append_double(out, level.error);
    out += ",";
    append_double(out, report.slope_through(level.level));
    out += "\n";
  }
  return out;
}

std::vector<std::string> run_config(const RunConfig& config, const std::string& prefix,
                                    const StepOptions& options) {
  const Scenario scenario = configured_scenario(config);
  const RunSpec spec = configured_run_spec(config, scenario, options);
  std::vector<std::string> written;

  switch (config.mode) {
    case RunMode::kRun: {
      const Simulation sim = simulate(scenario, spec);
      const std::string path = prefix + "_fields.csv";
      write_file(path, fields_csv(sim));
      written.push_back(path);
      break;
    }
    case RunMode::kConverge: {
      ConvergenceStudy study;
      study.base = spec;
      study.levels = config.levels;
      study.axis = spec.beta > 0 ? RefinementAxis::kMesh : RefinementAxis::kTimeStep;
      const ConvergenceReport report = run_convergence(scenario, study);
      const std::string path = prefix + "_conv.csv";
      write_file(path, convergence_csv(report));
      written.push_back(path);
      for (const auto& level : report.levels) {
        if (!level.ok) throw SolverError("level " + std::to_string(level.level) + ": " + level.failure);
      }
      break;
    }
    case RunMode::kGraph: {
      const auto model = build_model(scenario, spec.lambda);
      const auto space = build_space(scenario, spec.cells, spec.degree);
      for (int i = 0; i < model->num_velocities(); ++i) {
        const DependencyGraph graph = build_dependency_graph(space->mesh(), model->velocity(i));
        topological_order(graph);  // surfaces cycles
        const std::string path = prefix + "_v" + std::to_string(i) + ".dot";
        write_file(path, to_dot(graph));
        written.push_back(path);
      }
      break;
    }
  }
  return written;
}

}  // namespace pdg
