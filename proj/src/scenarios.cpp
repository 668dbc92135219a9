#include "pdg/scenarios.hpp"

#include <cmath>
#include <limits>

namespace pdg {

namespace {

Vector euler_1d_state(double rho, double u) {
  Vector w(2);
  w << rho, rho * u;
  return w;
}

}  // namespace

Scenario init_smooth_1d() {
  Scenario s;
  s.name = "smooth1d";
  s.model_id = "vectorial-euler-1d";
  s.model_params.sound_speed = 0.6;
  s.model_params.lambda = 2;
  s.dimension = 1;
  s.lower = Point(-2, 0);
  s.upper = Point(2, 1);
  s.cells = {64, 1};
  s.degree = 5;
  s.tau = 0;
  s.tmax = 0.4;
  s.beta = 5;
  s.initial = [](const Point& x) { return euler_1d_state(1 + std::exp(-30 * x[0] * x[0]), 0); };
  s.boundary = s.initial;
  return s;
}

Scenario init_riemann_1d() {
  Scenario s;
  s.name = "riemann1d";
  s.model_id = "vectorial-euler-1d";
  s.model_params.sound_speed = 0.6;
  s.model_params.lambda = 2;
  s.dimension = 1;
  s.lower = Point(-1, 0);
  s.upper = Point(1, 1);
  s.cells = {100, 1};
  s.degree = 5;
  s.tau = 0;
  s.tmax = 0.4;
  s.beta = 3;
  s.initial = [](const Point& x) { return euler_1d_state(x[0] < 0 ? 2.0 : 1.0, 0); };
  s.boundary = s.initial;
  s.exact = [](const Point& x, double t) {
    if (t <= 0) return euler_1d_state(x[0] < 0 ? 2.0 : 1.0, 0);
    const auto [rho, u] = riemann_exact_isothermal(2, 0, 1, 0, 0.6, x[0] / t);
    return euler_1d_state(rho, u);
  };
  return s;
}

Scenario init_mhd_vortex() {
  Scenario s;
  s.name = "mhd-vortex";
  s.model_id = "vectorial-mhd-2d";
  s.model_params.lambda = 4;
  s.model_params.gamma = 5.0 / 3.0;
  s.dimension = 2;
  s.lower = Point(-4, -4);
  s.upper = Point(4, 4);
  s.cells = {48, 48};
  s.degree = 2;
  s.tau = 0;
  s.tmax = 1;
  s.dt = 0.1;
  s.exact = [](const Point& x, double t) { return mhd_vortex_exact(x, t); };
  s.initial = [](const Point& x) { return mhd_vortex_exact(x, 0); };
  s.boundary = [](const Point&) { return mhd_vortex_background(); };
  return s;
}

Scenario init_euler_gravity_1d() {
  Scenario s = init_smooth_1d();
  s.name = "euler-gravity-1d";
  s.model_params.gravity = Vector::Constant(1, 0.05);
  s.include_source = true;
  return s;
}

std::vector<std::string> scenario_ids() { return {"smooth1d", "riemann1d", "mhd-vortex", "euler-gravity-1d"}; }

Scenario make_scenario(const std::string& id) {
  if (id == "smooth1d") return init_smooth_1d();
  if (id == "riemann1d") return init_riemann_1d();
  if (id == "mhd-vortex") return init_mhd_vortex();
  if (id == "euler-gravity-1d") return init_euler_gravity_1d();
  throw std::invalid_argument("unknown scenario id: " + id);
}

// --- isothermal Riemann problem ---------------------------------------------------

namespace {

// Velocity jump across a wave connecting rho_k to rho, and its derivative in log(rho).
std::pair<double, double> wave_curve(double rho, double rho_k, double c) {
  if (rho > rho_k) {
    const double root = std::sqrt(rho * rho_k);
    // d/dlog(rho) of c (rho - rho_k) / sqrt(rho rho_k)
    return {c * (rho - rho_k) / root, c * (rho + rho_k) / (2 * root)};
  }
  return {c * std::log(rho / rho_k), c};
}

}  // namespace

double IsothermalRiemann::left_speed_head() const {
  return left_shock ? u_left - c * std::sqrt(rho_star / rho_left) : u_left - c;
}
double IsothermalRiemann::left_speed_tail() const { return left_shock ? left_speed_head() : u_star - c; }
double IsothermalRiemann::right_speed_head() const {
  return right_shock ? u_right + c * std::sqrt(rho_star / rho_right) : u_right + c;
}
double IsothermalRiemann::right_speed_tail() const { return right_shock ? right_speed_head() : u_star + c; }

std::pair<double, double> IsothermalRiemann::sample(double xi) const {
  if (xi < left_speed_head()) return {rho_left, u_left};
  if (xi < left_speed_tail()) {
    const double u = xi + c;
    return {rho_left * std::exp((u_left - u) / c), u};
  }
  if (xi < right_speed_tail()) return {rho_star, u_star};
  if (xi < right_speed_head()) {
    const double u = xi - c;
    return {rho_right * std::exp((u - u_right) / c), u};
  }
  return {rho_right, u_right};
}

IsothermalRiemann solve_isothermal_riemann(double rho_l, double u_l, double rho_r, double u_r, double c) {
  if (!(rho_l > 0 && rho_r > 0)) throw std::invalid_argument("riemann: densities must be positive");
  if (!(c > 0)) throw std::invalid_argument("riemann: sound speed must be positive");
  // mismatch(s) = psi_L + psi_R + u_r - u_l, increasing in s = log(rho)
  auto mismatch = [&](double s) {
    const double rho = std::exp(s);
    auto [pl, dl] = wave_curve(rho, rho_l, c);
    auto [pr, dr] = wave_curve(rho, rho_r, c);
    return std::pair{pl + pr + u_r - u_l, dl + dr};
  };
  double lo = std::log(std::min(rho_l, rho_r));
  double hi = std::log(std::max(rho_l, rho_r));
  while (mismatch(lo).first > 0) {
    lo -= 1;
    if (lo < std::log(std::numeric_limits<double>::min())) {
      throw std::domain_error("riemann: vacuum forms between the two states");
    }
  }
  while (mismatch(hi).first < 0) hi += 1;

  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    auto [f, df] = mismatch(s);
    if (std::abs(f) <= 1e-12 * std::max(1.0, c)) break;
    if (f > 0) hi = s; else lo = s;
    double next = s - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    s = next;
  }
  IsothermalRiemann r{rho_l, u_l, rho_r, u_r, c, 0, 0, false, false};
  r.rho_star = std::exp(s);
  r.u_star = u_l - wave_curve(r.rho_star, rho_l, c).first;
  r.left_shock = r.rho_star > rho_l;
  r.right_shock = r.rho_star > rho_r;
  return r;
}

std::pair<double, double> riemann_exact_isothermal(double rho_l, double u_l, double rho_r, double u_r,
                                                   double c, double xi) {
  return solve_isothermal_riemann(rho_l, u_l, rho_r, u_r, c).sample(xi);
}

// --- MHD vortex ---------------------------------------------------------------------

double vortex_profile(double r) { return std::exp(0.5 * (1 - r * r)); }

Vector mhd_vortex_primitive(const Point& x, double t, const MhdVortexParams& p) {
  const Point background = p.u0 * p.drift;
  const Point rel = x - t * background;
  const double r = rel.norm();
  const double h = vortex_profile(r);
  const Point e_theta(-rel[1], rel[0]);  // r times the unit azimuthal vector
  Vector prim(6);
  prim[0] = p.rho0;
  prim[1] = background[0] + p.u0 * h * e_theta[0];
  prim[2] = background[1] + p.u0 * h * e_theta[1];
  // balances centrifugal force, magnetic tension and magnetic pressure
  prim[3] = p.p0 + 0.5 * h * h * (p.b0 * p.b0 * (1 - r * r) - p.rho0 * p.u0 * p.u0);
  prim[4] = p.b0 * h * e_theta[0];
  prim[5] = p.b0 * h * e_theta[1];
  return prim;
}

Vector mhd_vortex_background(const MhdVortexParams& p) {
  Vector prim(6);
  prim << p.rho0, p.u0 * p.drift[0], p.u0 * p.drift[1], p.p0, 0, 0;
  return IdealMhd2D(p.gamma).conservative(prim);
}

Vector mhd_vortex_exact(const Point& x, double t, const MhdVortexParams& p) {
  return IdealMhd2D(p.gamma).conservative(mhd_vortex_primitive(x, t, p));
}

// --- running ---------------------------------------------------------------------

RunSpec default_run_spec(const Scenario& scenario, const SplittingScheme& scheme) {
  RunSpec spec;
  spec.scheme = scheme;
  spec.scheme.include_source = scheme.include_source || scenario.include_source;
  spec.cells = scenario.cells;
  spec.degree = scenario.degree;
  spec.beta = scenario.beta;
  spec.dt = scenario.beta > 0 ? 0 : scenario.dt;
  spec.tau = scenario.tau;
  spec.tmax = scenario.tmax;
  return spec;
}

std::shared_ptr<const KineticModel> build_model(const Scenario& scenario, double lambda_override) {
  ModelParams params = scenario.model_params;
  if (lambda_override > 0) params.lambda = lambda_override;
  return make_model(scenario.model_id, params);
}

std::shared_ptr<const DGSpace> build_space(const Scenario& scenario, std::array<int, 2> cells, int degree) {
  CartesianMesh mesh(scenario.dimension, cells, scenario.lower, scenario.upper);
  return std::make_shared<DGSpace>(std::move(mesh), degree);
}

KineticState initial_state(const KineticModel& model, const DGSpace& space, const MacroField& initial,
                           const MacroField& boundary) {
  KineticState state(space.num_dofs(), model.num_velocities());
  const int nloc = space.nodes_per_cell();
  for (int cell = 0; cell < space.mesh().num_cells(); ++cell) {
    const MacroField& field = space.mesh().is_ghost(cell) && boundary ? boundary : initial;
    for (int node = 0; node < nloc; ++node) {
      state.row(space.dof(cell, node)) = model.equilibrium(field(space.node_position(cell, node))).transpose();
    }
  }
  return state;
}

Simulation simulate(const Scenario& scenario, const RunSpec& spec) {
  if ((spec.dt > 0) == (spec.beta > 0)) throw std::invalid_argument("simulate: give exactly one of dt and beta");
  if (!(spec.tmax > 0)) throw std::invalid_argument("simulate: tmax must be positive");
  Simulation sim;
  sim.model = build_model(scenario, spec.lambda);
  sim.space = build_space(scenario, spec.cells, spec.degree);
  sim.state = initial_state(*sim.model, *sim.space, scenario.initial, scenario.boundary);

  const double target = spec.dt > 0 ? spec.dt : dt_for_cfl(sim.model->lambda(), spec.beta, *sim.space);
  sim.steps = std::max(1, static_cast<int>(std::ceil(spec.tmax / target - 1e-9)));
  sim.dt = spec.tmax / sim.steps;

  StepContext ctx(sim.model, sim.space, spec.tau, spec.options);
  for (int n = 0; n < sim.steps; ++n) {
    advance(ctx, spec.scheme, sim.dt, sim.state);
    if (!sim.state.allFinite()) throw SolverError("simulate: non-finite state at step " + std::to_string(n + 1));
  }
  sim.time = spec.tmax;
  return sim;
}

Vector macro_at_node(const KineticModel& model, const DGSpace& space, const KineticState& state, int cell,
                     int node) {
  return model.projection() * state.row(space.dof(cell, node)).transpose();
}

Vector evaluate_macro(const KineticModel& model, const DGSpace& space, const KineticState& state,
                      const Point& x) {
  const int cell = space.mesh().locate(x);
  const Vector phi = space.basis_at(cell, x);
  const int nloc = space.nodes_per_cell();
  const Matrix local = state.middleRows(static_cast<Eigen::Index>(cell) * nloc, nloc);
  return model.projection() * (local.transpose() * phi);
}

double l2_error(const KineticModel& model, const DGSpace& space, const KineticState& state,
                const MacroField& reference) {
  if (state.rows() != space.num_dofs() || state.cols() != model.num_velocities()) {
    throw std::invalid_argument("l2_error: state does not match the discretization");
  }
  double sum = 0;
  for (int cell = 0; cell < space.mesh().num_real_cells(); ++cell) {
    for (int node = 0; node < space.nodes_per_cell(); ++node) {
      const Vector diff = macro_at_node(model, space, state, cell, node) -
                          reference(space.node_position(cell, node));
      sum += space.node_weight(node) * diff.squaredNorm();
    }
  }
  return std::sqrt(sum);
}

double cfl_number(double lambda, double dt, const DGSpace& space) {
  return lambda * dt / space.min_node_distance();
}

double dt_for_cfl(double lambda, double beta, const DGSpace& space) {
  return beta * space.min_node_distance() / lambda;
}

// --- convergence --------------------------------------------------------------------

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double ConvergenceReport::slope_through(int upto) const {
  std::vector<double> x, y;
  for (int i = 0; i <= upto && i < static_cast<int>(levels.size()); ++i) {
    if (!levels[i].ok) return std::numeric_limits<double>::quiet_NaN();
    x.push_back(levels[i].dt);
    y.push_back(levels[i].error);
  }
  return fit_slope(x, y);
}

bool ConvergenceReport::all_ok() const {
  for (const auto& l : levels) {
    if (!l.ok) return false;
  }
  return !levels.empty();
}

namespace {

RunSpec level_spec(const ConvergenceStudy& study, int level) {
  RunSpec spec = study.base;
  const int factor = 1 << level;
  if (study.axis == RefinementAxis::kMesh) {
    spec.cells[0] *= factor;
    if (spec.cells[1] > 1) spec.cells[1] *= factor;
  } else {
    spec.dt /= factor;
  }
  return spec;
}

}  // namespace

ConvergenceReport run_convergence(const Scenario& scenario, const ConvergenceStudy& study) {
  if (study.levels < 3) throw std::invalid_argument("run_convergence: need at least 3 levels");
  if (study.axis == RefinementAxis::kMesh && !(study.base.beta > 0)) {
    throw std::invalid_argument("run_convergence: mesh refinement needs a fixed beta");
  }
  if (study.axis == RefinementAxis::kTimeStep && !(study.base.dt > 0)) {
    throw std::invalid_argument("run_convergence: time-step refinement needs a base dt");
  }

  MacroField reference;
  Simulation ref_sim;
  const bool exact = study.prefer_exact && static_cast<bool>(scenario.exact);
  if (exact) {
    const double t = study.base.tmax;
    reference = [&scenario, t](const Point& x) { return scenario.exact(x, t); };
  } else {
    RunSpec spec = level_spec(study, study.levels - 1);
    if (study.axis == RefinementAxis::kMesh) {
      spec.cells[0] *= study.reference_factor;
      if (spec.cells[1] > 1) spec.cells[1] *= study.reference_factor;
    } else {
      spec.dt /= study.reference_factor;
    }
    if (study.use_reference_scheme) {
      spec.scheme = SplittingScheme::make(study.reference_scheme, spec.scheme.include_source);
    }
    ref_sim = simulate(scenario, spec);
    reference = [&ref_sim](const Point& x) {
      return evaluate_macro(*ref_sim.model, *ref_sim.space, ref_sim.state, x);
    };
  }

  ConvergenceReport report;
  for (int level = 0; level < study.levels; ++level) {
    const RunSpec spec = level_spec(study, level);
    ConvergenceLevel entry;
    entry.level = level;
    try {
      const Simulation sim = simulate(scenario, spec);
      entry.dt = sim.dt;
      entry.h = sim.space->mesh().cell_size(0);
      entry.error = l2_error(*sim.model, *sim.space, sim.state, reference);
      if (!std::isfinite(entry.error)) {
        entry.ok = false;
        entry.failure = "non-finite error";
      }
    } catch (const std::exception& e) {
      entry.ok = false;
      entry.failure = e.what();
      entry.error = std::numeric_limits<double>::quiet_NaN();
    }
    report.levels.push_back(entry);
  }
  report.slope = report.slope_through(study.levels - 1);
  return report;
}

}  // namespace pdg
