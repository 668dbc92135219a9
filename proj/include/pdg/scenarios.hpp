#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pdg/kinetic_model.hpp"
#include "pdg/mesh.hpp"
#include "pdg/splitting.hpp"
#include "pdg/types.hpp"

namespace pdg {

using MacroField = std::function<Vector(const Point&)>;
using MacroSolution = std::function<Vector(const Point&, double)>;

/// Test problem: model, domain, initial and boundary data, and default
/// discretization parameters.
struct Scenario {
  std::string name;
  std::string model_id;
  ModelParams model_params;
  int dimension = 1;
  Point lower = Point::Zero();
  Point upper = Point::Ones();
  std::array<int, 2> cells{1, 1};
  int degree = 5;
  double tau = 0;
  double tmax = 0;
  double beta = 0;  // default CFL number, 0 when a step is given instead
  double dt = 0;
  bool include_source = false;
  MacroField initial;
  MacroField boundary;  // macroscopic state frozen in the fictitious cells
  MacroSolution exact;  // empty when no closed form exists
};

/// rho = 1 + exp(-30 x^2), u = 0 on [-2, 2]; c = 0.6, lambda = 2, d = 5, tmax = 0.4.
Scenario init_smooth_1d();
/// rho = 2 for x < 0 else 1, u = 0 on [-1, 1]; 100 cells, beta = 3, tmax = 0.4.
Scenario init_riemann_1d();
/// Drifting MHD vortex on [-4, 4]^2, 48^2 cells, d = 2, lambda = 4, tmax = 1.
Scenario init_mhd_vortex();
/// Smooth 1D isothermal Euler pulse under gravity s = (0, rho g0), g0 = 0.05.
Scenario init_euler_gravity_1d();

/// "smooth1d" | "riemann1d" | "mhd-vortex" | "euler-gravity-1d".
Scenario make_scenario(const std::string& id);
std::vector<std::string> scenario_ids();

// --- exact solutions -----------------------------------------------------------

/// Self-similar solution of the isothermal Riemann problem.
struct IsothermalRiemann {
  double rho_left, u_left, rho_right, u_right, c;
  double rho_star, u_star;
  bool left_shock, right_shock;

  /// Shock speed, or the (head, tail) fan edges for a rarefaction.
  double left_speed_head() const;
  double left_speed_tail() const;
  double right_speed_tail() const;
  double right_speed_head() const;

  /// (rho, u) at x / t = xi.
  std::pair<double, double> sample(double xi) const;
};

/// Star state from a safeguarded Newton iteration on velocity matching
/// (|mismatch| <= 1e-12). Isothermal rarefactions never reach vacuum; a star
/// density below the double range throws std::domain_error.
IsothermalRiemann solve_isothermal_riemann(double rho_l, double u_l, double rho_r, double u_r, double c);
std::pair<double, double> riemann_exact_isothermal(double rho_l, double u_l, double rho_r, double u_r,
                                                   double c, double xi);

struct MhdVortexParams {
  double rho0 = 1;
  double p0 = 1;
  double u0 = 0.2;
  double b0 = 0.2;
  Point drift{1, 1};
  double gamma = 5.0 / 3.0;
};

/// Vortex profile h(r) = exp((1 - r^2) / 2).
double vortex_profile(double r);
/// Primitive state (rho, ux, uy, p, Bx, By) of the drifting vortex:
/// u = u0 (drift + h(r) (-y', x')), B = b0 h(r) (-y', x'),
/// p = p0 + h(r)^2 (b0^2 (1 - r^2) - rho0 u0^2) / 2,
/// with (x', y') = x - t u0 drift the position relative to the moving centre.
Vector mhd_vortex_primitive(const Point& x, double t, const MhdVortexParams& params = {});
/// Far-field state, used as Dirichlet data.
Vector mhd_vortex_background(const MhdVortexParams& params = {});
/// Conservative state (rho, rho ux, rho uy, Q, Bx, By).
Vector mhd_vortex_exact(const Point& x, double t, const MhdVortexParams& params = {});

// --- running ---------------------------------------------------------------------

struct RunSpec {
  SplittingScheme scheme;
  std::array<int, 2> cells{1, 1};
  int degree = 5;
  double dt = 0;    // exactly one of dt and beta is positive
  double beta = 0;
  double tau = 0;
  double tmax = 0;
  double lambda = 0;  // 0 keeps the scenario's model default
  StepOptions options;
};

/// Scenario defaults for the given scheme.
RunSpec default_run_spec(const Scenario& scenario, const SplittingScheme& scheme);

struct Simulation {
  std::shared_ptr<const KineticModel> model;
  std::shared_ptr<const DGSpace> space;
  KineticState state;
  double dt = 0;
  int steps = 0;
  double time = 0;
};

std::shared_ptr<const KineticModel> build_model(const Scenario& scenario, double lambda_override = 0);
std::shared_ptr<const DGSpace> build_space(const Scenario& scenario, std::array<int, 2> cells, int degree);

/// Equilibrium state of the initial data, fictitious cells from the boundary data.
KineticState initial_state(const KineticModel& model, const DGSpace& space, const MacroField& initial,
                           const MacroField& boundary);

/// Runs tmax / dt steps; dt comes from the run spec or from beta, shrunk so the
/// step count is an integer.
Simulation simulate(const Scenario& scenario, const RunSpec& spec);

/// Macroscopic state P f at one node.
Vector macro_at_node(const KineticModel& model, const DGSpace& space, const KineticState& state, int cell,
                     int node);
/// Macroscopic state at an arbitrary point by nodal interpolation.
Vector evaluate_macro(const KineticModel& model, const DGSpace& space, const KineticState& state,
                      const Point& x);

/// L2 norm over the real cells of P f - w_ref, by Gauss-Lobatto quadrature.
double l2_error(const KineticModel& model, const DGSpace& space, const KineticState& state,
                const MacroField& reference);

/// beta = lambda dt / delta with delta the minimal physical node distance.
double cfl_number(double lambda, double dt, const DGSpace& space);
double dt_for_cfl(double lambda, double beta, const DGSpace& space);

// --- convergence -----------------------------------------------------------------

enum class RefinementAxis {
  kMesh,      // double the cells per level at fixed beta
  kTimeStep,  // halve dt per level on a fixed mesh
};

struct ConvergenceLevel {
  int level = 0;
  double dt = 0;
  double h = 0;
  double error = 0;
  bool ok = true;
  std::string failure;
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;
  double slope = 0;

  /// Least-squares slope of log(error) against log(dt) over levels 0..upto.
  double slope_through(int upto) const;
  bool all_ok() const;
};

struct ConvergenceStudy {
  RefinementAxis axis = RefinementAxis::kMesh;
  RunSpec base;
  int levels = 3;
  /// Self-reference: refinement factor beyond the finest level and scheme.
  int reference_factor = 2;
  bool use_reference_scheme = true;
  SchemeKind reference_scheme = SchemeKind::kKahanLi6;
  bool prefer_exact = true;  // use the scenario's closed form when present
};

double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

ConvergenceReport run_convergence(const Scenario& scenario, const ConvergenceStudy& study);

}  // namespace pdg
