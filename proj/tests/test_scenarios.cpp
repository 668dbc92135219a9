#include <doctest.h>

#include <cmath>

#include "pdg/scenarios.hpp"

using namespace pdg;

namespace {

Vector euler_flux(double rho, double u, double c) {
  return (Vector(2) << rho * u, rho * u * u + c * c * rho).finished();
}

Vector euler_state(double rho, double u) { return (Vector(2) << rho, rho * u).finished(); }

}  // namespace

TEST_CASE("smooth pulse initial data") {
  const Scenario s = init_smooth_1d();
  CHECK(s.initial(Point(0, 0))[0] == doctest::Approx(2.0));
  CHECK(s.initial(Point(2, 0))[0] == doctest::Approx(1.0));
  CHECK(s.initial(Point(0.3, 0))[1] == 0.0);
  const auto model = build_model(s);
  CHECK(model->lambda() == 2.0);
  for (double x = -2; x <= 2; x += 0.25) {
    CHECK(subcharacteristic_check(model->system_ptr(), s.initial(Point(x, 0)), model->lambda()));
  }
}

TEST_CASE("riemann initial data") {
  const Scenario s = init_riemann_1d();
  CHECK(s.initial(Point(-0.5, 0)) == euler_state(2, 0));
  CHECK(s.initial(Point(0.5, 0)) == euler_state(1, 0));
  const auto model = build_model(s);
  const auto space = build_space(s, s.cells, s.degree);
  const KineticState f = initial_state(*model, *space, s.initial, s.boundary);
  double mass = 0;
  for (int c = 0; c < space->mesh().num_real_cells(); ++c) {
    for (int i = 0; i < space->nodes_per_cell(); ++i) {
      const Vector w = macro_at_node(*model, *space, f, c, i);
      mass += space->node_weight(i) * w[0];
      CHECK((w - s.initial(space->node_position(c, i))).norm() < 1e-14);
    }
  }
  CHECK(mass == doctest::Approx(3.0));
}

TEST_CASE("riemann solution of equal states is constant") {
  for (double xi : {-3.0, 0.0, 0.4}) {
    const auto [rho, u] = riemann_exact_isothermal(1.2, 0.3, 1.2, 0.3, 0.6, xi);
    CHECK(rho == doctest::Approx(1.2));
    CHECK(u == doctest::Approx(0.3));
  }
}

TEST_CASE("dam-break riemann structure and jump conditions") {
  const double c = 0.6;
  const auto r = solve_isothermal_riemann(2, 0, 1, 0, c);
  CHECK_FALSE(r.left_shock);
  CHECK(r.right_shock);
  CHECK(r.rho_star > 1.0);
  CHECK(r.rho_star < 2.0);
  CHECK(r.u_star > 0.0);
  // Rankine-Hugoniot across the right shock
  const double s = r.right_speed_head();
  const Vector jump_flux = euler_flux(r.rho_star, r.u_star, c) - euler_flux(1, 0, c);
  const Vector jump_state = euler_state(r.rho_star, r.u_star) - euler_state(1, 0);
  CHECK((jump_flux - s * jump_state).cwiseAbs().maxCoeff() < 1e-8);
  // left rarefaction: Riemann invariant u + c log(rho) is constant
  CHECK(r.u_star + c * std::log(r.rho_star) == doctest::Approx(c * std::log(2.0)).epsilon(1e-12));
  // the fan is continuous at both edges
  const auto head = r.sample(r.left_speed_head() + 1e-12);
  const auto tail = r.sample(r.left_speed_tail() - 1e-12);
  CHECK(head.first == doctest::Approx(2.0));
  CHECK(tail.first == doctest::Approx(r.rho_star));
}

TEST_CASE("two-shock riemann problem satisfies both jump conditions") {
  const double c = 1.0;
  const auto r = solve_isothermal_riemann(1, 1, 1, -1, c);
  CHECK(r.left_shock);
  CHECK(r.right_shock);
  CHECK(r.u_star == doctest::Approx(0.0).epsilon(1e-12));
  for (bool left : {true, false}) {
    const double s = left ? r.left_speed_head() : r.right_speed_head();
    const double rho = 1, u = left ? 1.0 : -1.0;
    const Vector jf = euler_flux(r.rho_star, r.u_star, c) - euler_flux(rho, u, c);
    const Vector js = euler_state(r.rho_star, r.u_star) - euler_state(rho, u);
    CHECK((jf - s * js).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("riemann solution is mirror symmetric") {
  for (double xi : {-0.9, -0.4, -0.1, 0.2, 0.55, 1.1}) {
    const auto a = riemann_exact_isothermal(2, 0.1, 1, -0.2, 0.6, xi);
    const auto b = riemann_exact_isothermal(1, 0.2, 2, -0.1, 0.6, -xi);
    CHECK(a.first == doctest::Approx(b.first));
    CHECK(a.second == doctest::Approx(-b.second));
  }
}

TEST_CASE("strong expansion keeps a positive star density") {
  // symmetric rarefactions: 2 c log(rho*) = u_l - u_r
  const auto r = solve_isothermal_riemann(1, -5, 1, 5, 0.5);
  CHECK(r.rho_star == doctest::Approx(std::exp(-10.0)).epsilon(1e-10));
  CHECK(r.u_star == doctest::Approx(0.0).epsilon(1e-10));
  CHECK_THROWS_AS(solve_isothermal_riemann(0, 0, 1, 0, 0.5), std::invalid_argument);
}

TEST_CASE("drifting vortex is a translating steady state") {
  IdealMhd2D sys;
  auto residual = [&](const Point& x, double e) {
    Vector r = (mhd_vortex_exact(x, e) - mhd_vortex_exact(x, -e)) / (2 * e);
    for (int k = 0; k < 2; ++k) {
      Point dx = Point::Zero();
      dx[k] = e;
      r += (sys.flux(mhd_vortex_exact(x + dx, 0), k) - sys.flux(mhd_vortex_exact(x - dx, 0), k)) / (2 * e);
    }
    return r.cwiseAbs().maxCoeff();
  };
  for (const Point& x : {Point(0.3, 0.7), Point(-1.1, 0.4), Point(1.5, -0.9)}) {
    CHECK(residual(x, 1e-4) < 1e-7);
    const double coarse = residual(x, 2e-2), fine = residual(x, 1e-2);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("vortex far field, centre and translation") {
  const MhdVortexParams p;
  const Vector far = mhd_vortex_primitive(Point(30, -30), 0);
  CHECK(far[0] == doctest::Approx(p.rho0));
  CHECK(far[1] == doctest::Approx(p.u0 * p.drift[0]));
  CHECK(far[2] == doctest::Approx(p.u0 * p.drift[1]));
  CHECK(far[3] == doctest::Approx(p.p0));
  CHECK(std::abs(far[4]) < 1e-12);
  CHECK((mhd_vortex_exact(Point(30, -30), 0) - mhd_vortex_background()).norm() < 1e-12);

  const Vector centre = mhd_vortex_primitive(Point(0, 0), 0);
  const double e = std::exp(1.0);
  CHECK(centre[3] == doctest::Approx(p.p0 + 0.5 * e * (p.b0 * p.b0 - p.rho0 * p.u0 * p.u0)));

  const double t = 0.7;
  const Point shift = t * p.u0 * p.drift;
  for (const Point& x : {Point(0.2, -0.4), Point(1.0, 1.5)}) {
    CHECK((mhd_vortex_exact(x + shift, t) - mhd_vortex_exact(x, 0)).norm() < 1e-14);
  }
}

TEST_CASE("l2 error is a norm on the node values") {
  const Scenario s = init_smooth_1d();
  const auto model = build_model(s);
  Scenario unit = s;
  unit.lower = Point(0, 0);
  unit.upper = Point(1, 1);
  const auto space = build_space(unit, {5, 1}, 3);
  const KineticState f = initial_state(*model, *space, s.initial, s.initial);
  CHECK(l2_error(*model, *space, f, s.initial) < 1e-14);

  const double eps = 0.03;
  const MacroField shifted = [&](const Point& x) {
    Vector w = s.initial(x);
    w[0] += eps;
    return w;
  };
  CHECK(l2_error(*model, *space, f, shifted) == doctest::Approx(eps));
  const MacroField shifted_twice = [&](const Point& x) {
    Vector w = s.initial(x);
    w[0] += 2 * eps;
    return w;
  };
  CHECK(l2_error(*model, *space, f, shifted_twice) == doctest::Approx(2 * eps));
  CHECK_THROWS_AS(l2_error(*model, *space, KineticState::Zero(3, 4), s.initial), std::invalid_argument);
}

TEST_CASE("evaluation between nodes interpolates") {
  const Scenario s = init_smooth_1d();
  const auto model = build_model(s);
  const auto space = build_space(s, {4, 1}, 4);
  const MacroField quadratic = [](const Point& x) { return (Vector(2) << 1 + x[0] * x[0], 0.5 * x[0]).finished(); };
  const KineticState f = initial_state(*model, *space, quadratic, quadratic);
  for (double x : {-1.7, -0.2, 0.33, 1.9}) {
    CHECK((evaluate_macro(*model, *space, f, Point(x, 0)) - quadratic(Point(x, 0))).norm() < 1e-12);
  }
}

TEST_CASE("cfl number and time step are inverse") {
  const Scenario s = init_smooth_1d();
  const auto space = build_space(s, {16, 1}, 5);
  const double dt = dt_for_cfl(2.0, 5.0, *space);
  CHECK(cfl_number(2.0, dt, *space) == doctest::Approx(5.0));
  const double spacing = 0.5 * 0.25 * (gauss_lobatto<double>(5).nodes[1] + 1.0);
  CHECK(space->min_node_distance() == doctest::Approx(spacing));
}

TEST_CASE("slope fit recovers a power law") {
  std::vector<double> x{0.1, 0.05, 0.025, 0.0125}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 2.5));
  CHECK(fit_slope(x, y) == doctest::Approx(2.5));
}

TEST_CASE("simulation rounds the step to hit the final time") {
  Scenario s = init_smooth_1d();
  RunSpec spec = default_run_spec(s, SplittingScheme::from_name("m2"));
  spec.cells = {8, 1};
  spec.degree = 2;
  spec.beta = 0;
  spec.dt = 0.15;
  const Simulation sim = simulate(s, spec);
  CHECK(sim.steps == 3);
  CHECK(sim.dt * sim.steps == doctest::Approx(s.tmax));
  spec.beta = 5;
  CHECK_THROWS_AS(simulate(s, spec), std::invalid_argument);
}

TEST_CASE("time-step refinement halves the step") {
  Scenario s = init_smooth_1d();
  ConvergenceStudy study;
  study.axis = RefinementAxis::kTimeStep;
  study.base = default_run_spec(s, SplittingScheme::from_name("m2"));
  study.base.cells = {8, 1};
  study.base.degree = 2;
  study.base.beta = 0;
  study.base.dt = 0.2;
  study.levels = 3;
  const auto report = run_convergence(s, study);
  CHECK(report.all_ok());
  CHECK(report.levels.size() == 3);
  CHECK(report.levels[1].dt == doctest::Approx(0.1));
  study.levels = 2;
  CHECK_THROWS_AS(run_convergence(s, study), std::invalid_argument);
}

TEST_CASE("gravity scenario converges against a self-reference") {
  Scenario s = init_euler_gravity_1d();
  ConvergenceStudy study;
  study.axis = RefinementAxis::kMesh;
  study.base = default_run_spec(s, SplittingScheme::from_name("m2"));
  CHECK(study.base.scheme.include_source);
  study.base.cells = {16, 1};
  study.base.degree = 3;
  study.levels = 3;
  study.use_reference_scheme = true;
  study.reference_scheme = SchemeKind::kSuzuki4;
  const auto report = run_convergence(s, study);
  REQUIRE(report.all_ok());
  CHECK(report.slope > 1.5);
}
