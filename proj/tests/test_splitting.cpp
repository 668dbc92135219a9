#include <doctest.h>

#include <cmath>
#include <random>

#include "pdg/scenarios.hpp"
#include "pdg/splitting.hpp"

using namespace pdg;

namespace {

Vector random_kinetic(const KineticModel& model, std::mt19937& rng) {
  // perturbed equilibrium with a safely positive density
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  Vector w(model.num_fields());
  w << 1.2, 0.3;
  Vector f = model.equilibrium(w);
  for (int i = 0; i < f.size(); ++i) f[i] += u(rng);
  return f;
}

double sum(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("relaxations conserve the macroscopic state") {
  const auto model = make_model("d1q3", {});
  std::mt19937 rng(8);
  for (double tau : {0.0, 1e-3, 0.1, 2.0}) {
    for (double dt : {0.01, 0.5}) {
      const Vector f = random_kinetic(*model, rng);
      const Vector w = model->projection() * f;
      CHECK((model->projection() * relax_r1(dt, tau, *model, f) - w).cwiseAbs().maxCoeff() < 1e-14);
      CHECK((model->projection() * relax_r2(dt, tau, *model, f) - w).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("relaxation limits") {
  const auto model = make_model("vectorial-euler-1d", {});
  std::mt19937 rng(9);
  const Vector f = random_kinetic(*model, rng);
  const Vector feq = model->equilibrium(model->projection() * f);
  CHECK((relax_r1(0.1, 0.0, *model, f) - feq).norm() < 1e-14);
  CHECK((relax_r2(0.1, 0.0, *model, f) - (2 * feq - f)).norm() < 1e-14);
  // Crank-Nicolson closed form on the non-equilibrium part
  const double dt = 0.2, tau = 0.3;
  const Vector expected = feq + (2 * tau - dt) / (2 * tau + dt) * (f - feq);
  CHECK((relax_r2(dt, tau, *model, f) - expected).norm() < 1e-14);
}

TEST_CASE("instantaneous crank-nicolson relaxation is an involution") {
  const auto model = make_model("d1q3", {});
  std::mt19937 rng(10);
  for (int i = 0; i < 20; ++i) {
    const Vector f = random_kinetic(*model, rng);
    CHECK((relax_r2(0.3, 0.0, *model, relax_r2(0.7, 0.0, *model, f)) - f).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("crank-nicolson relaxation refuses its pole") {
  const auto model = make_model("d1q3", {});
  const Vector f = model->equilibrium((Vector(2) << 1, 0).finished());
  CHECK_THROWS_AS(relax_r2(-0.2, 0.1, *model, f), SolverError);
}

TEST_CASE("source steps are exact for the linear gravity source") {
  // s(rho, m) = (0, g rho) is nilpotent, so both steps give m + dt g rho
  const double g = 0.05, dt = 0.3;
  IsothermalEuler sys(1, 0.6, Vector::Constant(1, g));
  const Vector w = (Vector(2) << 1.3, -0.2).finished();
  const Vector expected = (Vector(2) << 1.3, -0.2 + dt * g * 1.3).finished();
  CHECK((source_step_s1(dt, sys, w) - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((source_step_s2(dt, sys, w) - expected).cwiseAbs().maxCoeff() < 1e-12);

  ModelParams p;
  p.gravity = Vector::Constant(1, g);
  const auto model = make_model("vectorial-euler-1d", p);
  std::mt19937 rng(4);
  const Vector f = random_kinetic(*model, rng);
  const Vector w0 = model->projection() * f;
  const Vector moved = source_g2(dt, *model, f);
  const Vector w1 = model->projection() * moved;
  CHECK(w1[0] == doctest::Approx(w0[0]));
  CHECK(w1[1] == doctest::Approx(w0[1] + dt * g * w0[0]));
  // the non-equilibrium part is untouched
  const Vector neq0 = f - model->equilibrium(w0);
  const Vector neq1 = moved - model->equilibrium(w1);
  CHECK((neq0 - neq1).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("crank-nicolson source step solves the midpoint rule") {
  GenericSystem sys(1, 1, [](const Vector& w, int) { return w; },
                    [](const Vector& w) { return (Vector(1) << -w[0] * w[0]).finished(); });
  const double dt = 0.4, w0 = 1.5;
  const double w1 = source_step_s2(dt, sys, Vector::Constant(1, w0))[0];
  const double mid = 0.5 * (w0 + w1);
  CHECK(w1 - w0 == doctest::Approx(-dt * mid * mid).epsilon(1e-12));
}

TEST_CASE("composition coefficients") {
  const auto s = suzuki_coefficients();
  const double a = 1.0 / (4.0 - std::cbrt(4.0));
  REQUIRE(s.size() == 5);
  CHECK(s[0] == doctest::Approx(a));
  CHECK(s[2] == doctest::Approx(-std::cbrt(4.0) * a));
  CHECK(std::abs(sum(s) - 1.0) < 1e-12);

  const auto k = kahan_li_coefficients();
  REQUIRE(k.size() == 9);
  CHECK(std::abs(sum(k) - 1.0) < 1e-12);
  for (size_t i = 0; i < k.size(); ++i) CHECK(k[i] == k[k.size() - 1 - i]);
  for (size_t i = 0; i < s.size(); ++i) CHECK(s[i] == s[s.size() - 1 - i]);
}

TEST_CASE("step sequences are palindromes") {
  for (const char* name : {"m2", "suzuki4", "kahanli6"}) {
    for (bool source : {false, true}) {
      const auto scheme = SplittingScheme::from_name(name, source);
      const auto tokens = operator_tokens(scheme, 0.1);
      auto reversed = tokens;
      std::reverse(reversed.begin(), reversed.end());
      CHECK(tokens == reversed);
    }
  }
}

TEST_CASE("second-order step layout") {
  const auto seq = m2_sequence(0.4, true);
  REQUIRE(seq.size() == 7);
  CHECK(seq[0].op == OperatorKind::kTransport2);
  CHECK(seq[0].dt == doctest::Approx(0.1));
  CHECK(seq[1].op == OperatorKind::kSource2);
  CHECK(seq[2].op == OperatorKind::kRelax2);
  CHECK(seq[3].dt == doctest::Approx(0.2));
  const auto back = m2_sequence(-0.4, false);
  CHECK(back[0].op == OperatorKind::kTransport2Reversed);
  CHECK(back[0].dt == doctest::Approx(0.1));
  CHECK(back[1].op == OperatorKind::kRelax2);
  CHECK(back[1].dt == doctest::Approx(-0.2));
}

TEST_CASE("scheme names round-trip") {
  for (const char* name : {"m1", "m2", "suzuki4", "kahanli6"}) {
    CHECK(SplittingScheme::from_name(name).name() == name);
  }
  CHECK(SplittingScheme::from_name("suzuki4").order() == 4);
  CHECK_THROWS_AS(SplittingScheme::from_name("rk4"), std::invalid_argument);
}

TEST_CASE("zero second-order step is the identity") {
  const Scenario s = init_smooth_1d();
  const auto model = build_model(s);
  const auto space = build_space(s, {6, 1}, 3);
  KineticState state = initial_state(*model, *space, s.initial, s.boundary);
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  for (Eigen::Index i = 0; i < state.size(); ++i) state.data()[i] += u(rng);
  for (double tau : {0.0, 0.01}) {
    StepContext ctx(model, space, tau);
    KineticState copy = state;
    step_m2(ctx, 0.0, copy);
    CHECK((copy - state).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("steps conserve mass up to boundary fluxes on a quiet state") {
  const Scenario s = init_smooth_1d();
  const auto model = build_model(s);
  const auto space = build_space(s, {8, 1}, 2);
  const MacroField rest = [](const Point&) { return (Vector(2) << 1.0, 0.0).finished(); };
  KineticState state = initial_state(*model, *space, rest, rest);
  StepContext ctx(model, space, 0.0);
  const KineticState before = state;
  advance(ctx, SplittingScheme::from_name("suzuki4"), 0.05, state);
  CHECK((state - before).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("threaded transport is bit-identical") {
  const Scenario s = init_mhd_vortex();
  const auto model = build_model(s);
  const auto space = build_space(s, {6, 6}, 1);
  KineticState a = initial_state(*model, *space, s.initial, s.boundary);
  KineticState b = a;
  StepOptions threaded;
  threaded.threads = 3;
  StepContext serial_ctx(model, space, 0.0);
  StepContext threaded_ctx(model, space, 0.0, threaded);
  const auto scheme = SplittingScheme::from_name("suzuki4");
  advance(serial_ctx, scheme, 0.1, a);
  advance(threaded_ctx, scheme, 0.1, b);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}
