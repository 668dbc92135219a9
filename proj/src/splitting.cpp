#include "pdg/splitting.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <thread>

namespace pdg {

// --- local operators ----------------------------------------------------------

Vector relax_r1(double dt, double tau, const KineticModel& model, const Vector& f) {
  const Vector feq = model.equilibrium(model.projection() * f);
  if (tau == 0) return feq;
  return (dt * feq + tau * f) / (dt + tau);
}

Vector relax_r2(double dt, double tau, const KineticModel& model, const Vector& f) {
  const Vector feq = model.equilibrium(model.projection() * f);
  if (tau == 0) return 2 * feq - f;
  const double denom = 2 * tau + dt;
  if (std::abs(denom) <= 1e-14 * std::max(tau, std::abs(dt))) {
    throw SolverError("relax_r2: step hits the pole 2 tau + dt = 0");
  }
  return ((2 * tau - dt) * f + 2 * dt * feq) / denom;
}

namespace {

// Solves residual(w) = 0 from the initial guess w0.
Vector damped_newton(const std::function<Vector(const Vector&)>& residual, Vector w,
                     const char* who) {
  constexpr int kMaxIterations = 50;
  constexpr double kTolerance = 1e-12;
  Vector r = residual(w);
  for (int it = 0; it <= kMaxIterations; ++it) {
    const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
    if (r.cwiseAbs().maxCoeff() <= kTolerance * scale) return w;
    if (it == kMaxIterations) break;
    const Matrix jac = finite_difference_jacobian(residual, w);
    const Vector delta = jac.partialPivLu().solve(r);
    double theta = 1;
    Vector trial = w - delta;
    Vector r_trial = residual(trial);
    while (!(r_trial.norm() < r.norm()) && theta > 1e-4) {
      theta *= 0.5;
      trial = w - theta * delta;
      r_trial = residual(trial);
    }
    if (!r_trial.allFinite()) break;
    w = trial;
    r = r_trial;
  }
  char msg[160];
  std::snprintf(msg, sizeof msg, "%s: Newton did not converge, residual %.3e", who,
                r.cwiseAbs().maxCoeff());
  throw SolverError(msg);
}

}  // namespace

Vector source_step_s1(double dt, const HyperbolicSystem& sys, const Vector& w) {
  if (dt == 0 || !sys.has_source()) return w;
  return damped_newton([&](const Vector& x) -> Vector { return x - w - dt * sys.source(x); },
                       w + dt * sys.source(w), "source_g1");
}

Vector source_step_s2(double dt, const HyperbolicSystem& sys, const Vector& w) {
  if (dt == 0 || !sys.has_source()) return w;
  return damped_newton(
      [&](const Vector& x) -> Vector { return x - w - dt * sys.source(0.5 * (w + x)); },
      w + dt * sys.source(w), "source_g2");
}

namespace {

template <typename MacroStep>
Vector shift_macroscopic(const KineticModel& model, const Vector& f, MacroStep&& macro_step) {
  const Vector w = model.projection() * f;
  const Vector w_new = macro_step(w);
  return model.equilibrium(w_new) + (f - model.equilibrium(w));
}

}  // namespace

Vector source_g1(double dt, const KineticModel& model, const Vector& f) {
  if (dt == 0 || !model.system().has_source()) return f;
  return shift_macroscopic(model, f, [&](const Vector& w) { return source_step_s1(dt, model.system(), w); });
}

Vector source_g2(double dt, const KineticModel& model, const Vector& f) {
  if (dt == 0 || !model.system().has_source()) return f;
  return shift_macroscopic(model, f, [&](const Vector& w) { return source_step_s2(dt, model.system(), w); });
}

// --- schemes ------------------------------------------------------------------------

std::vector<double> suzuki_coefficients() {
  const double cbrt4 = std::cbrt(4.0);
  const double outer = 1 / (4 - cbrt4);
  const double middle = -cbrt4 / (4 - cbrt4);
  return {outer, outer, middle, outer, outer};
}

std::vector<double> kahan_li_coefficients() {
  const double g0 = 0.392161444007314139275655330038;
  const double g1 = 0.332599136789359438604272125325;
  const double g2 = -0.7062461725576393598098453372227;
  const double g3 = 0.0822135962935508002304427053341;
  const double g4 = 0.798543990934829963398950353048;
  return {g0, g1, g2, g3, g4, g3, g2, g1, g0};
}

int SplittingScheme::order() const {
  switch (kind) {
    case SchemeKind::kM1: return 1;
    case SchemeKind::kM2: return 2;
    case SchemeKind::kSuzuki4: return 4;
    case SchemeKind::kKahanLi6: return 6;
  }
  return 0;
}

std::string SplittingScheme::name() const {
  switch (kind) {
    case SchemeKind::kM1: return "m1";
    case SchemeKind::kM2: return "m2";
    case SchemeKind::kSuzuki4: return "suzuki4";
    case SchemeKind::kKahanLi6: return "kahanli6";
  }
  return "";
}

SplittingScheme SplittingScheme::make(SchemeKind kind, bool include_source) {
  SplittingScheme s;
  s.kind = kind;
  s.include_source = include_source;
  if (kind == SchemeKind::kSuzuki4) s.gamma = suzuki_coefficients();
  if (kind == SchemeKind::kKahanLi6) s.gamma = kahan_li_coefficients();
  return s;
}

SplittingScheme SplittingScheme::from_name(const std::string& name, bool include_source) {
  static const std::map<std::string, SchemeKind> kinds = {
      {"m1", SchemeKind::kM1}, {"m2", SchemeKind::kM2},
      {"suzuki4", SchemeKind::kSuzuki4}, {"kahanli6", SchemeKind::kKahanLi6}};
  auto it = kinds.find(name);
  if (it == kinds.end()) throw std::invalid_argument("unknown scheme: " + name);
  return make(it->second, include_source);
}

std::vector<Substep> m2_sequence(double dt, bool include_source) {
  const bool backward = dt < 0;
  const OperatorKind transport = backward ? OperatorKind::kTransport2Reversed : OperatorKind::kTransport2;
  const double t = backward ? -dt : dt;
  std::vector<Substep> seq;
  seq.push_back({transport, t / 4});
  if (include_source) seq.push_back({OperatorKind::kSource2, dt / 2});
  seq.push_back({OperatorKind::kRelax2, dt / 2});
  seq.push_back({transport, t / 2});
  seq.push_back({OperatorKind::kRelax2, dt / 2});
  if (include_source) seq.push_back({OperatorKind::kSource2, dt / 2});
  seq.push_back({transport, t / 4});
  return seq;
}

std::vector<Substep> substep_sequence(const SplittingScheme& scheme, double dt) {
  if (scheme.kind == SchemeKind::kM1) {
    std::vector<Substep> seq{{OperatorKind::kTransport1, dt}, {OperatorKind::kRelax1, dt}};
    if (scheme.include_source) seq.push_back({OperatorKind::kSource1, dt});
    return seq;
  }
  std::vector<Substep> seq;
  for (double g : scheme.gamma) {
    auto part = m2_sequence(g * dt, scheme.include_source);
    seq.insert(seq.end(), part.begin(), part.end());
  }
  return seq;
}

std::string to_token(const Substep& s) {
  const char* name = "";
  switch (s.op) {
    case OperatorKind::kTransport1: name = "T1"; break;
    case OperatorKind::kTransport2: name = "T2"; break;
    case OperatorKind::kTransport2Reversed: name = "T2r"; break;
    case OperatorKind::kRelax1: name = "R1"; break;
    case OperatorKind::kRelax2: name = "R2"; break;
    case OperatorKind::kSource1: name = "G1"; break;
    case OperatorKind::kSource2: name = "G2"; break;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s(%.17g)", name, s.dt);
  return buf;
}

std::vector<std::string> operator_tokens(const SplittingScheme& scheme, double dt) {
  std::vector<std::string> tokens;
  for (const auto& s : substep_sequence(scheme, dt)) tokens.push_back(to_token(s));
  return tokens;
}

// --- stepping --------------------------------------------------------------------------

StepContext::StepContext(std::shared_ptr<const KineticModel> model, std::shared_ptr<const DGSpace> space,
                         double tau, StepOptions options)
    : model_(std::move(model)), space_(std::move(space)), tau_(tau), options_(options) {
  if (!(tau_ >= 0)) throw std::invalid_argument("StepContext: tau must be >= 0");
  if (model_->dimension() != space_->dimension()) {
    throw std::invalid_argument("StepContext: model and mesh dimensions differ");
  }
  std::vector<Vector> distinct;
  for (int i = 0; i < model_->num_velocities(); ++i) {
    const Vector v = model_->velocity(i);
    int found = -1;
    for (size_t j = 0; j < distinct.size(); ++j) {
      if (distinct[j] == v) found = static_cast<int>(j);
    }
    if (found < 0) {
      found = static_cast<int>(distinct.size());
      distinct.push_back(v);
      forward_.push_back(std::make_unique<TransportOperator>(space_, v, options_.factorization));
      backward_.push_back(std::make_unique<TransportOperator>(space_, -v, options_.factorization));
    }
    index_.push_back(found);
  }
}

namespace {

template <typename Fn>
void for_each_velocity(const StepContext& ctx, int count, Fn&& fn) {
  const int threads = std::min(ctx.options().threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < count; i += threads) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <typename Fn>
void for_each_real_node(const StepContext& ctx, KineticState& state, Fn&& fn) {
  const Eigen::Index rows = ctx.space().num_real_dofs();
  Vector f(state.cols());
  for (Eigen::Index r = 0; r < rows; ++r) {
    f = state.row(r).transpose();
    state.row(r) = fn(f).transpose();
  }
}

}  // namespace

void apply_substep(const StepContext& ctx, const Substep& step, KineticState& state) {
  const KineticModel& model = ctx.model();
  const int nv = model.num_velocities();
  switch (step.op) {
    case OperatorKind::kTransport1:
      for_each_velocity(ctx, nv, [&](int i) { state.col(i) = transport_t1(ctx.transport(i), step.dt, state.col(i)); });
      break;
    case OperatorKind::kTransport2:
      for_each_velocity(ctx, nv, [&](int i) { state.col(i) = transport_t2(ctx.transport(i), step.dt, state.col(i)); });
      break;
    case OperatorKind::kTransport2Reversed:
      for_each_velocity(ctx, nv, [&](int i) {
        state.col(i) = transport_t2_reversed(ctx.reversed_transport(i), step.dt, state.col(i));
      });
      break;
    case OperatorKind::kRelax1:
      for_each_real_node(ctx, state, [&](const Vector& f) { return relax_r1(step.dt, ctx.tau(), model, f); });
      break;
    case OperatorKind::kRelax2:
      for_each_real_node(ctx, state, [&](const Vector& f) { return relax_r2(step.dt, ctx.tau(), model, f); });
      break;
    case OperatorKind::kSource1:
      for_each_real_node(ctx, state, [&](const Vector& f) { return source_g1(step.dt, model, f); });
      break;
    case OperatorKind::kSource2:
      for_each_real_node(ctx, state, [&](const Vector& f) { return source_g2(step.dt, model, f); });
      break;
  }
}

void step_m1(const StepContext& ctx, double dt, KineticState& state, bool include_source) {
  if (!(dt > 0)) throw std::invalid_argument("step_m1: dt must be positive");
  advance(ctx, SplittingScheme::make(SchemeKind::kM1, include_source), dt, state);
}

void step_m2(const StepContext& ctx, double dt, KineticState& state, bool include_source) {
  for (const auto& s : m2_sequence(dt, include_source)) apply_substep(ctx, s, state);
}

void compose_palindromic(const StepContext& ctx, const SplittingScheme& scheme, double dt,
                         KineticState& state) {
  for (double g : scheme.gamma) step_m2(ctx, g * dt, state, scheme.include_source);
}

void advance(const StepContext& ctx, const SplittingScheme& scheme, double dt, KineticState& state) {
  for (const auto& s : substep_sequence(scheme, dt)) apply_substep(ctx, s, state);
}

}  // namespace pdg
