#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pdg/kinetic_model.hpp"
#include "pdg/mesh.hpp"
#include "pdg/transport.hpp"
#include "pdg/types.hpp"

namespace pdg {

// --- local operators on one kinetic vector ------------------------------------

/// Backward Euler relaxation: (f_eq(Pf) + (tau/dt) f) / (1 + tau/dt).
Vector relax_r1(double dt, double tau, const KineticModel& model, const Vector& f);

/// Crank-Nicolson relaxation ((2 tau - dt) f + 2 dt f_eq(Pf)) / (2 tau + dt);
/// for tau = 0 the step-independent involution 2 f_eq(Pf) - f.
/// Throws SolverError on the pole 2 tau + dt = 0.
Vector relax_r2(double dt, double tau, const KineticModel& model, const Vector& f);

/// Macroscopic source steps. S1: w' = w + dt s(w'); S2: w' = w + dt s((w + w') / 2).
/// Damped Newton with a finite-difference Jacobian, tolerance 1e-12, 50 iterations.
Vector source_step_s1(double dt, const HyperbolicSystem& sys, const Vector& w);
Vector source_step_s2(double dt, const HyperbolicSystem& sys, const Vector& w);

/// f -> f_eq(S(dt) P f) + (f - f_eq(P f)); only the macroscopic part moves.
Vector source_g1(double dt, const KineticModel& model, const Vector& f);
Vector source_g2(double dt, const KineticModel& model, const Vector& f);

// --- schemes ---------------------------------------------------------------------

enum class SchemeKind { kM1, kM2, kSuzuki4, kKahanLi6 };

/// Palindromic composition M2(gamma_0 dt) ... M2(gamma_s dt). M1 is the
/// first-order Lie splitting and has a single unit coefficient.
struct SplittingScheme {
  SchemeKind kind = SchemeKind::kM2;
  std::vector<double> gamma{1.0};
  bool include_source = false;

  int order() const;
  std::string name() const;

  static SplittingScheme make(SchemeKind kind, bool include_source = false);
  /// "m1" | "m2" | "suzuki4" | "kahanli6".
  static SplittingScheme from_name(const std::string& name, bool include_source = false);
};

std::vector<double> suzuki_coefficients();
std::vector<double> kahan_li_coefficients();

enum class OperatorKind {
  kTransport1,
  kTransport2,
  kTransport2Reversed,  // step taken with the opposite velocity, dt > 0
  kRelax1,
  kRelax2,
  kSource1,
  kSource2,
};

struct Substep {
  OperatorKind op;
  double dt;
};

/// Operators of one full step in application order (first applied first).
std::vector<Substep> substep_sequence(const SplittingScheme& scheme, double dt);
std::vector<Substep> m2_sequence(double dt, bool include_source);
std::string to_token(const Substep& s);
std::vector<std::string> operator_tokens(const SplittingScheme& scheme, double dt);

// --- stepping ----------------------------------------------------------------------

struct StepOptions {
  int threads = 0;  // 0 or 1: single-threaded baseline
  FactorizationMode factorization = FactorizationMode::kCached;
};

/// Everything a step needs: model, DG space, relaxation time and one
/// transport operator (plus its reversal) per distinct velocity.
class StepContext {
 public:
  StepContext(std::shared_ptr<const KineticModel> model, std::shared_ptr<const DGSpace> space,
              double tau, StepOptions options = {});

  const KineticModel& model() const { return *model_; }
  const DGSpace& space() const { return *space_; }
  double tau() const { return tau_; }
  const StepOptions& options() const { return options_; }

  const TransportOperator& transport(int velocity) const { return *forward_[index_[velocity]]; }
  const TransportOperator& reversed_transport(int velocity) const { return *backward_[index_[velocity]]; }

 private:
  std::shared_ptr<const KineticModel> model_;
  std::shared_ptr<const DGSpace> space_;
  double tau_;
  StepOptions options_;
  std::vector<int> index_;
  std::vector<std::unique_ptr<TransportOperator>> forward_;
  std::vector<std::unique_ptr<TransportOperator>> backward_;
};

void apply_substep(const StepContext& ctx, const Substep& step, KineticState& state);

/// Lie splitting R1(dt) T1(dt), with G1(dt) after the relaxation.
void step_m1(const StepContext& ctx, double dt, KineticState& state, bool include_source = false);
/// T2(dt/4) R2(dt/2) T2(dt/2) R2(dt/2) T2(dt/4); negative dt uses reversed transport.
void step_m2(const StepContext& ctx, double dt, KineticState& state, bool include_source = false);
void compose_palindromic(const StepContext& ctx, const SplittingScheme& scheme, double dt,
                         KineticState& state);
/// One full step of any scheme.
void advance(const StepContext& ctx, const SplittingScheme& scheme, double dt, KineticState& state);

}  // namespace pdg
