#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pdg/hyperbolic_system.hpp"
#include "pdg/types.hpp"

namespace pdg {

enum class ModelKind { kVectorial, kD1Q3, kD2Q9 };

/// Discrete-velocity representation of a hyperbolic system: velocities V^k,
/// projection P and equilibrium map with P f_eq(w) = w and P V^k f_eq(w) = q^k(w).
class KineticModel {
 public:
  virtual ~KineticModel() = default;

  ModelKind kind() const { return kind_; }
  int dimension() const { return static_cast<int>(velocities_.rows()); }
  int num_velocities() const { return static_cast<int>(velocities_.cols()); }
  int num_fields() const { return static_cast<int>(projection_.rows()); }
  double lambda() const { return lambda_; }

  /// D x n_v matrix; column i is the velocity of component i.
  const Matrix& velocities() const { return velocities_; }
  Vector velocity(int i) const { return velocities_.col(i); }
  /// m x n_v projection onto macroscopic variables.
  const Matrix& projection() const { return projection_; }
  const HyperbolicSystem& system() const { return *system_; }
  std::shared_ptr<const HyperbolicSystem> system_ptr() const { return system_; }

  virtual Vector equilibrium(const Vector& w) const = 0;
  /// n_v x m Jacobian of the equilibrium map.
  virtual Matrix equilibrium_jacobian(const Vector& w) const = 0;

 protected:
  KineticModel(ModelKind kind, std::shared_ptr<const HyperbolicSystem> system, double lambda,
               Matrix velocities, Matrix projection);

  ModelKind kind_;
  std::shared_ptr<const HyperbolicSystem> system_;
  double lambda_;
  Matrix velocities_;
  Matrix projection_;
};

/// Vectorial model: for every field l and axis k two velocities -lambda e_k and
/// +lambda e_k. Component index is ((l * D) + k) * 2 + s with s = 0 for the
/// minus sign and s = 1 for the plus sign.
class VectorialModel : public KineticModel {
 public:
  VectorialModel(std::shared_ptr<const HyperbolicSystem> system, double lambda);

  static int component(int field, int axis, int sign, int dim) { return (field * dim + axis) * 2 + sign; }

  Vector equilibrium(const Vector& w) const override;
  Matrix equilibrium_jacobian(const Vector& w) const override;
};

/// D1Q3 lattice (-lambda, 0, lambda) for 1D isothermal Euler.
class D1Q3Model : public KineticModel {
 public:
  D1Q3Model(double sound_speed, double lambda);

  Vector equilibrium(const Vector& w) const override;
  Matrix equilibrium_jacobian(const Vector& w) const override;

 private:
  double c_;
};

/// D2Q9 lattice for 2D isothermal Euler. With lambda = sqrt(3) c the
/// equilibrium is the classical second-order Maxwellian expansion; other
/// lambda values add an isotropic pressure correction that keeps the
/// momentum flux consistent.
class D2Q9Model : public KineticModel {
 public:
  D2Q9Model(double sound_speed, double lambda);

  static const std::array<double, 9>& weights();

  Vector equilibrium(const Vector& w) const override;
  Matrix equilibrium_jacobian(const Vector& w) const override;

 private:
  double c_;
};

/// Free-function form of the vectorial equilibrium.
Vector equilibrium_vectorial(const Vector& w, const HyperbolicSystem& sys, double lambda, int dim);
Vector equilibrium_d1q3(const Vector& w, double c, double lambda);
Vector equilibrium_d2q9(const Vector& w, double c, double lambda);

struct ModelParams {
  double sound_speed = 0.6;
  double lambda = 0;  // 0 selects the model default
  double gamma = 5.0 / 3.0;
  Vector gravity;     // empty: no source
};

/// Catalog ids: vectorial-euler-1d, d1q3, d2q9, vectorial-mhd-2d, vectorial-euler-2d.
std::shared_ptr<const KineticModel> make_model(const std::string& id, const ModelParams& params);
std::vector<std::string> model_ids();

// --- diagnostics ----------------------------------------------------------

Vector project_macro(const KineticModel& model, const Vector& f);

/// g(f) = grad_w f_eq(P f) s(P f).
Vector kinetic_source(const KineticModel& model, const Vector& f);

/// D^{kj} = P V^k V^j grad_w f_eq - grad_w q^k grad_w q^j.
Matrix diffusion_tensor(const KineticModel& model, const Vector& w, int k, int j);

/// sigma_{kj} = Hess(eta) D^{kj}. Throws std::domain_error without an entropy.
Matrix entropy_dissipation_tensor(const KineticModel& model, const Vector& w, int k, int j);

/// True iff the symmetric part of the block tensor [sigma_{kj}] is positive
/// semi-definite (smallest eigenvalue >= -1e-12).
bool entropy_dissipative(const KineticModel& model, const Vector& w);

/// Entropy-dissipation test for the vectorial model of sys with scale lambda.
bool subcharacteristic_check(std::shared_ptr<const HyperbolicSystem> sys, const Vector& w,
                             double lambda);

}  // namespace pdg
