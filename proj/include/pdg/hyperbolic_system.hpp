#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdg/types.hpp"

namespace pdg {

/// Macroscopic system dw/dt + sum_k d_k q^k(w) = s(w).
class HyperbolicSystem {
 public:
  virtual ~HyperbolicSystem() = default;

  virtual int num_fields() const = 0;
  virtual int dimension() const = 0;
  virtual std::vector<std::string> field_names() const = 0;

  /// Flux q^k(w) along axis k.
  virtual Vector flux(const Vector& w, int k) const = 0;

  /// Jacobian of q^k. Central finite differences unless overridden.
  virtual Matrix flux_jacobian(const Vector& w, int k) const;

  virtual bool has_source() const { return false; }
  virtual Vector source(const Vector& w) const { return Vector::Zero(w.size()); }

  /// Hessian of a convex entropy, when the system provides one.
  virtual std::optional<Matrix> entropy_hessian(const Vector& /*w*/) const { return std::nullopt; }

  /// Whether w lies in the physical state space.
  virtual bool admissible(const Vector& w) const { return w.allFinite(); }
};

/// Central finite-difference Jacobian of an R^m -> R^n map,
/// step 1e-6 * max(1, |w_j|) per column.
Matrix finite_difference_jacobian(const std::function<Vector(const Vector&)>& map,
                                  const Vector& w);

/// Isothermal Euler in one or two dimensions, w = (rho, rho u [, rho v]),
/// optionally with a constant gravity source s = (0, rho g).
class IsothermalEuler : public HyperbolicSystem {
 public:
  IsothermalEuler(int dimension, double sound_speed, Vector gravity = Vector());

  int num_fields() const override { return dim_ + 1; }
  int dimension() const override { return dim_; }
  std::vector<std::string> field_names() const override;
  Vector flux(const Vector& w, int k) const override;
  Matrix flux_jacobian(const Vector& w, int k) const override;
  bool has_source() const override { return has_gravity_; }
  Vector source(const Vector& w) const override;
  std::optional<Matrix> entropy_hessian(const Vector& w) const override;
  bool admissible(const Vector& w) const override;

  double sound_speed() const { return c_; }

 private:
  int dim_;
  double c_;
  Vector gravity_;
  bool has_gravity_ = false;
};

/// Two-dimensional ideal MHD, w = (rho, rho ux, rho uy, Q, Bx, By),
/// p = (gamma - 1)(Q - rho |u|^2 / 2 - |B|^2 / 2).
class IdealMhd2D : public HyperbolicSystem {
 public:
  explicit IdealMhd2D(double gamma = 5.0 / 3.0) : gamma_(gamma) {}

  int num_fields() const override { return 6; }
  int dimension() const override { return 2; }
  std::vector<std::string> field_names() const override;
  Vector flux(const Vector& w, int k) const override;
  Matrix flux_jacobian(const Vector& w, int k) const override;
  bool admissible(const Vector& w) const override;

  double gamma() const { return gamma_; }
  double pressure(const Vector& w) const;
  /// Conservative state from (rho, ux, uy, p, Bx, By).
  Vector conservative(const Vector& primitive) const;

 private:
  double gamma_;
};

/// System defined by callables; the flux Jacobian falls back to finite differences.
class GenericSystem : public HyperbolicSystem {
 public:
  using FluxFn = std::function<Vector(const Vector&, int)>;
  using SourceFn = std::function<Vector(const Vector&)>;

  GenericSystem(int num_fields, int dimension, FluxFn flux, SourceFn source = {},
                std::vector<std::string> names = {});

  int num_fields() const override { return m_; }
  int dimension() const override { return dim_; }
  std::vector<std::string> field_names() const override { return names_; }
  Vector flux(const Vector& w, int k) const override { return flux_(w, k); }
  bool has_source() const override { return static_cast<bool>(source_); }
  Vector source(const Vector& w) const override;

 private:
  int m_;
  int dim_;
  FluxFn flux_;
  SourceFn source_;
  std::vector<std::string> names_;
};

}  // namespace pdg
