#include "pdg/hyperbolic_system.hpp"

#include <cmath>

namespace pdg {

CycleError::CycleError(std::vector<int> cycle)
    : std::runtime_error([&] {
        std::string msg = "dependency graph has a cycle:";
        for (int c : cycle) msg += " " + std::to_string(c);
        return msg;
      }()),
      cycle_(std::move(cycle)) {}

Matrix finite_difference_jacobian(const std::function<Vector(const Vector&)>& map,
                                  const Vector& w) {
  const Vector f0 = map(w);
  Matrix jac(f0.size(), w.size());
  Vector wp = w;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(w[j]));
    wp[j] = w[j] + h;
    const Vector fp = map(wp);
    wp[j] = w[j] - h;
    const Vector fm = map(wp);
    wp[j] = w[j];
    jac.col(j) = (fp - fm) / (2 * h);
  }
  return jac;
}

Matrix HyperbolicSystem::flux_jacobian(const Vector& w, int k) const {
  return finite_difference_jacobian([&](const Vector& x) { return flux(x, k); }, w);
}

// ---------------------------------------------------------------------------

IsothermalEuler::IsothermalEuler(int dimension, double sound_speed, Vector gravity)
    : dim_(dimension), c_(sound_speed), gravity_(std::move(gravity)) {
  if (dim_ != 1 && dim_ != 2) throw std::invalid_argument("IsothermalEuler: dimension must be 1 or 2");
  if (!(c_ > 0)) throw std::invalid_argument("IsothermalEuler: sound speed must be positive");
  if (gravity_.size() == 0) {
    gravity_ = Vector::Zero(dim_);
  } else if (gravity_.size() != dim_) {
    throw std::invalid_argument("IsothermalEuler: gravity has wrong dimension");
  } else {
    has_gravity_ = true;
  }
}

std::vector<std::string> IsothermalEuler::field_names() const {
  if (dim_ == 1) return {"rho", "rho_u"};
  return {"rho", "rho_ux", "rho_uy"};
}

Vector IsothermalEuler::flux(const Vector& w, int k) const {
  const double rho = w[0];
  const double uk = w[1 + k] / rho;
  Vector q(num_fields());
  q[0] = w[1 + k];
  for (int a = 0; a < dim_; ++a) q[1 + a] = w[1 + a] * uk;
  q[1 + k] += c_ * c_ * rho;
  return q;
}

Matrix IsothermalEuler::flux_jacobian(const Vector& w, int k) const {
  const int m = num_fields();
  const double rho = w[0];
  Matrix jac = Matrix::Zero(m, m);
  const double uk = w[1 + k] / rho;
  jac(0, 1 + k) = 1;
  for (int a = 0; a < dim_; ++a) {
    const double ua = w[1 + a] / rho;
    // q_{1+a} = m_a m_k / rho (+ c^2 rho if a == k)
    jac(1 + a, 0) = -ua * uk;
    jac(1 + a, 1 + a) += uk;
    jac(1 + a, 1 + k) += ua;
  }
  jac(1 + k, 0) += c_ * c_;
  return jac;
}

Vector IsothermalEuler::source(const Vector& w) const {
  Vector s = Vector::Zero(num_fields());
  if (has_gravity_) s.tail(dim_) = w[0] * gravity_;
  return s;
}

std::optional<Matrix> IsothermalEuler::entropy_hessian(const Vector& w) const {
  // eta = |m|^2 / (2 rho) + c^2 rho log(rho / rho0)
  const int m = num_fields();
  const double rho = w[0];
  Matrix h = Matrix::Zero(m, m);
  double u2 = 0;
  for (int a = 0; a < dim_; ++a) {
    const double ua = w[1 + a] / rho;
    u2 += ua * ua;
    h(0, 1 + a) = h(1 + a, 0) = -ua / rho;
    h(1 + a, 1 + a) = 1 / rho;
  }
  h(0, 0) = u2 / rho + c_ * c_ / rho;
  return h;
}

bool IsothermalEuler::admissible(const Vector& w) const {
  return w.size() == num_fields() && w.allFinite() && w[0] > 0;
}

// ---------------------------------------------------------------------------

std::vector<std::string> IdealMhd2D::field_names() const {
  return {"rho", "rho_ux", "rho_uy", "Q", "Bx", "By"};
}

double IdealMhd2D::pressure(const Vector& w) const {
  const double rho = w[0];
  const double ke = 0.5 * (w[1] * w[1] + w[2] * w[2]) / rho;
  const double me = 0.5 * (w[4] * w[4] + w[5] * w[5]);
  return (gamma_ - 1) * (w[3] - ke - me);
}

Vector IdealMhd2D::conservative(const Vector& prim) const {
  const double rho = prim[0], ux = prim[1], uy = prim[2], p = prim[3], bx = prim[4], by = prim[5];
  Vector w(6);
  w << rho, rho * ux, rho * uy,
      p / (gamma_ - 1) + 0.5 * rho * (ux * ux + uy * uy) + 0.5 * (bx * bx + by * by), bx, by;
  return w;
}

Vector IdealMhd2D::flux(const Vector& w, int k) const {
  const double rho = w[0];
  const Eigen::Vector2d u(w[1] / rho, w[2] / rho);
  const Eigen::Vector2d b(w[4], w[5]);
  const double p = pressure(w);
  const double b2 = b.squaredNorm();
  const double un = u[k];
  const double bn = b[k];
  Vector q(6);
  q[0] = rho * un;
  for (int a = 0; a < 2; ++a) q[1 + a] = rho * un * u[a] - bn * b[a];
  q[1 + k] += p + 0.5 * b2;
  q[3] = (w[3] + p + 0.5 * b2) * un - b.dot(u) * bn;
  for (int a = 0; a < 2; ++a) q[4 + a] = un * b[a] - bn * u[a];
  return q;
}

Matrix IdealMhd2D::flux_jacobian(const Vector& w, int k) const {
  // Chain rule through primitives v = (rho, ux, uy, p, Bx, By).
  const double rho = w[0];
  const Eigen::Vector2d u(w[1] / rho, w[2] / rho);
  const Eigen::Vector2d b(w[4], w[5]);
  const double p = pressure(w);
  const double g1 = gamma_ - 1;
  const double Q = w[3];

  Matrix dv = Matrix::Zero(6, 6);  // d prim / d cons
  dv(0, 0) = 1;
  for (int a = 0; a < 2; ++a) {
    dv(1 + a, 0) = -u[a] / rho;
    dv(1 + a, 1 + a) = 1 / rho;
  }
  dv(3, 0) = g1 * 0.5 * u.squaredNorm();
  dv(3, 1) = -g1 * u[0];
  dv(3, 2) = -g1 * u[1];
  dv(3, 3) = g1;
  dv(3, 4) = -g1 * b[0];
  dv(3, 5) = -g1 * b[1];
  dv(4, 4) = 1;
  dv(5, 5) = 1;

  Matrix dq = Matrix::Zero(6, 6);  // d flux / d prim
  const double un = u[k];
  const double bn = b[k];
  const double b2 = b.squaredNorm();
  // mass
  dq(0, 0) = un;
  dq(0, 1 + k) = rho;
  // momentum
  for (int a = 0; a < 2; ++a) {
    dq(1 + a, 0) = un * u[a];
    dq(1 + a, 1 + a) += rho * un;
    dq(1 + a, 1 + k) += rho * u[a];
    dq(1 + a, 4 + a) -= bn;
    dq(1 + a, 4 + k) -= b[a];
  }
  dq(1 + k, 3) += 1;
  dq(1 + k, 4) += b[0];
  dq(1 + k, 5) += b[1];
  // energy: (Q + p + b2/2) un - (b.u) bn with Q = p/g1 + rho|u|^2/2 + b2/2
  const double e_tot = Q + p + 0.5 * b2;
  dq(3, 0) = 0.5 * u.squaredNorm() * un;
  for (int a = 0; a < 2; ++a) {
    dq(3, 1 + a) = rho * u[a] * un - b[a] * bn;
    dq(3, 4 + a) = 2 * b[a] * un - u[a] * bn;
  }
  dq(3, 1 + k) += e_tot;
  dq(3, 4 + k) -= b.dot(u);
  dq(3, 3) = (1 / g1 + 1) * un;
  // induction
  for (int a = 0; a < 2; ++a) {
    dq(4 + a, 1 + k) += b[a];
    dq(4 + a, 4 + a) += un;
    dq(4 + a, 1 + a) -= bn;
    dq(4 + a, 4 + k) -= u[a];
  }
  return dq * dv;
}

bool IdealMhd2D::admissible(const Vector& w) const {
  return w.size() == 6 && w.allFinite() && w[0] > 0 && pressure(w) > 0;
}

// ---------------------------------------------------------------------------

GenericSystem::GenericSystem(int num_fields, int dimension, FluxFn flux, SourceFn source,
                             std::vector<std::string> names)
    : m_(num_fields), dim_(dimension), flux_(std::move(flux)), source_(std::move(source)),
      names_(std::move(names)) {
  if (names_.empty()) {
    for (int l = 0; l < m_; ++l) names_.push_back("w" + std::to_string(l));
  }
}

Vector GenericSystem::source(const Vector& w) const {
  return source_ ? source_(w) : Vector::Zero(w.size());
}

}  // namespace pdg
