#include "pdg/kinetic_model.hpp"

#include <array>
#include <cmath>

namespace pdg {

KineticModel::KineticModel(ModelKind kind, std::shared_ptr<const HyperbolicSystem> system,
                           double lambda, Matrix velocities, Matrix projection)
    : kind_(kind), system_(std::move(system)), lambda_(lambda),
      velocities_(std::move(velocities)), projection_(std::move(projection)) {
  if (!(lambda_ > 0)) throw std::invalid_argument("kinetic model: lambda must be positive");
  if (!system_) throw std::invalid_argument("kinetic model: null system");
}

// --- vectorial --------------------------------------------------------------

namespace {

Matrix vectorial_velocities(int m, int dim, double lambda) {
  Matrix v = Matrix::Zero(dim, 2 * dim * m);
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < dim; ++k) {
      v(k, VectorialModel::component(l, k, 0, dim)) = -lambda;
      v(k, VectorialModel::component(l, k, 1, dim)) = lambda;
    }
  }
  return v;
}

Matrix vectorial_projection(int m, int dim) {
  Matrix p = Matrix::Zero(m, 2 * dim * m);
  for (int l = 0; l < m; ++l) p.block(l, 2 * dim * l, 1, 2 * dim).setOnes();
  return p;
}

}  // namespace

VectorialModel::VectorialModel(std::shared_ptr<const HyperbolicSystem> system, double lambda)
    : KineticModel(ModelKind::kVectorial, system, lambda,
                   vectorial_velocities(system->num_fields(), system->dimension(), lambda),
                   vectorial_projection(system->num_fields(), system->dimension())) {}

Vector VectorialModel::equilibrium(const Vector& w) const {
  return equilibrium_vectorial(w, *system_, lambda_, dimension());
}

Matrix VectorialModel::equilibrium_jacobian(const Vector& w) const {
  const int m = num_fields();
  const int dim = dimension();
  Matrix jac = Matrix::Zero(num_velocities(), m);
  for (int k = 0; k < dim; ++k) {
    const Matrix dq = system_->flux_jacobian(w, k);
    for (int l = 0; l < m; ++l) {
      const int minus = component(l, k, 0, dim);
      const int plus = component(l, k, 1, dim);
      jac.row(minus) = -dq.row(l) / (2 * lambda_);
      jac.row(plus) = dq.row(l) / (2 * lambda_);
      jac(minus, l) += 1.0 / (2 * dim);
      jac(plus, l) += 1.0 / (2 * dim);
    }
  }
  return jac;
}

Vector equilibrium_vectorial(const Vector& w, const HyperbolicSystem& sys, double lambda, int dim) {
  if (!(lambda > 0)) throw std::invalid_argument("equilibrium_vectorial: lambda must be positive");
  const int m = static_cast<int>(w.size());
  Vector f(2 * dim * m);
  for (int k = 0; k < dim; ++k) {
    const Vector q = sys.flux(w, k);
    for (int l = 0; l < m; ++l) {
      const double base = w[l] / (2 * dim);
      const double shift = q[l] / (2 * lambda);
      f[VectorialModel::component(l, k, 0, dim)] = base - shift;
      f[VectorialModel::component(l, k, 1, dim)] = base + shift;
    }
  }
  return f;
}

// --- D1Q3 ---------------------------------------------------------------------

D1Q3Model::D1Q3Model(double sound_speed, double lambda)
    : KineticModel(ModelKind::kD1Q3, std::make_shared<IsothermalEuler>(1, sound_speed), lambda,
                   (Matrix(1, 3) << -lambda, 0, lambda).finished(),
                   (Matrix(2, 3) << 1, 1, 1, -lambda, 0, lambda).finished()),
      c_(sound_speed) {}

Vector equilibrium_d1q3(const Vector& w, double c, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("equilibrium_d1q3: lambda must be positive");
  if (!(w[0] > 0)) throw std::domain_error("equilibrium_d1q3: nonpositive density");
  const double rho = w[0];
  const double mom = w[1];
  const double outer = (mom * mom / rho + c * c * rho) / (lambda * lambda);
  Vector f(3);
  f << 0.5 * (outer - mom / lambda), rho - outer, 0.5 * (outer + mom / lambda);
  return f;
}

Vector D1Q3Model::equilibrium(const Vector& w) const { return equilibrium_d1q3(w, c_, lambda_); }

Matrix D1Q3Model::equilibrium_jacobian(const Vector& w) const {
  const double u = w[1] / w[0];
  const double l2 = lambda_ * lambda_;
  const double ds_drho = (c_ * c_ - u * u) / l2;
  const double ds_dm = 2 * u / l2;
  Matrix jac(3, 2);
  jac << 0.5 * ds_drho, 0.5 * (ds_dm - 1 / lambda_),
      1 - ds_drho, -ds_dm,
      0.5 * ds_drho, 0.5 * (ds_dm + 1 / lambda_);
  return jac;
}

// --- D2Q9 ---------------------------------------------------------------------

namespace {

Matrix d2q9_velocities(double lambda) {
  Matrix v(2, 9);
  v << 0, 1, 0, -1, 0, 1, -1, -1, 1,
       0, 0, 1, 0, -1, 1, 1, -1, -1;
  return lambda * v;
}

Matrix d2q9_projection(double lambda) {
  Matrix p(3, 9);
  p.row(0).setOnes();
  p.bottomRows(2) = d2q9_velocities(lambda);
  return p;
}

}  // namespace

const std::array<double, 9>& D2Q9Model::weights() {
  static const std::array<double, 9> w = {4.0 / 9,  1.0 / 9,  1.0 / 9,  1.0 / 9, 1.0 / 9,
                                          1.0 / 36, 1.0 / 36, 1.0 / 36, 1.0 / 36};
  return w;
}

D2Q9Model::D2Q9Model(double sound_speed, double lambda)
    : KineticModel(ModelKind::kD2Q9, std::make_shared<IsothermalEuler>(2, sound_speed), lambda,
                   d2q9_velocities(lambda), d2q9_projection(lambda)),
      c_(sound_speed) {}

Vector equilibrium_d2q9(const Vector& w, double c, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("equilibrium_d2q9: lambda must be positive");
  if (!(w[0] > 0)) throw std::domain_error("equilibrium_d2q9: nonpositive density");
  const Matrix vel = d2q9_velocities(lambda);
  const auto& omega = D2Q9Model::weights();
  const double theta = lambda * lambda / 3;
  const double rho = w[0];
  const Eigen::Vector2d u(w[1] / rho, w[2] / rho);
  const double u2 = u.squaredNorm();
  const double pressure_fix = (c * c - theta) / (2 * theta * theta);
  Vector f(9);
  for (int i = 0; i < 9; ++i) {
    const Eigen::Vector2d v = vel.col(i);
    const double vu = v.dot(u);
    f[i] = omega[i] * rho *
           (1 + vu / theta + (vu * vu - theta * u2) / (2 * theta * theta) +
            pressure_fix * (v.squaredNorm() - 2 * theta));
  }
  return f;
}

Vector D2Q9Model::equilibrium(const Vector& w) const { return equilibrium_d2q9(w, c_, lambda_); }

Matrix D2Q9Model::equilibrium_jacobian(const Vector& w) const {
  const auto& omega = weights();
  const double theta = lambda_ * lambda_ / 3;
  const double rho = w[0];
  const Eigen::Vector2d u(w[1] / rho, w[2] / rho);
  const double pressure_fix = (c_ * c_ - theta) / (2 * theta * theta);
  Matrix jac(9, 3);
  for (int i = 0; i < 9; ++i) {
    const Eigen::Vector2d v = velocities_.col(i);
    const double vu = v.dot(u);
    jac(i, 0) = omega[i] * (1 - vu * vu / (2 * theta * theta) + u.squaredNorm() / (2 * theta) +
                            pressure_fix * (v.squaredNorm() - 2 * theta));
    const Eigen::Vector2d dm = v / theta + vu * v / (theta * theta) - u / theta;
    jac(i, 1) = omega[i] * dm[0];
    jac(i, 2) = omega[i] * dm[1];
  }
  return jac;
}

// --- catalog ------------------------------------------------------------------

std::vector<std::string> model_ids() {
  return {"vectorial-euler-1d", "d1q3", "d2q9", "vectorial-mhd-2d", "vectorial-euler-2d"};
}

std::shared_ptr<const KineticModel> make_model(const std::string& id, const ModelParams& params) {
  const double c = params.sound_speed;
  auto pick = [&](double fallback) { return params.lambda > 0 ? params.lambda : fallback; };
  if (id == "vectorial-euler-1d") {
    auto sys = std::make_shared<IsothermalEuler>(1, c, params.gravity);
    return std::make_shared<VectorialModel>(sys, pick(2.0));
  }
  if (id == "vectorial-euler-2d") {
    auto sys = std::make_shared<IsothermalEuler>(2, c, params.gravity);
    return std::make_shared<VectorialModel>(sys, pick(2.0));
  }
  if (id == "d1q3") {
    if (params.gravity.size() != 0) throw std::invalid_argument("d1q3: gravity source not supported");
    return std::make_shared<D1Q3Model>(c, pick(std::sqrt(3.0) * c));
  }
  if (id == "d2q9") {
    if (params.gravity.size() != 0) throw std::invalid_argument("d2q9: gravity source not supported");
    return std::make_shared<D2Q9Model>(c, pick(std::sqrt(3.0) * c));
  }
  if (id == "vectorial-mhd-2d") {
    auto sys = std::make_shared<IdealMhd2D>(params.gamma);
    return std::make_shared<VectorialModel>(sys, pick(4.0));
  }
  throw std::invalid_argument("unknown model id: " + id);
}

// --- diagnostics ----------------------------------------------------------------

Vector project_macro(const KineticModel& model, const Vector& f) {
  if (f.size() != model.num_velocities()) {
    throw std::invalid_argument("project_macro: expected " + std::to_string(model.num_velocities()) +
                                " components, got " + std::to_string(f.size()));
  }
  return model.projection() * f;
}

Vector kinetic_source(const KineticModel& model, const Vector& f) {
  const Vector w = project_macro(model, f);
  return model.equilibrium_jacobian(w) * model.system().source(w);
}

Matrix diffusion_tensor(const KineticModel& model, const Vector& w, int k, int j) {
  const auto& vel = model.velocities();
  const Vector vkvj = vel.row(k).cwiseProduct(vel.row(j)).transpose();
  const Matrix kinetic = model.projection() * vkvj.asDiagonal() * model.equilibrium_jacobian(w);
  const auto& sys = model.system();
  return kinetic - sys.flux_jacobian(w, k) * sys.flux_jacobian(w, j);
}

Matrix entropy_dissipation_tensor(const KineticModel& model, const Vector& w, int k, int j) {
  const auto hess = model.system().entropy_hessian(w);
  if (!hess) throw std::domain_error("entropy_dissipation_tensor: system has no entropy");
  return *hess * diffusion_tensor(model, w, k, j);
}

bool entropy_dissipative(const KineticModel& model, const Vector& w) {
  const int m = model.num_fields();
  const int dim = model.dimension();
  Matrix block(m * dim, m * dim);
  for (int k = 0; k < dim; ++k) {
    for (int j = 0; j < dim; ++j) block.block(k * m, j * m, m, m) = entropy_dissipation_tensor(model, w, k, j);
  }
  const Matrix sym = 0.5 * (block + block.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -1e-12;
}

bool subcharacteristic_check(std::shared_ptr<const HyperbolicSystem> sys, const Vector& w,
                             double lambda) {
  VectorialModel model(std::move(sys), lambda);
  return entropy_dissipative(model, w);
}

}  // namespace pdg
