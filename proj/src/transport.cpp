#include "pdg/transport.hpp"

#include <cmath>

namespace pdg {

TransportOperator::TransportOperator(std::shared_ptr<const DGSpace> space, Vector velocity,
                                     FactorizationMode mode)
    : space_(std::move(space)), velocity_(std::move(velocity)), mode_(mode) {
  const DGSpace& sp = *space_;
  const int dim = sp.dimension();
  if (velocity_.size() != dim) throw std::invalid_argument("TransportOperator: velocity dimension mismatch");
  const auto& quad = sp.quadrature();
  const int n1 = quad.size();
  const int nloc = sp.nodes_per_cell();
  const int d = quad.degree;

  block_ = Matrix::Zero(nloc, nloc);
  for (int axis = 0; axis < dim; ++axis) {
    const double vk = velocity_[axis];
    if (vk == 0) continue;
    const double scale = 2 * vk / sp.mesh().cell_size(axis);
    for (int i = 0; i < nloc; ++i) {
      const int a = sp.node_axis_index(i, axis);
      // volume term: (1/w_a) sum_b l_a'(x_b) w_b f_b along this axis
      for (int b = 0; b < n1; ++b) {
        int j = 0;
        if (dim == 1) {
          j = b;
        } else {
          j = axis == 0 ? sp.node_from_axes(b, sp.node_axis_index(i, 1))
                        : sp.node_from_axes(sp.node_axis_index(i, 0), b);
        }
        block_(i, j) += scale * quad.diff(a, b) * quad.weights[b] / quad.weights[a];
      }
    }
    // outflow face: high side when v > 0, low side when v < 0
    const int out_index = vk > 0 ? d : 0;
    const int in_index = d - out_index;
    const double coef = 2 * std::abs(vk) / sp.mesh().cell_size(axis);
    InflowFace inflow{2 * axis + (vk > 0 ? 0 : 1), coef / quad.weights[in_index], {}};
    for (int i = 0; i < nloc; ++i) {
      const int a = sp.node_axis_index(i, axis);
      if (a == out_index) block_(i, i) -= coef / quad.weights[out_index];
      if (a == in_index) inflow.nodes.emplace_back(i, sp.mirror_node(i, axis));
    }
    inflow_.push_back(std::move(inflow));
  }

  graph_ = build_dependency_graph(sp.mesh(), velocity_);
  try {
    order_ = topological_order(graph_);
    levels_ = topological_levels(graph_, order_);
  } catch (const CycleError& e) {
    cycle_ = e;
  }
}

const std::vector<int>& TransportOperator::order() const {
  if (cycle_) throw *cycle_;
  return order_;
}

const std::vector<int>& TransportOperator::levels() const {
  if (cycle_) throw *cycle_;
  return levels_;
}

void TransportOperator::add_inflow(int cell, double scale, ConstRef field, double* local) const {
  const DGSpace& sp = *space_;
  const int nloc = sp.nodes_per_cell();
  for (const auto& face : inflow_) {
    const int nb = sp.mesh().neighbor(cell, face.face);
    const double* upstream = field.data() + static_cast<Eigen::Index>(nb) * nloc;
    const double c = scale * face.coefficient;
    for (auto [node, mirror] : face.nodes) local[node] += c * upstream[mirror];
  }
}

void TransportOperator::apply(ConstRef in, Ref out) const {
  const DGSpace& sp = *space_;
  if (in.size() != sp.num_dofs() || out.size() != sp.num_dofs()) {
    throw std::invalid_argument("TransportOperator::apply: layout mismatch");
  }
  const int nloc = sp.nodes_per_cell();
  const int nreal = sp.mesh().num_real_cells();
  for (int cell = 0; cell < nreal; ++cell) {
    const Eigen::Index offset = static_cast<Eigen::Index>(cell) * nloc;
    out.segment(offset, nloc).noalias() = block_ * in.segment(offset, nloc);
    add_inflow(cell, 1.0, in, out.data() + offset);
  }
  out.tail(sp.num_dofs() - sp.num_real_dofs()).setZero();
}

Vector TransportOperator::apply(const Vector& in) const {
  Vector out(in.size());
  apply(in, out);
  return out;
}

Eigen::PartialPivLU<Matrix> TransportOperator::factorize(double alpha) const {
  const Matrix system = Matrix::Identity(block_.rows(), block_.cols()) - alpha * block_;
  Eigen::PartialPivLU<Matrix> lu(system);
  if (!(lu.rcond() > 1e-14)) {
    throw SolverError("solve_implicit: singular local block for alpha = " + std::to_string(alpha));
  }
  return lu;
}

void TransportOperator::solve_implicit(double alpha, ConstRef rhs, Ref out) const {
  const DGSpace& sp = *space_;
  if (!(alpha > 0)) throw std::invalid_argument("solve_implicit: alpha must be positive");
  if (rhs.size() != sp.num_dofs() || out.size() != sp.num_dofs()) {
    throw std::invalid_argument("solve_implicit: layout mismatch");
  }
  const auto& cells = order();

  std::shared_ptr<const Eigen::PartialPivLU<Matrix>> lu;
  if (mode_ == FactorizationMode::kCached) {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(alpha);
    if (it == cache_.end()) {
      it = cache_.emplace(alpha, std::make_shared<Eigen::PartialPivLU<Matrix>>(factorize(alpha))).first;
    }
    lu = it->second;
  } else {
    lu = std::make_shared<Eigen::PartialPivLU<Matrix>>(factorize(alpha));
  }

  const int nloc = sp.nodes_per_cell();
  const int nreal = sp.mesh().num_real_cells();
  const Eigen::Index ghost_dofs = sp.num_dofs() - sp.num_real_dofs();
  out.tail(ghost_dofs) = rhs.tail(ghost_dofs);

  Vector local(nloc);
  for (int cell : cells) {
    if (cell >= nreal) break;  // fictitious cells close the order
    const Eigen::Index offset = static_cast<Eigen::Index>(cell) * nloc;
    local = rhs.segment(offset, nloc);
    add_inflow(cell, alpha, out, local.data());
    out.segment(offset, nloc).noalias() = lu->solve(local);
  }
}

Vector TransportOperator::solve_implicit(double alpha, const Vector& rhs) const {
  Vector out(rhs.size());
  solve_implicit(alpha, rhs, out);
  return out;
}

TransportOperator TransportOperator::reversed() const {
  return TransportOperator(space_, -velocity_, mode_);
}

Vector transport_t1(const TransportOperator& op, double dt, const Vector& f) {
  if (dt == 0) return f;
  return op.solve_implicit(dt, f);
}

Vector transport_t2(const TransportOperator& op, double dt, const Vector& f) {
  if (dt == 0) return f;
  const Vector explicit_half = f + 0.5 * dt * op.apply(f);
  return op.solve_implicit(0.5 * dt, explicit_half);
}

Vector transport_t2_reversed(const TransportOperator& reversed_op, double dt, const Vector& f) {
  return transport_t2(reversed_op, dt, f);
}

}  // namespace pdg
