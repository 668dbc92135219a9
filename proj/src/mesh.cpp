#include "pdg/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace pdg {

CartesianMesh::CartesianMesh(int dimension, std::array<int, 2> cells, Point lower, Point upper,
                             std::array<bool, 2> periodic)
    : dim_(dimension), cells_(cells), lower_(lower), upper_(upper), periodic_(periodic) {
  if (dim_ != 1 && dim_ != 2) throw std::invalid_argument("CartesianMesh: dimension must be 1 or 2");
  if (dim_ == 1) {
    cells_[1] = 1;
    periodic_[1] = false;
    lower_[1] = 0;
    upper_[1] = 1;
  }
  for (int k = 0; k < dim_; ++k) {
    if (cells_[k] < 1) throw std::invalid_argument("CartesianMesh: cell counts must be >= 1");
    if (!(upper_[k] > lower_[k])) throw std::invalid_argument("CartesianMesh: empty bounding box");
    if (periodic_[k] && cells_[k] < 2) {
      throw std::invalid_argument("CartesianMesh: periodic axis needs at least 2 cells");
    }
  }
  size_ = Point::Ones();
  for (int k = 0; k < dim_; ++k) size_[k] = (upper_[k] - lower_[k]) / cells_[k];
  num_real_ = cells_[0] * cells_[1];

  ghost_of_face_.assign(static_cast<size_t>(num_real_) * 2 * dim_, -1);
  for (int axis = 0; axis < dim_; ++axis) {
    if (periodic_[axis]) continue;
    const int other = 1 - axis;
    const int span = dim_ == 2 ? cells_[other] : 1;
    for (int side = 0; side < 2; ++side) {
      for (int t = 0; t < span; ++t) {
        std::array<int, 2> idx{};
        idx[axis] = side == 0 ? 0 : cells_[axis] - 1;
        idx[other] = t;
        const int real = cell_id(idx[0], idx[1]);
        const int gid = num_real_ + static_cast<int>(ghosts_.size());
        ghosts_.push_back({axis, side, real});
        ghost_of_face_[static_cast<size_t>(real) * 2 * dim_ + 2 * axis + side] = gid;
      }
    }
  }
}

int CartesianMesh::neighbor(int cell, int face) const {
  const int axis = face / 2;
  const int side = face % 2;
  if (is_ghost(cell)) {
    const auto& g = ghost(cell);
    // the inner face of a fictitious cell points back into the domain
    return (axis == g.axis && side == 1 - g.side) ? g.real_cell : -1;
  }
  const int gid = ghost_of_face_[static_cast<size_t>(cell) * 2 * dim_ + face];
  if (gid >= 0) return gid;
  auto idx = cell_index(cell);
  const int n = cells_[axis];
  idx[axis] = (idx[axis] + (side == 0 ? n - 1 : 1)) % n;
  return cell_id(idx[0], idx[1]);
}

Point CartesianMesh::cell_lower(int cell) const {
  Point x = lower_;
  if (!is_ghost(cell)) {
    const auto idx = cell_index(cell);
    for (int k = 0; k < dim_; ++k) x[k] += idx[k] * size_[k];
    return x;
  }
  const auto& g = ghost(cell);
  x = cell_lower(g.real_cell);
  x[g.axis] += g.side == 0 ? -size_[g.axis] : size_[g.axis];
  return x;
}

int CartesianMesh::locate(const Point& x) const {
  std::array<int, 2> idx{0, 0};
  for (int k = 0; k < dim_; ++k) {
    const int i = static_cast<int>(std::floor((x[k] - lower_[k]) / size_[k]));
    idx[k] = std::clamp(i, 0, cells_[k] - 1);
  }
  return cell_id(idx[0], idx[1]);
}

// ---------------------------------------------------------------------------

DGSpace::DGSpace(CartesianMesh mesh, int degree)
    : mesh_(std::move(mesh)), quad_(gauss_lobatto<double>(degree)) {
  nodes_per_cell_ = mesh_.dimension() == 1 ? quad_.size() : quad_.size() * quad_.size();
}

int DGSpace::mirror_node(int node, int axis) const {
  int idx[2] = {node_axis_index(node, 0), dimension() == 2 ? node_axis_index(node, 1) : 0};
  idx[axis] = quad_.degree - idx[axis];
  return node_from_axes(idx[0], idx[1]);
}

Point DGSpace::node_position(int cell, int node) const {
  Point x = mesh_.cell_lower(cell);
  for (int k = 0; k < dimension(); ++k) {
    const double xi = quad_.nodes[node_axis_index(node, k)];
    x[k] += 0.5 * (xi + 1) * mesh_.cell_size(k);
  }
  return x;
}

double DGSpace::jacobian_determinant() const {
  double det = 1;
  for (int k = 0; k < dimension(); ++k) det *= 0.5 * mesh_.cell_size(k);
  return det;
}

double DGSpace::node_weight(int node) const {
  double w = jacobian_determinant();
  for (int k = 0; k < dimension(); ++k) w *= quad_.weights[node_axis_index(node, k)];
  return w;
}

double DGSpace::min_node_distance() const {
  double h = mesh_.cell_size(0);
  for (int k = 1; k < dimension(); ++k) h = std::min(h, mesh_.cell_size(k));
  return 0.5 * h * min_node_spacing(quad_);
}

Vector DGSpace::basis_at(int cell, const Point& x) const {
  const Point lo = mesh_.cell_lower(cell);
  Vector per_axis[2];
  for (int k = 0; k < dimension(); ++k) {
    const double xi = 2 * (x[k] - lo[k]) / mesh_.cell_size(k) - 1;
    per_axis[k] = quad_.basis_at(xi);
  }
  if (dimension() == 1) return per_axis[0];
  Vector phi(nodes_per_cell_);
  for (int i = 0; i < nodes_per_cell_; ++i) {
    phi[i] = per_axis[0][node_axis_index(i, 0)] * per_axis[1][node_axis_index(i, 1)];
  }
  return phi;
}

}  // namespace pdg
