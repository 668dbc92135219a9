#pragma once

#include <array>
#include <vector>

#include "pdg/quadrature.hpp"
#include "pdg/types.hpp"

namespace pdg {

/// Uniform Cartesian mesh in one or two dimensions.
///
/// Real cells are numbered ix + nx * iy. Non-periodic axes get one layer of
/// fictitious cells holding frozen Dirichlet data, numbered after the real
/// cells: axis 0 low side (iy ascending), axis 0 high side, then axis 1 low
/// side (ix ascending) and axis 1 high side. Faces of a cell are indexed
/// 2 * axis + side with side 0 the low face.
class CartesianMesh {
 public:
  struct GhostInfo {
    int axis;
    int side;  // side of the domain the fictitious cell lies on
    int real_cell;
  };

  CartesianMesh(int dimension, std::array<int, 2> cells, Point lower, Point upper,
                std::array<bool, 2> periodic = {false, false});

  int dimension() const { return dim_; }
  int cells(int axis) const { return cells_[axis]; }
  int num_real_cells() const { return num_real_; }
  int num_ghost_cells() const { return static_cast<int>(ghosts_.size()); }
  int num_cells() const { return num_real_ + num_ghost_cells(); }
  int num_faces() const { return 2 * dim_; }
  bool periodic(int axis) const { return periodic_[axis]; }
  double cell_size(int axis) const { return size_[axis]; }
  Point lower() const { return lower_; }
  Point upper() const { return upper_; }

  bool is_ghost(int cell) const { return cell >= num_real_; }
  const GhostInfo& ghost(int cell) const { return ghosts_[cell - num_real_]; }
  int cell_id(int ix, int iy = 0) const { return ix + cells_[0] * iy; }
  std::array<int, 2> cell_index(int real_cell) const {
    return {real_cell % cells_[0], real_cell / cells_[0]};
  }

  /// Cell across the given face, or -1 (only for outer faces of ghost cells).
  int neighbor(int cell, int face) const;

  /// Lower corner of a real or fictitious cell.
  Point cell_lower(int cell) const;

  /// Real cell containing x (clamped to the domain).
  int locate(const Point& x) const;

 private:
  int dim_;
  std::array<int, 2> cells_;
  Point lower_;
  Point upper_;
  std::array<bool, 2> periodic_;
  Point size_;
  int num_real_;
  std::vector<GhostInfo> ghosts_;
  std::vector<int> ghost_of_face_;  // per (real cell, face) -> ghost id or -1
};

/// Nodal Gauss-Lobatto space of degree d on a Cartesian mesh. Node i of a
/// cell has per-axis indices (i % (d+1), i / (d+1)).
class DGSpace {
 public:
  DGSpace(CartesianMesh mesh, int degree);

  const CartesianMesh& mesh() const { return mesh_; }
  const GLQuadrature<double>& quadrature() const { return quad_; }
  int degree() const { return quad_.degree; }
  int dimension() const { return mesh_.dimension(); }
  int nodes_per_cell() const { return nodes_per_cell_; }
  int num_dofs() const { return mesh_.num_cells() * nodes_per_cell_; }
  int num_real_dofs() const { return mesh_.num_real_cells() * nodes_per_cell_; }

  int dof(int cell, int node) const { return cell * nodes_per_cell_ + node; }
  int node_axis_index(int node, int axis) const {
    return axis == 0 ? node % quad_.size() : node / quad_.size();
  }
  int node_from_axes(int i0, int i1) const { return i0 + quad_.size() * i1; }

  /// Node on the opposite face of the neighbour sharing the same position.
  int mirror_node(int node, int axis) const;

  Point node_position(int cell, int node) const;
  /// Reference weight times the cell Jacobian determinant.
  double node_weight(int node) const;
  double jacobian_determinant() const;

  /// Minimal physical distance between two Gauss-Lobatto nodes.
  double min_node_distance() const;

  /// Values of all local basis functions of a cell at x.
  Vector basis_at(int cell, const Point& x) const;

 private:
  CartesianMesh mesh_;
  GLQuadrature<double> quad_;
  int nodes_per_cell_;
};

}  // namespace pdg
