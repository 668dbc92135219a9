#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pdg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// All kinetic degrees of freedom. Column i holds the transport field of
/// velocity i; row r is the dof (cell, node) with r = cell * nodes_per_cell + node.
using KineticState = Eigen::MatrixXd;

/// Point in physical space. Unused trailing coordinates are zero.
using Point = Eigen::Vector2d;

/// Raised when a transport dependency graph contains a cycle.
class CycleError : public std::runtime_error {
 public:
  explicit CycleError(std::vector<int> cycle);
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

/// Numerical failure inside a solver (singular block, Newton stall, pole).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pdg
