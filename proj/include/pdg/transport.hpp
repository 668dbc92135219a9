#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "pdg/dependency_graph.hpp"
#include "pdg/mesh.hpp"
#include "pdg/types.hpp"

namespace pdg {

enum class FactorizationMode {
  kPerSolve,  // factorize the local block at every solve
  kCached,    // keep one factorization per alpha
};

/// Upwind nodal DG discretization of df/dt + v . grad f = 0 for one constant
/// velocity, written as dF/dt = A F. Rows of fictitious cells are zero.
///
/// On a uniform affine mesh every real cell has the same diagonal block, so a
/// single local factorization serves the whole sweep.
class TransportOperator {
 public:
  using ConstRef = Eigen::Ref<const Vector>;
  using Ref = Eigen::Ref<Vector>;

  TransportOperator(std::shared_ptr<const DGSpace> space, Vector velocity,
                    FactorizationMode mode = FactorizationMode::kPerSolve);

  const DGSpace& space() const { return *space_; }
  const Vector& velocity() const { return velocity_; }
  const DependencyGraph& graph() const { return graph_; }
  bool acyclic() const { return !cycle_.has_value(); }
  /// Topological cell order. Throws CycleError for cyclic graphs.
  const std::vector<int>& order() const;
  /// Depth of each real cell in the graph (cells of one level are independent).
  const std::vector<int>& levels() const;

  /// Diagonal block coupling the nodes of one real cell.
  const Matrix& local_block() const { return block_; }

  /// out = A in.
  void apply(ConstRef in, Ref out) const;
  Vector apply(const Vector& in) const;

  /// Solves (Id - alpha A) out = rhs by a block sweep in topological order.
  void solve_implicit(double alpha, ConstRef rhs, Ref out) const;
  Vector solve_implicit(double alpha, const Vector& rhs) const;

  /// Operator for the opposite velocity, sharing the same space.
  TransportOperator reversed() const;

 private:
  struct InflowFace {
    int face;
    double coefficient;
    std::vector<std::pair<int, int>> nodes;  // (node, mirror node in neighbour)
  };

  Eigen::PartialPivLU<Matrix> factorize(double alpha) const;
  void add_inflow(int cell, double scale, ConstRef field, double* local) const;

  std::shared_ptr<const DGSpace> space_;
  Vector velocity_;
  FactorizationMode mode_;
  Matrix block_;
  std::vector<InflowFace> inflow_;
  DependencyGraph graph_;
  std::vector<int> order_;
  std::vector<int> levels_;
  std::optional<CycleError> cycle_;

  mutable std::mutex cache_mutex_;
  mutable std::map<double, std::shared_ptr<const Eigen::PartialPivLU<Matrix>>> cache_;
};

/// Backward Euler transport (Id - dt A)^{-1}.
Vector transport_t1(const TransportOperator& op, double dt, const Vector& f);
/// Crank-Nicolson transport (Id - dt/2 A)^{-1}(Id + dt/2 A): explicit half step, then implicit.
Vector transport_t2(const TransportOperator& op, double dt, const Vector& f);
/// Stable replacement of a negative Crank-Nicolson step of size -dt: the
/// Crank-Nicolson step dt of the opposite-velocity operator.
Vector transport_t2_reversed(const TransportOperator& reversed_op, double dt, const Vector& f);

}  // namespace pdg
