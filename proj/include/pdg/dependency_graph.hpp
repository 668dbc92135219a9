#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pdg/mesh.hpp"
#include "pdg/types.hpp"

namespace pdg {

/// Upwind dependency graph of one transport velocity. Vertices are the real
/// cells followed by the fictitious cells; (L, R) is an edge when the normal
/// from L to R has a positive component along the velocity. Fictitious cells
/// only carry out-edges, towards the real cells they feed.
struct DependencyGraph {
  int num_vertices = 0;
  int num_real = 0;
  std::vector<std::pair<int, int>> edges;  // sorted, unique
  std::vector<std::vector<int>> successors;
  std::vector<std::vector<int>> predecessors;

  bool is_fictitious(int v) const { return v >= num_real; }
};

DependencyGraph build_dependency_graph(const CartesianMesh& mesh, const Vector& velocity);

/// Kahn ordering of the real cells with smallest-id tie-break, followed by the
/// fictitious cells in ascending id. Throws CycleError if the real cells do
/// not form a DAG.
std::vector<int> topological_order(const DependencyGraph& graph);

/// Longest-path depth of every real cell from the upwind sources. Cells of
/// equal depth have no mutual dependencies.
std::vector<int> topological_levels(const DependencyGraph& graph, const std::vector<int>& order);

/// Every edge leaving a real cell goes to a later position in the order.
/// Fictitious cells are frozen, so their out-edges carry no ordering constraint.
bool satisfies_edge_property(const DependencyGraph& graph, const std::vector<int>& order);

/// Graphviz rendering: "digraph G { L -> R; ... }", fictitious cells boxed.
std::string to_dot(const DependencyGraph& graph);

}  // namespace pdg
