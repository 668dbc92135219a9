#include "pdg/dependency_graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace pdg {

DependencyGraph build_dependency_graph(const CartesianMesh& mesh, const Vector& velocity) {
  DependencyGraph g;
  g.num_vertices = mesh.num_cells();
  g.num_real = mesh.num_real_cells();
  const int dim = mesh.dimension();
  auto outward = [&](int face) {
    const int axis = face / 2;
    return (face % 2 == 0 ? -1.0 : 1.0) * (axis < velocity.size() ? velocity[axis] : 0.0);
  };
  for (int cell = 0; cell < g.num_real; ++cell) {
    for (int face = 0; face < 2 * dim; ++face) {
      const int nb = mesh.neighbor(cell, face);
      if (nb < 0 || nb == cell) continue;
      const double vn = outward(face);
      if (mesh.is_ghost(nb)) {
        // fictitious cells are frozen: they only feed the real cells
        if (vn < 0) g.edges.emplace_back(nb, cell);
      } else if (vn > 0) {
        g.edges.emplace_back(cell, nb);
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  g.successors.assign(g.num_vertices, {});
  g.predecessors.assign(g.num_vertices, {});
  for (auto [from, to] : g.edges) {
    g.successors[from].push_back(to);
    g.predecessors[to].push_back(from);
  }
  return g;
}

std::vector<int> topological_order(const DependencyGraph& graph) {
  const int n = graph.num_real;
  std::vector<int> in_degree(n, 0);
  for (auto [from, to] : graph.edges) {
    if (from < n && to < n) ++in_degree[to];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n; ++v) {
    if (in_degree[v] == 0) ready.push(v);
  }
  std::vector<int> order;
  order.reserve(graph.num_vertices);
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int s : graph.successors[v]) {
      if (s < n && --in_degree[s] == 0) ready.push(s);
    }
  }
  if (static_cast<int>(order.size()) < n) {
    // Every leftover vertex keeps a leftover predecessor; walk back until a repeat.
    int v = 0;
    while (in_degree[v] == 0) ++v;
    std::vector<int> seen_at(n, -1);
    std::vector<int> walk;
    while (seen_at[v] < 0) {
      seen_at[v] = static_cast<int>(walk.size());
      walk.push_back(v);
      for (int p : graph.predecessors[v]) {
        if (p < n && in_degree[p] > 0) {
          v = p;
          break;
        }
      }
    }
    std::vector<int> cycle(walk.begin() + seen_at[v], walk.end());
    std::reverse(cycle.begin(), cycle.end());
    throw CycleError(std::move(cycle));
  }
  for (int v = n; v < graph.num_vertices; ++v) order.push_back(v);
  return order;
}

std::vector<int> topological_levels(const DependencyGraph& graph, const std::vector<int>& order) {
  std::vector<int> level(graph.num_real, 0);
  for (int v : order) {
    if (v >= graph.num_real) continue;
    for (int p : graph.predecessors[v]) {
      if (p < graph.num_real) level[v] = std::max(level[v], level[p] + 1);
    }
  }
  return level;
}

bool satisfies_edge_property(const DependencyGraph& graph, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != graph.num_vertices) return false;
  std::vector<int> position(graph.num_vertices, -1);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    if (order[i] < 0 || order[i] >= graph.num_vertices || position[order[i]] >= 0) return false;
    position[order[i]] = i;
  }
  return std::all_of(graph.edges.begin(), graph.edges.end(), [&](const auto& e) {
    return graph.is_fictitious(e.first) || position[e.first] < position[e.second];
  });
}

std::string to_dot(const DependencyGraph& graph) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (int v = graph.num_real; v < graph.num_vertices; ++v) out << "  " << v << " [shape=box];\n";
  for (auto [from, to] : graph.edges) out << "  " << from << " -> " << to << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace pdg
