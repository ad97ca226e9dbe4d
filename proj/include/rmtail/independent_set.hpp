#pragma once
// Exact maximum independent set by branch and bound.
//
// The graph is split into connected components; each component is solved as
// a maximum clique of its complement with greedy-coloring bounds (bitset
// formulation). Vertices are ordered by conflict degree with ties broken by
// vertex index, so results are deterministic.

#include <cstdint>
#include <vector>

namespace rmtail {

/// Undirected simple graph as adjacency lists over vertices 0..n-1.
struct Graph {
  explicit Graph(int vertex_count = 0) : adjacency(static_cast<std::size_t>(vertex_count)) {}

  int size() const { return static_cast<int>(adjacency.size()); }
  /// Adds u-v once; ignores self loops. Call finalize() before solving.
  void add_edge(int u, int v);
  /// Sort and deduplicate adjacency lists.
  void finalize();
  std::size_t edge_count() const;

  std::vector<std::vector<int>> adjacency;
};

struct IndependentSet {
  std::vector<int> vertices;  // sorted
  bool exact = true;          // false when the node budget ran out
  std::uint64_t nodes = 0;    // branch-and-bound nodes expanded
};

inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

IndependentSet max_independent_set(const Graph& graph, std::uint64_t node_budget = kDefaultNodeBudget);

/// Greedy minimum-degree independent set (a lower bound).
std::vector<int> greedy_independent_set(const Graph& graph);

bool is_independent(const Graph& graph, const std::vector<int>& vertices);

/// Connected components, each sorted, ordered by smallest vertex.
std::vector<std::vector<int>> connected_components(const Graph& graph);

}  // namespace rmtail
