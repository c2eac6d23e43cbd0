#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qnet {

/// Raised on malformed input or violated preconditions.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

using Edge = std::pair<int, int>;

/// Simple undirected graph with dense 0-based vertex indices.
/// Edges are stored normalized (u < v) and sorted; adjacency lists are sorted
/// ascending. No loops, no parallel edges.
class Graph {
public:
  Graph(int vertex_count, std::vector<Edge> edges);

  /// Parses the edge-list text format: '#' lines are comments, one of them
  /// must be a header "# n=<N>"; every other line is "u v".
  static Graph parse_edge_list(const std::string& text);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
  bool has_edge(int u, int v) const;
  /// Index of edge (u,v) in edges(), or -1.
  int edge_index(int u, int v) const;

  bool is_connected() const;
  std::string to_edge_list() const;

private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

struct DegreeProfile {
  std::vector<int> degree_sequence;
  int delta_min = 0;
  int delta_max = 0;
};

DegreeProfile degree_profile(const Graph& g);

/// BFS distances from src; unreachable vertices get -1.
std::vector<int> bfs_distances(const Graph& g, int src);

/// Exact diameter by all-sources BFS. Throws on a disconnected graph.
int diameter(const Graph& g);

struct EdgeConnectivityResult {
  int value = 0;        ///< lambda(G); 0 when disconnected
  bool connected = true;
};

/// lambda(G) as the minimum over s-t max flows with unit edge capacities
/// (s fixed, all t != s). A disconnected graph reports {0, false}.
EdgeConnectivityResult edge_connectivity(const Graph& g);

/// kappa(G) via vertex-split max flow over non-adjacent pairs;
/// kappa(K_n) = n-1 by convention. Throws on a disconnected graph.
int vertex_connectivity(const Graph& g);

/// Maximum number of pairwise edge-disjoint u-v paths (unit-capacity flow).
int pair_edge_connectivity(const Graph& g, int u, int v);

struct PathBundle {
  int u = 0;
  int v = 0;
  std::vector<std::vector<int>> paths;  ///< each path as a vertex sequence u..v
  int max_length = 0;                   ///< cap used, or longest path found
};

/// Iteratively extracts a shortest u-v path (BFS expanding neighbors in
/// ascending index), deletes its edges and repeats until no path remains or
/// the next shortest path would exceed length_cap. The count is a lower
/// bound on pair_edge_connectivity(g, u, v).
PathBundle greedy_disjoint_paths(const Graph& g, int u, int v,
                                 std::optional<int> length_cap = std::nullopt);

/// floor(3|G| / (delta_min + 1)) - 1; an upper bound on the diameter of a
/// connected graph with delta_min >= 2.
int erdos_diameter_bound(const Graph& g);

/// True iff delta_min(G) >= floor(|G|/2); then lambda(G) = delta_min(G).
bool maximal_edge_connectivity_check(const Graph& g);

struct SubgraphResult {
  Graph graph;
  /// old vertex id -> new vertex id, -1 when the vertex was dropped.
  std::vector<int> vertex_map;
};

/// Removes the given edges; with delete_isolated, also removes vertices left
/// without any edge, re-indexing the rest densely.
SubgraphResult subgraph(const Graph& g, const std::vector<Edge>& delete_edges,
                        bool delete_isolated);

}  // namespace qnet
