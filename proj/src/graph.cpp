#include "qnet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>

#include "flow.hpp"

namespace qnet {

Graph::Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
  if (n_ <= 0) throw Error("graph needs a positive vertex count");
  adj_.assign(n_, {});
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw Error("edge endpoint out of range: " + std::to_string(u) + " " +
                  std::to_string(v));
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw Error("duplicate edge");
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

Graph Graph::parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::vector<Edge> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '#') {
      size_t eq = line.find('=');
      size_t nk = line.find('n', i + 1);
      if (n < 0 && nk != std::string::npos && eq != std::string::npos && eq > nk) {
        std::string rest = line.substr(eq + 1);
        try {
          n = std::stoi(rest);
        } catch (...) {
          throw Error("bad header on line " + std::to_string(lineno));
        }
      }
      continue;
    }
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u >> v))
      throw Error("malformed edge line " + std::to_string(lineno) + ": '" + line + "'");
    std::string trailing;
    if (ls >> trailing)
      throw Error("malformed edge line " + std::to_string(lineno) + ": trailing '" +
                  trailing + "'");
    if (n < 0) throw Error("edge before the mandatory '# n=<N>' header");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (n < 0) throw Error("missing '# n=<N>' header");
  return Graph(n, std::move(edges));
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
  if (it == edges_.end() || *it != Edge{u, v}) return -1;
  return static_cast<int>(it - edges_.begin());
}

bool Graph::is_connected() const {
  auto dist = bfs_distances(*this, 0);
  return std::find(dist.begin(), dist.end(), -1) == dist.end();
}

std::string Graph::to_edge_list() const {
  std::ostringstream out;
  out << "# n=" << n_ << "\n";
  for (auto [u, v] : edges_) out << u << " " << v << "\n";
  return out.str();
}

DegreeProfile degree_profile(const Graph& g) {
  DegreeProfile p;
  p.degree_sequence.reserve(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) p.degree_sequence.push_back(g.degree(v));
  auto [lo, hi] = std::minmax_element(p.degree_sequence.begin(), p.degree_sequence.end());
  p.delta_min = *lo;
  p.delta_max = *hi;
  return p;
}

std::vector<int> bfs_distances(const Graph& g, int src) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<int> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

int diameter(const Graph& g) {
  int diam = 0;
  for (int s = 0; s < g.vertex_count(); ++s) {
    auto dist = bfs_distances(g, s);
    for (int d : dist) {
      if (d < 0) throw Error("diameter of a disconnected graph");
      diam = std::max(diam, d);
    }
  }
  return diam;
}

namespace {

void build_unit_edge_network(detail::DinicFlow& flow, const Graph& g) {
  flow.init(g.vertex_count());
  for (auto [u, v] : g.edges()) flow.add_arc(u, v, 1, 1);
}

}  // namespace

EdgeConnectivityResult edge_connectivity(const Graph& g) {
  if (!g.is_connected()) return {0, false};
  if (g.vertex_count() == 1) return {0, true};
  detail::DinicFlow flow;
  build_unit_edge_network(flow, g);
  int best = g.degree(0);
  for (int t = 1; t < g.vertex_count(); ++t) {
    flow.reset_flow();
    best = std::min(best, flow.solve(0, t, best));
  }
  return {best, true};
}

int pair_edge_connectivity(const Graph& g, int u, int v) {
  if (u == v) throw Error("pair_edge_connectivity needs distinct vertices");
  if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count())
    throw Error("vertex out of range");
  detail::DinicFlow flow;
  build_unit_edge_network(flow, g);
  return flow.solve(u, v);
}

int vertex_connectivity(const Graph& g) {
  const int n = g.vertex_count();
  if (!g.is_connected()) throw Error("vertex connectivity of a disconnected graph");
  if (n == 1) return 0;
  // Complete graph: no non-adjacent pair exists.
  if (g.edge_count() == n * (n - 1) / 2) return n - 1;

  // Vertex-split network: v_in = 2v, v_out = 2v+1.
  detail::DinicFlow flow;
  flow.init(2 * n);
  const int big = n + 1;
  for (int v = 0; v < n; ++v) flow.add_arc(2 * v, 2 * v + 1, 1);
  for (auto [u, v] : g.edges()) {
    flow.add_arc(2 * u + 1, 2 * v, big);
    flow.add_arc(2 * v + 1, 2 * u, big);
  }
  int best = n - 1;
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (g.has_edge(s, t)) continue;
      flow.reset_flow();
      best = std::min(best, flow.solve(2 * s + 1, 2 * t, best));
    }
  }
  return best;
}

PathBundle greedy_disjoint_paths(const Graph& g, int u, int v,
                                 std::optional<int> length_cap) {
  if (u == v) throw Error("greedy_disjoint_paths needs distinct endpoints");
  if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count())
    throw Error("vertex out of range");
  const int n = g.vertex_count();

  // Working adjacency as a flat matrix of alive edges.
  std::vector<char> alive(static_cast<size_t>(n) * n, 0);
  for (auto [a, b] : g.edges()) {
    alive[static_cast<size_t>(a) * n + b] = 1;
    alive[static_cast<size_t>(b) * n + a] = 1;
  }

  PathBundle bundle;
  bundle.u = u;
  bundle.v = v;
  std::vector<int> parent(n), dist(n), queue(n);
  while (true) {
    std::fill(dist.begin(), dist.end(), -1);
    int qh = 0, qt = 0;
    queue[qt++] = u;
    dist[u] = 0;
    parent[u] = -1;
    while (qh < qt && dist[v] < 0) {
      int a = queue[qh++];
      for (int b : g.neighbors(a)) {  // ascending index order
        if (alive[static_cast<size_t>(a) * n + b] && dist[b] < 0) {
          dist[b] = dist[a] + 1;
          parent[b] = a;
          queue[qt++] = b;
        }
      }
    }
    if (dist[v] < 0) break;
    if (length_cap && dist[v] > *length_cap) break;
    std::vector<int> path;
    for (int x = v; x != -1; x = parent[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      alive[static_cast<size_t>(path[i]) * n + path[i + 1]] = 0;
      alive[static_cast<size_t>(path[i + 1]) * n + path[i]] = 0;
    }
    bundle.max_length = std::max(bundle.max_length, dist[v]);
    bundle.paths.push_back(std::move(path));
  }
  if (length_cap) bundle.max_length = *length_cap;
  return bundle;
}

int erdos_diameter_bound(const Graph& g) {
  auto prof = degree_profile(g);
  if (prof.delta_min < 2) throw Error("diameter bound needs delta_min >= 2");
  return 3 * g.vertex_count() / (prof.delta_min + 1) - 1;
}

bool maximal_edge_connectivity_check(const Graph& g) {
  return degree_profile(g).delta_min >= g.vertex_count() / 2;
}

SubgraphResult subgraph(const Graph& g, const std::vector<Edge>& delete_edges,
                        bool delete_isolated) {
  std::vector<char> removed(g.edge_count(), 0);
  for (auto [u, v] : delete_edges) {
    int idx = g.edge_index(u, v);
    if (idx < 0)
      throw Error("unknown edge " + std::to_string(u) + " " + std::to_string(v));
    removed[idx] = 1;
  }
  std::vector<Edge> kept;
  for (int i = 0; i < g.edge_count(); ++i)
    if (!removed[i]) kept.push_back(g.edges()[i]);

  std::vector<int> vertex_map(g.vertex_count());
  int new_n = g.vertex_count();
  if (delete_isolated) {
    std::vector<int> deg(g.vertex_count(), 0);
    for (auto [u, v] : kept) {
      ++deg[u];
      ++deg[v];
    }
    new_n = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
      vertex_map[v] = deg[v] > 0 ? new_n++ : -1;
    if (new_n == 0) throw Error("subgraph would be empty");
    for (auto& [u, v] : kept) {
      u = vertex_map[u];
      v = vertex_map[v];
    }
  } else {
    for (int v = 0; v < g.vertex_count(); ++v) vertex_map[v] = v;
  }
  return {Graph(new_n, std::move(kept)), std::move(vertex_map)};
}

}  // namespace qnet
