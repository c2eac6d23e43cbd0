#pragma once

#include <vector>

namespace qnet::detail {

/// Dinic max flow with integer capacities, reusable across runs: build the
/// arc set once, then solve() for several terminal pairs with reset_flow().
class DinicFlow {
public:
  void init(int node_count) {
    n_ = node_count;
    head_.assign(n_, -1);
    arcs_.clear();
    level_.assign(n_, -1);
    iter_.assign(n_, -1);
    queue_.assign(n_, 0);
  }

  /// Adds arc u->v with capacity cap and the reverse arc with rev_cap.
  void add_arc(int u, int v, int cap, int rev_cap = 0) {
    arcs_.push_back({v, head_[u], cap, cap});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({u, head_[v], rev_cap, rev_cap});
    head_[v] = static_cast<int>(arcs_.size()) - 1;
  }

  void reset_flow() {
    for (auto& a : arcs_) a.cap = a.cap0;
  }

  /// Max flow from s to t, stopping early once `limit` is reached.
  int solve(int s, int t, int limit = 1 << 30) {
    int flow = 0;
    while (flow < limit && bfs(s, t)) {
      for (int i = 0; i < n_; ++i) iter_[i] = head_[i];
      int f;
      while (flow < limit && (f = dfs(s, t, limit - flow)) > 0) flow += f;
    }
    return flow;
  }

private:
  struct Arc {
    int to;
    int next;
    int cap;
    int cap0;
  };

  bool bfs(int s, int t) {
    for (int i = 0; i < n_; ++i) level_[i] = -1;
    int qh = 0, qt = 0;
    queue_[qt++] = s;
    level_[s] = 0;
    while (qh < qt) {
      int u = queue_[qh++];
      for (int e = head_[u]; e != -1; e = arcs_[e].next) {
        if (arcs_[e].cap > 0 && level_[arcs_[e].to] < 0) {
          level_[arcs_[e].to] = level_[u] + 1;
          queue_[qt++] = arcs_[e].to;
        }
      }
    }
    return level_[t] >= 0;
  }

  int dfs(int u, int t, int up) {
    if (u == t) return up;
    for (int& e = iter_[u]; e != -1; e = arcs_[e].next) {
      Arc& a = arcs_[e];
      if (a.cap > 0 && level_[a.to] == level_[u] + 1) {
        int d = dfs(a.to, t, up < a.cap ? up : a.cap);
        if (d > 0) {
          a.cap -= d;
          arcs_[e ^ 1].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  int n_ = 0;
  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> iter_;
  std::vector<int> queue_;
};

}  // namespace qnet::detail
