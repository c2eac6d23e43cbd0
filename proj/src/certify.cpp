#include "qnet/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace qnet::certify {

namespace {

/// w(v) = max_{1<=k<=deg(v)} (d p/(1-p))^k (2^deg(v) - 1); the worst block
/// factor a recombined term at v can produce. Infinite at p = 1.
double worst_case_factor(int degree, int d, double p) {
  if (degree == 0) return 0.0;
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  const double r = d * p / (1.0 - p);
  const double scale = std::exp2(degree) - 1.0;
  return (r >= 1.0 ? std::pow(r, degree) : r) * scale;
}

}  // namespace

std::optional<BiseparabilityCertificate> bs_certificate(
    const Graph& g, const iso::IsotropicParams& params) {
  iso::validate(params);
  if (!g.is_connected()) throw Error("certificate needs a connected graph");

  if (params.p <= iso::separability_threshold(params.d) + 1e-15) {
    BiseparabilityCertificate cert;
    cert.kind = BiseparabilityCertificate::Kind::TrivialAllLinksSeparable;
    cert.params = params;
    return cert;
  }

  const int n = g.vertex_count();
  std::vector<double> w(n);
  for (int v = 0; v < n; ++v) w[v] = worst_case_factor(g.degree(v), params.d, params.p);

  // Candidates ascending by (w, index); the subset must be independent so the
  // recombination never over-consumes a partner term shared by two vertices.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return w[a] < w[b]; });
  std::vector<int> chosen;
  std::vector<char> blocked(n, 0);
  for (int v : order) {
    if (blocked[v]) continue;
    chosen.push_back(v);
    for (int nb : g.neighbors(v)) blocked[nb] = 1;
  }

  // Largest feasible prefix: the m-th smallest w must not exceed m.
  int best_m = 0;
  for (int m = static_cast<int>(chosen.size()); m >= 1; --m) {
    if (w[chosen[m - 1]] <= static_cast<double>(m)) {
      best_m = m;
      break;
    }
  }
  if (best_m == 0) return std::nullopt;

  BiseparabilityCertificate cert;
  cert.kind = BiseparabilityCertificate::Kind::DegreeConstruction;
  cert.params = params;
  cert.subset.assign(chosen.begin(), chosen.begin() + best_m);
  std::sort(cert.subset.begin(), cert.subset.end());
  for (int v : cert.subset) cert.per_vertex_margin[v] = best_m - w[v];
  return cert;
}

std::optional<GmeCertificate> gme_certificate(const Graph& g,
                                              const iso::IsotropicParams& params,
                                              const iso::ExponentModel& model,
                                              const CapPolicy& policy) {
  iso::validate(params);
  if (!g.is_connected() || g.vertex_count() < 2) return std::nullopt;
  if (params.p <= iso::separability_threshold(params.d)) return std::nullopt;

  const int n = g.vertex_count();
  const int diam = diameter(g);
  const int c_lo = std::max(1, diam + policy.lo_offset);
  const int c_hi = std::max(c_lo, diam + policy.hi_offset);

  GmeCertificate cert;
  cert.params = params;
  cert.cap = iso::bs_fidelity_cap(n);
  cert.exponent_model = model.name();

  double eps_sum = 0.0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      // One greedy run with the largest cap; shortest-path lengths only grow
      // as edges are deleted, so the cap-C extraction is a prefix of it.
      PathBundle bundle = greedy_disjoint_paths(g, u, v, c_hi);
      GmePairEntry entry;
      entry.u = u;
      entry.v = v;
      entry.epsilon = 1.0;
      entry.length_cap = c_lo;
      entry.path_count = 0;
      entry.delivered_visibility = iso::cascade_visibility(params.p, c_lo);
      for (int cap = c_lo; cap <= c_hi; ++cap) {
        int m = 0;
        for (const auto& path : bundle.paths)
          if (static_cast<int>(path.size()) - 1 <= cap) ++m;
        if (m == 0) continue;
        const double q = iso::cascade_visibility(params.p, cap);
        const double eps =
            1.0 - iso::distillation_fidelity_bound(m, {params.d, q}, model);
        if (eps < entry.epsilon) {
          entry.epsilon = eps;
          entry.length_cap = cap;
          entry.path_count = m;
          entry.delivered_visibility = q;
        }
      }
      eps_sum += entry.epsilon;
      cert.per_pair.push_back(entry);
    }
  }
  const double pair_count = static_cast<double>(n) * (n - 1) / 2.0;
  cert.average_fidelity_lower_bound = 1.0 - eps_sum / pair_count;
  if (cert.average_fidelity_lower_bound <= cert.cap) return std::nullopt;
  return cert;
}

ConflictReport certificate_conflict_check(const Graph& g,
                                          const iso::IsotropicParams& params,
                                          const iso::ExponentModel& model) {
  ConflictReport report;
  report.bs_present = bs_certificate(g, params).has_value();
  report.gme_present = gme_certificate(g, params, model).has_value();
  if (report.bs_present && report.gme_present)
    throw Error("biseparability and GME certificates fired together");
  return report;
}

double GridSpec::at(int i) const {
  if (steps == 0) return start;
  return start + (stop - start) * static_cast<double>(i) / steps;
}

GridSpec GridSpec::parse(const std::string& text) {
  double a, b, step;
  char c1, c2;
  std::istringstream in(text);
  if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':')
    throw Error("grid format is a:b:step");
  if (!(step > 0) || b < a) throw Error("grid needs a <= b and step > 0");
  GridSpec grid;
  grid.start = a;
  grid.stop = b;
  grid.steps = static_cast<int>(std::llround((b - a) / step));
  if (grid.steps < 0) throw Error("empty grid");
  return grid;
}

VisibilityBracket critical_visibility_bracket(const Graph& g, int d,
                                              const GridSpec& grid,
                                              const iso::ExponentModel& model) {
  VisibilityBracket bracket;
  bracket.p_lo = iso::separability_threshold(d);
  bracket.p_hi = 1.0;
  for (int i = 0; i < grid.points(); ++i) {
    const double p = grid.at(i);
    if (!(p >= 0.0 && p <= 1.0)) continue;
    iso::IsotropicParams params{d, p};
    if (bs_certificate(g, params)) bracket.p_lo = std::max(bracket.p_lo, p);
    if (p < bracket.p_hi && gme_certificate(g, params, model))
      bracket.p_hi = p;
  }
  return bracket;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::AGME: return "AGME";
    case Verdict::ABS: return "ABS";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

FamilyVerdict classify_family(const families::FamilySpec& spec, int d) {
  if (d < 2) throw Error("dimension must be >= 2");
  FamilyVerdict out;
  out.descriptors_used = families::descriptors(spec);
  const auto& desc = out.descriptors_used;
  const GrowthExpr order_linear = GrowthExpr::poly(Rational{1}, Rational{1});
  const GrowthExpr log_order = GrowthExpr::logarithmic();

  auto fire = [&](const char* rule, const char* statement, Verdict verdict) {
    out.rules_fired.push_back({rule, statement, verdict});
  };

  // R1: linear minimum-degree growth.
  if (compare_growth(desc.delta_min, order_linear) != GrowthRelation::little_o)
    fire("R1", "delta_min(G_n) in Omega(|G_n|) implies AGME", Verdict::AGME);
  // R2: linear edge-connectivity growth.
  if (desc.lambda &&
      compare_growth(*desc.lambda, order_linear) != GrowthRelation::little_o)
    fire("R2", "lambda(G_n) in Omega(|G_n|) implies AGME", Verdict::AGME);
  // R3: many short edge-disjoint paths between every pair.
  if (desc.path_hypothesis &&
      compare_growth(desc.path_hypothesis->path_count, log_order) ==
          GrowthRelation::little_omega)
    fire("R3",
         "omega(log|G_n|) edge-disjoint paths of bounded length between every "
         "pair imply AGME",
         Verdict::AGME);
  // R4: sub-logarithmic maximum degree.
  if (compare_growth(desc.delta_max, log_order) == GrowthRelation::little_o)
    fire("R4", "delta_max(G_n) in o(log|G_n|) implies ABS", Verdict::ABS);
  // R5: a growing vertex subset with sub-logarithmic degrees.
  if (desc.subset && desc.subset->subset_size.tends_to_infinity()) {
    auto log_size = log_of(desc.subset->subset_size);
    GrowthExpr bound = log_size ? *log_size : log_order;
    if (compare_growth(desc.subset->subset_max_degree, bound) ==
        GrowthRelation::little_o)
      fire("R5",
           "a vertex subset V' with |V'| -> infinity and max degree in "
           "o(log|V'|) implies ABS",
           Verdict::ABS);
  }
  // R6: family-specific results.
  switch (spec.kind) {
    case families::FamilyKind::Dumbbell:
      fire("R6",
           "the two-clique bridge family is AGME although lambda = kappa = 1",
           Verdict::AGME);
      break;
    case families::FamilyKind::ClusterChain:
      if (spec.clusters.unbounded())
        fire("R6",
             "bridged clique chains with unboundedly many clusters are ABS "
             "despite minimum degree Omega(f(|G_n|)) for any sublinear f",
             Verdict::ABS);
      break;
    case families::FamilyKind::MatchedChain:
      if (spec.clusters.unbounded())
        fire("R6",
             "matching-joined clique chains are AGME with unbounded diameter",
             Verdict::AGME);
      break;
    default:
      break;
  }

  if (!out.rules_fired.empty()) out.verdict = out.rules_fired.front().verdict;

  bool agme = false, abs = false;
  for (const auto& r : out.rules_fired) {
    agme = agme || r.verdict == Verdict::AGME;
    abs = abs || r.verdict == Verdict::ABS;
  }
  if (agme && abs) throw Error("classifier fired AGME and ABS rules together");
  return out;
}

namespace {

/// Minimum edge cut of a connected graph: rerun the minimizing flow and read
/// the residual-reachable side.
std::vector<Edge> minimum_edge_cut(const Graph& g) {
  const int n = g.vertex_count();
  int best_t = -1;
  int best = n * n;
  for (int t = 1; t < n; ++t) {
    int f = pair_edge_connectivity(g, 0, t);
    if (f < best) {
      best = f;
      best_t = t;
    }
  }
  // Recover the cut by peeling `best` edge-disjoint 0-t paths and flood
  // filling the residual: delete one minimum set of saturated edges.
  // Simpler equivalent: run greedy-style max-flow via adjacency matrix.
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  for (auto [u, v] : g.edges()) cap[u][v] = cap[v][u] = 1;
  auto augment = [&]() {
    std::vector<int> parent(n, -1);
    std::vector<int> queue{0};
    parent[0] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int v = 0; v < n; ++v)
        if (parent[v] < 0 && cap[u][v] > 0) {
          parent[v] = u;
          queue.push_back(v);
        }
    }
    if (parent[best_t] < 0) return false;
    for (int x = best_t; x != 0; x = parent[x]) {
      cap[parent[x]][x] -= 1;
      cap[x][parent[x]] += 1;
    }
    return true;
  };
  while (augment()) {
  }
  std::vector<char> reach(n, 0);
  std::vector<int> queue{0};
  reach[0] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (int v = 0; v < n; ++v)
      if (!reach[v] && cap[u][v] > 0) {
        reach[v] = 1;
        queue.push_back(v);
      }
  }
  std::vector<Edge> cut;
  for (auto [u, v] : g.edges())
    if (reach[u] != reach[v]) cut.push_back({u, v});
  return cut;
}

void partition_recurse(const Graph& g, const std::vector<int>& original_ids,
                       double tau, int depth, int max_depth,
                       ClusterPartition& out) {
  auto lam = edge_connectivity(g);
  out.split_trace.push_back(
      {g.vertex_count(), lam.value, tau * g.vertex_count()});
  if (g.vertex_count() == 1 || depth >= max_depth ||
      static_cast<double>(lam.value) >= tau * g.vertex_count()) {
    out.clusters.push_back(original_ids);
    return;
  }
  std::vector<Edge> cut = minimum_edge_cut(g);
  for (auto [u, v] : cut)
    out.cut_edges.push_back({std::min(original_ids[u], original_ids[v]),
                             std::max(original_ids[u], original_ids[v])});
  SubgraphResult sub = subgraph(g, cut, false);

  // Split into the two connected components of the cut graph.
  std::vector<int> comp(g.vertex_count(), -1);
  int n_comp = 0;
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> queue{s};
    comp[s] = n_comp;
    for (size_t qi = 0; qi < queue.size(); ++qi)
      for (int w : sub.graph.neighbors(queue[qi]))
        if (comp[w] < 0) {
          comp[w] = n_comp;
          queue.push_back(w);
        }
    ++n_comp;
  }
  for (int c = 0; c < n_comp; ++c) {
    std::vector<int> verts;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (comp[v] == c) verts.push_back(v);
    std::vector<int> ids;
    std::vector<int> local(g.vertex_count(), -1);
    for (size_t i = 0; i < verts.size(); ++i) {
      local[verts[i]] = static_cast<int>(i);
      ids.push_back(original_ids[verts[i]]);
    }
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
      if (local[u] >= 0 && local[v] >= 0 &&
          sub.graph.has_edge(u, v))  // cut edges stay removed
        edges.push_back({local[u], local[v]});
    partition_recurse(Graph(static_cast<int>(verts.size()), std::move(edges)), ids,
                      tau, depth + 1, max_depth, out);
  }
}

}  // namespace

ClusterPartition cluster_partition(const Graph& g, double tau, int max_depth) {
  if (!(tau > 0.0 && tau <= 1.0)) throw Error("tau must lie in (0,1]");
  if (!g.is_connected()) throw Error("cluster partition needs a connected graph");
  if (max_depth < 0) max_depth = static_cast<int>(std::ceil(1.0 / tau));
  ClusterPartition out;
  out.k_bound = 1 << std::min(max_depth, 30);
  std::vector<int> ids(g.vertex_count());
  std::iota(ids.begin(), ids.end(), 0);
  partition_recurse(g, ids, tau, 0, max_depth, out);
  std::sort(out.clusters.begin(), out.clusters.end());
  std::sort(out.cut_edges.begin(), out.cut_edges.end());
  return out;
}

double f_c_recursion(double c, int k) {
  if (!(c > 0.0 && c <= 0.5)) throw Error("c must lie in (0, 1/2]");
  if (k < 0) throw Error("k must be >= 0");
  if (k * c >= 1.0) throw Error("f_c undefined for k*c >= 1");
  return c / (1.0 - k * c);
}

}  // namespace qnet::certify
