#include "qnet/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace qnet::families {

long long CountFn::operator()(long long n) const {
  if (kind == Kind::Fixed) return fixed;
  return static_cast<long long>(std::ceil(std::log(static_cast<double>(n) + 1.0)));
}

GrowthExpr CountFn::growth() const {
  if (kind == Kind::Fixed) return GrowthExpr{Rational{fixed}, Rational{0}, 0};
  return GrowthExpr::logarithmic();
}

std::string CountFn::str() const {
  return kind == Kind::Log ? "log" : std::to_string(fixed);
}

namespace {

std::pair<std::string, std::string> split_param(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) return {text, ""};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

long long parse_count_value(const std::string& value, const char* what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw Error("");
    return v;
  } catch (...) {
    throw Error(std::string("bad ") + what + " value: '" + value + "'");
  }
}

CountFn parse_count_fn(const std::string& value, const char* what) {
  if (value.empty() || value == "log") return CountFn{CountFn::Kind::Log, 2};
  long long v = parse_count_value(value, what);
  if (v < 2) throw Error(std::string(what) + " must be >= 2 or 'log'");
  return CountFn{CountFn::Kind::Fixed, v};
}

std::string expect_key(const std::string& params, const char* key) {
  if (params.empty()) return "";
  auto eq = params.find('=');
  if (eq == std::string::npos || params.substr(0, eq) != key)
    throw Error("expected '" + std::string(key) + "=<...>' in family spec, got '" +
                params + "'");
  return params.substr(eq + 1);
}

void add_clique(std::vector<Edge>& edges, long long lo, long long hi) {
  for (long long u = lo; u < hi; ++u)
    for (long long v = u + 1; v < hi; ++v)
      edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
}

constexpr long long kMaxOrder = 1LL << 24;

long long checked_power(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > kMaxOrder) throw Error("family instance too large");
  }
  return r;
}

}  // namespace

FamilySpec FamilySpec::parse(const std::string& text) {
  auto [head, params] = split_param(text);
  std::string h;
  for (char c : head) h.push_back(static_cast<char>(std::tolower(c)));
  FamilySpec spec;
  if (h == "complete") {
    spec.kind = FamilyKind::Complete;
    if (!params.empty()) throw Error("complete takes no parameters");
  } else if (h == "path") {
    spec.kind = FamilyKind::Path;
    if (!params.empty()) throw Error("path takes no parameters");
  } else if (h == "star") {
    spec.kind = FamilyKind::Star;
    if (!params.empty()) throw Error("star takes no parameters");
  } else if (h == "tree" || h == "balancedtree") {
    spec.kind = FamilyKind::BalancedTree;
    std::string v = expect_key(params, "a");
    spec.arity = v.empty() ? 2 : static_cast<int>(parse_count_value(v, "arity"));
    if (spec.arity < 2) throw Error("tree arity must be >= 2");
  } else if (h == "dumbbell") {
    spec.kind = FamilyKind::Dumbbell;
    if (!params.empty()) throw Error("dumbbell takes no parameters");
  } else if (h == "clusterchain") {
    spec.kind = FamilyKind::ClusterChain;
    spec.clusters = parse_count_fn(expect_key(params, "k"), "cluster count");
  } else if (h == "hamming") {
    spec.kind = FamilyKind::Hamming;
    std::string v = expect_key(params, "k");
    spec.hamming_k = v.empty() ? 2 : static_cast<int>(parse_count_value(v, "hamming k"));
    if (spec.hamming_k < 1) throw Error("hamming k must be >= 1");
  } else if (h == "matchedchain") {
    spec.kind = FamilyKind::MatchedChain;
    spec.clusters = parse_count_fn(expect_key(params, "f"), "cluster count");
  } else {
    throw Error("unknown family '" + head + "'");
  }
  return spec;
}

std::string FamilySpec::name() const {
  switch (kind) {
    case FamilyKind::Complete: return "complete";
    case FamilyKind::Path: return "path";
    case FamilyKind::Star: return "star";
    case FamilyKind::BalancedTree: return "tree:a=" + std::to_string(arity);
    case FamilyKind::Dumbbell: return "dumbbell";
    case FamilyKind::ClusterChain: return "clusterchain:k=" + clusters.str();
    case FamilyKind::Hamming: return "hamming:k=" + std::to_string(hamming_k);
    case FamilyKind::MatchedChain: return "matchedchain:f=" + clusters.str();
  }
  return "?";
}

long long FamilySpec::min_index() const { return 2; }

Graph generate(const FamilySpec& spec, long long n) {
  if (n < spec.min_index())
    throw Error(spec.name() + " needs n >= " + std::to_string(spec.min_index()));
  std::vector<Edge> edges;
  switch (spec.kind) {
    case FamilyKind::Complete: {
      add_clique(edges, 0, n);
      return Graph(static_cast<int>(n), std::move(edges));
    }
    case FamilyKind::Path: {
      for (long long v = 0; v + 1 < n; ++v)
        edges.emplace_back(static_cast<int>(v), static_cast<int>(v + 1));
      return Graph(static_cast<int>(n), std::move(edges));
    }
    case FamilyKind::Star: {
      for (long long leaf = 1; leaf <= n; ++leaf)
        edges.emplace_back(0, static_cast<int>(leaf));
      return Graph(static_cast<int>(n + 1), std::move(edges));
    }
    case FamilyKind::BalancedTree: {
      const long long a = spec.arity;
      for (long long v = 0; v < n; ++v)
        for (long long c = a * v + 1; c <= a * v + a && c < n; ++c)
          edges.emplace_back(static_cast<int>(v), static_cast<int>(c));
      return Graph(static_cast<int>(n), std::move(edges));
    }
    case FamilyKind::Dumbbell: {
      add_clique(edges, 0, n);
      add_clique(edges, n, 2 * n);
      edges.emplace_back(static_cast<int>(n - 1), static_cast<int>(n));
      return Graph(static_cast<int>(2 * n), std::move(edges));
    }
    case FamilyKind::ClusterChain: {
      const long long k = spec.clusters(n);
      if (n * k > kMaxOrder) throw Error("family instance too large");
      for (long long m = 0; m < k; ++m) add_clique(edges, m * n, (m + 1) * n);
      for (long long m = 0; m + 1 < k; ++m)
        edges.emplace_back(static_cast<int>((m + 1) * n - 1),
                           static_cast<int>((m + 1) * n));
      return Graph(static_cast<int>(n * k), std::move(edges));
    }
    case FamilyKind::Hamming: {
      const int k = spec.hamming_k;
      const long long order = checked_power(n, k);
      // Vertices are base-n digit strings, most significant digit first.
      std::vector<long long> stride(k);
      stride[k - 1] = 1;
      for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * n;
      for (long long id = 0; id < order; ++id) {
        for (int pos = 0; pos < k; ++pos) {
          long long digit = (id / stride[pos]) % n;
          for (long long w = digit + 1; w < n; ++w) {
            long long other = id + (w - digit) * stride[pos];
            edges.emplace_back(static_cast<int>(id), static_cast<int>(other));
          }
        }
      }
      return Graph(static_cast<int>(order), std::move(edges));
    }
    case FamilyKind::MatchedChain: {
      const long long f = spec.clusters(n);
      if (n * f > kMaxOrder) throw Error("family instance too large");
      for (long long m = 0; m < f; ++m) add_clique(edges, m * n, (m + 1) * n);
      for (long long m = 0; m + 1 < f; ++m)
        for (long long i = 0; i < n; ++i)
          edges.emplace_back(static_cast<int>(m * n + i),
                             static_cast<int>((m + 1) * n + i));
      return Graph(static_cast<int>(n * f), std::move(edges));
    }
  }
  throw Error("unreachable family kind");
}

namespace {

GrowthExpr cluster_delta_growth(const CountFn& fn) {
  // delta ~ n with N = n * k(n): N/k for fixed k, N/log N for the log count.
  if (fn.kind == CountFn::Kind::Fixed)
    return GrowthExpr{Rational{1, fn.fixed}, Rational{1}, 0};
  return GrowthExpr{Rational{1}, Rational{1}, -1};
}

GrowthExpr cluster_order_growth(const CountFn& fn) {
  if (fn.kind == CountFn::Kind::Fixed)
    return GrowthExpr{Rational{fn.fixed}, Rational{1}, 0};
  return GrowthExpr{Rational{1}, Rational{1}, 1};
}

}  // namespace

FamilyDescriptors descriptors(const FamilySpec& spec) {
  FamilyDescriptors d;
  switch (spec.kind) {
    case FamilyKind::Complete: {
      d.order_fn = GrowthExpr::poly(Rational{1}, Rational{1});
      d.delta_min = d.delta_max = GrowthExpr::poly(Rational{1}, Rational{1});
      d.lambda = d.delta_min;
      d.diameter = GrowthExpr::bounded();
      d.path_hypothesis = PathHypothesis{GrowthExpr::poly(Rational{1}, Rational{1}), 2};
      d.exact_order = [](long long n) { return n; };
      d.exact_delta_min = d.exact_delta_max = [](long long n) { return n - 1; };
      d.exact_lambda = [](long long n) { return n - 1; };
      d.exact_kappa = [](long long n) { return n - 1; };
      d.exact_diameter = [](long long) { return 1; };
      break;
    }
    case FamilyKind::Path: {
      d.order_fn = GrowthExpr::poly(Rational{1}, Rational{1});
      d.delta_min = GrowthExpr::bounded();
      d.delta_max = GrowthExpr::bounded();
      d.lambda = GrowthExpr::bounded();
      d.diameter = GrowthExpr::poly(Rational{1}, Rational{1});
      d.exact_order = [](long long n) { return n; };
      d.exact_delta_min = [](long long) { return 1; };
      d.exact_delta_max = [](long long n) { return n >= 3 ? 2LL : 1LL; };
      d.exact_lambda = [](long long) { return 1; };
      d.exact_kappa = [](long long) { return 1; };
      d.exact_diameter = [](long long n) { return n - 1; };
      break;
    }
    case FamilyKind::Star: {
      d.order_fn = GrowthExpr::poly(Rational{1}, Rational{1});
      d.delta_min = GrowthExpr::bounded();
      d.delta_max = GrowthExpr::poly(Rational{1}, Rational{1});
      d.lambda = GrowthExpr::bounded();
      d.diameter = GrowthExpr::bounded();
      d.subset = SubsetDescriptor{GrowthExpr::poly(Rational{1}, Rational{1}),
                                  GrowthExpr::bounded()};
      d.exact_order = [](long long n) { return n + 1; };
      d.exact_delta_min = [](long long) { return 1; };
      d.exact_delta_max = [](long long n) { return n; };
      d.exact_lambda = [](long long) { return 1; };
      d.exact_kappa = [](long long) { return 1; };
      d.exact_diameter = [](long long) { return 2; };
      break;
    }
    case FamilyKind::BalancedTree: {
      const long long a = spec.arity;
      d.order_fn = GrowthExpr::poly(Rational{1}, Rational{1});
      d.delta_min = GrowthExpr::bounded();
      d.delta_max = GrowthExpr::bounded();
      d.lambda = GrowthExpr::bounded();
      d.exact_order = [](long long n) { return n; };
      d.exact_delta_min = [](long long) { return 1; };
      d.exact_delta_max = [a](long long n) {
        if (n <= a + 1) return n - 1;
        if (n <= 2 * a) return a;
        return a + 1;
      };
      d.exact_lambda = [](long long) { return 1; };
      d.exact_kappa = [](long long) { return 1; };
      break;
    }
    case FamilyKind::Dumbbell: {
      d.order_fn = GrowthExpr::poly(Rational{2}, Rational{1});
      d.delta_min = GrowthExpr::poly(Rational{1, 2}, Rational{1});
      d.delta_max = GrowthExpr::poly(Rational{1, 2}, Rational{1});
      d.lambda = GrowthExpr::bounded();
      d.diameter = GrowthExpr::bounded();
      d.exact_order = [](long long n) { return 2 * n; };
      d.exact_delta_min = [](long long n) { return n - 1; };
      d.exact_delta_max = [](long long n) { return n; };
      d.exact_lambda = [](long long) { return 1; };
      d.exact_kappa = [](long long) { return 1; };
      d.exact_diameter = [](long long) { return 3; };
      break;
    }
    case FamilyKind::ClusterChain: {
      const CountFn fn = spec.clusters;
      d.order_fn = cluster_order_growth(fn);
      d.delta_min = d.delta_max = cluster_delta_growth(fn);
      d.lambda = GrowthExpr::bounded();
      d.diameter = fn.kind == CountFn::Kind::Fixed
                       ? GrowthExpr::bounded()
                       : GrowthExpr{Rational{2}, Rational{0}, 1};
      d.exact_order = [fn](long long n) { return n * fn(n); };
      d.exact_delta_min = [](long long n) { return n - 1; };
      d.exact_delta_max = [fn](long long n) { return fn(n) >= 2 ? n : n - 1; };
      d.exact_lambda = [fn](long long n) { return fn(n) >= 2 ? 1 : n - 1; };
      d.exact_kappa = [fn](long long n) { return fn(n) >= 2 ? 1 : n - 1; };
      d.exact_diameter = [fn](long long n) { return fn(n) >= 2 ? 2 * fn(n) - 1 : 1; };
      break;
    }
    case FamilyKind::Hamming: {
      const int k = spec.hamming_k;
      d.order_fn = GrowthExpr::poly(Rational{1}, Rational{k});
      d.delta_min = d.delta_max =
          GrowthExpr::poly(Rational{k}, Rational{1, k});
      d.lambda = d.delta_min;
      d.diameter = GrowthExpr::bounded();
      d.path_hypothesis =
          PathHypothesis{GrowthExpr::poly(Rational{1}, Rational{1, k}), k + 1};
      d.exact_order = [k](long long n) { return checked_power(n, k); };
      d.exact_delta_min = d.exact_delta_max = [k](long long n) { return k * (n - 1); };
      d.exact_lambda = [k](long long n) { return k * (n - 1); };
      d.exact_diameter = [k](long long) { return k; };
      break;
    }
    case FamilyKind::MatchedChain: {
      const CountFn fn = spec.clusters;
      d.order_fn = cluster_order_growth(fn);
      d.delta_min = d.delta_max = cluster_delta_growth(fn);
      d.lambda = cluster_delta_growth(fn);
      d.diameter = fn.kind == CountFn::Kind::Fixed
                       ? GrowthExpr::bounded()
                       : GrowthExpr::logarithmic();
      d.exact_order = [fn](long long n) { return n * fn(n); };
      d.exact_delta_min = [fn](long long n) { return fn(n) >= 2 ? n : n - 1; };
      d.exact_delta_max = [fn](long long n) {
        long long f = fn(n);
        if (f >= 3) return n + 1;
        return f == 2 ? n : n - 1;
      };
      d.exact_lambda = [fn](long long n) { return fn(n) >= 2 ? n : n - 1; };
      d.exact_diameter = [fn](long long n) { return fn(n) >= 2 ? fn(n) : 1; };
      break;
    }
  }
  return d;
}

VerifyReport verify_descriptors(const FamilySpec& spec,
                                const std::vector<long long>& n_values) {
  VerifyReport report;
  FamilyDescriptors d = descriptors(spec);
  for (long long n : n_values) {
    Graph g = generate(spec, n);
    VerifyRow row;
    row.n = n;
    row.order = g.vertex_count();
    row.ok = true;
    std::ostringstream detail;
    auto check = [&](const char* what, long long expected, long long measured) {
      if (expected != measured) {
        row.ok = false;
        detail << what << ": expected " << expected << ", measured " << measured << "; ";
      }
    };
    check("order", d.exact_order(n), g.vertex_count());
    auto prof = degree_profile(g);
    check("delta_min", d.exact_delta_min(n), prof.delta_min);
    check("delta_max", d.exact_delta_max(n), prof.delta_max);
    if (!g.is_connected()) {
      row.ok = false;
      detail << "generated graph disconnected; ";
    }
    if (d.exact_lambda) check("lambda", d.exact_lambda(n), edge_connectivity(g).value);
    if (d.exact_kappa) check("kappa", d.exact_kappa(n), vertex_connectivity(g));
    if (d.exact_diameter) check("diameter", d.exact_diameter(n), diameter(g));
    row.detail = detail.str();
    report.all_ok = report.all_ok && row.ok;
    report.rows.push_back(std::move(row));
  }
  return report;
}

PathBundle hamming_paths(int k, long long n, int u, int v) {
  if (k < 1 || n < 2) throw Error("hamming_paths needs k >= 1, n >= 2");
  if (u == v) throw Error("hamming_paths needs distinct endpoints");
  const long long order = checked_power(n, k);
  if (u < 0 || v < 0 || u >= order || v >= order) throw Error("vertex out of range");

  std::vector<long long> stride(k);
  stride[k - 1] = 1;
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * n;
  auto digit = [&](long long id, int pos) { return (id / stride[pos]) % n; };
  auto with_digit = [&](long long id, int pos, long long val) {
    return id + (val - digit(id, pos)) * stride[pos];
  };

  std::vector<int> diff;
  for (int pos = 0; pos < k; ++pos)
    if (digit(u, pos) != digit(v, pos)) diff.push_back(pos);

  PathBundle bundle;
  bundle.u = u;
  bundle.v = v;

  // Direct route: fix the differing coordinates left to right.
  {
    std::vector<int> path{u};
    long long cur = u;
    for (int pos : diff) {
      cur = with_digit(cur, pos, digit(v, pos));
      path.push_back(static_cast<int>(cur));
    }
    bundle.max_length = static_cast<int>(path.size()) - 1;
    bundle.paths.push_back(std::move(path));
  }

  // Detours through a fresh value at the first differing coordinate.
  const int p = diff.front();
  for (long long w = 0; w < n; ++w) {
    if (w == digit(u, p) || w == digit(v, p)) continue;
    std::vector<int> path{u};
    long long cur = with_digit(u, p, w);
    path.push_back(static_cast<int>(cur));
    for (size_t i = 1; i < diff.size(); ++i) {
      cur = with_digit(cur, diff[i], digit(v, diff[i]));
      path.push_back(static_cast<int>(cur));
    }
    cur = with_digit(cur, p, digit(v, p));
    path.push_back(static_cast<int>(cur));
    bundle.max_length =
        std::max(bundle.max_length, static_cast<int>(path.size()) - 1);
    bundle.paths.push_back(std::move(path));
  }
  return bundle;
}

}  // namespace qnet::families
