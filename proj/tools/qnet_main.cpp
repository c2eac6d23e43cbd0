// qnet: analysis toolkit for noisy quantum-network topologies.
//
// Subcommands: generate, analyze, classify, certify, sweep, exact-check.
// Exit codes: 0 success, 2 bad input, 3 Unknown verdict (classify),
// 4 output I/O failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qnet/certify.hpp"
#include "qnet/exact.hpp"
#include "qnet/families.hpp"
#include "qnet/graph.hpp"
#include "qnet/iso.hpp"
#include "qnet/serialize.hpp"

namespace {

using qnet::Graph;
using qnet::certify::Json;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitUnknown = 3;
constexpr int kExitIo = 4;

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qnet::Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return Graph::parse_edge_list(buf.str());
}

Graph resolve_graph(const std::string& family, long long n, const std::string& in) {
  if (!family.empty() && !in.empty())
    throw qnet::Error("give either --family or --in, not both");
  if (!family.empty())
    return qnet::families::generate(qnet::families::FamilySpec::parse(family), n);
  if (!in.empty()) return load_graph(in);
  throw qnet::Error("need --family or --in");
}

int cmd_generate(const std::string& family, long long n, const std::string& out_path) {
  Graph g = qnet::families::generate(qnet::families::FamilySpec::parse(family), n);
  if (out_path.empty() || out_path == "-") {
    std::cout << g.to_edge_list();
    return kExitOk;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write '" << out_path << "'\n";
    return kExitIo;
  }
  out << g.to_edge_list();
  return out ? kExitOk : kExitIo;
}

int cmd_analyze(const std::string& in_path, std::optional<double> tau) {
  Graph g = load_graph(in_path);
  std::cout << "n=" << g.vertex_count() << "\n";
  std::cout << "edges=" << g.edge_count() << "\n";
  auto prof = qnet::degree_profile(g);
  std::cout << "delta_min=" << prof.delta_min << "\n";
  std::cout << "delta_max=" << prof.delta_max << "\n";
  bool connected = g.is_connected();
  std::cout << "connected=" << (connected ? "true" : "false") << "\n";
  auto lam = qnet::edge_connectivity(g);
  std::cout << "lambda=" << lam.value << "\n";
  if (connected) {
    std::cout << "kappa=" << qnet::vertex_connectivity(g) << "\n";
    std::cout << "diameter=" << qnet::diameter(g) << "\n";
    std::cout << "maximally_edge_connected="
              << (qnet::maximal_edge_connectivity_check(g) ? "true" : "false") << "\n";
    if (prof.delta_min >= 2)
      std::cout << "diameter_bound=" << qnet::erdos_diameter_bound(g) << "\n";
    else
      std::cout << "diameter_bound=n/a\n";
    if (tau) {
      auto part = qnet::certify::cluster_partition(g, *tau);
      std::cout << "clusters=" << part.clusters.size() << "\n";
      for (size_t i = 0; i < part.clusters.size(); ++i) {
        std::cout << "cluster_" << i << "=";
        for (size_t k = 0; k < part.clusters[i].size(); ++k)
          std::cout << (k ? "," : "") << part.clusters[i][k];
        std::cout << "\n";
      }
      std::cout << "cut_edges=";
      for (size_t k = 0; k < part.cut_edges.size(); ++k)
        std::cout << (k ? " " : "") << part.cut_edges[k].first << "-"
                  << part.cut_edges[k].second;
      std::cout << "\n";
    }
  }
  return kExitOk;
}

int cmd_classify(const std::string& family, int d) {
  auto spec = qnet::families::FamilySpec::parse(family);
  auto verdict = qnet::certify::classify_family(spec, d);
  std::cout << qnet::certify::to_json(verdict, spec.name(), d).dump(2) << "\n";
  return verdict.verdict == qnet::certify::Verdict::Unknown ? kExitUnknown : kExitOk;
}

int cmd_certify(const std::string& family, long long n, const std::string& in_path,
                int d, double p, const std::string& mode,
                const qnet::iso::ExponentModel& model) {
  Graph g = resolve_graph(family, n, in_path);
  qnet::iso::IsotropicParams params{d, p};
  if (mode != "bs" && mode != "gme" && mode != "both")
    throw qnet::Error("mode must be bs, gme or both");
  Json out = Json::array();
  if (mode == "bs" || mode == "both") {
    auto cert = qnet::certify::bs_certificate(g, params);
    out.push_back(cert ? qnet::certify::to_json(*cert)
                       : qnet::certify::absent_record("biseparability", params, ""));
  }
  if (mode == "gme" || mode == "both") {
    auto cert = qnet::certify::gme_certificate(g, params, model);
    out.push_back(cert ? qnet::certify::to_json(*cert)
                       : qnet::certify::absent_record("gme", params, model.name()));
  }
  std::cout << (out.size() == 1 ? out[0] : out).dump(2) << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& family, long long n, const std::string& in_path,
              int d, const qnet::certify::GridSpec& grid,
              const std::string& out_path, const qnet::iso::ExponentModel& model,
              bool no_header) {
  Graph g = resolve_graph(family, n, in_path);
  std::string graph_id = family.empty() ? in_path : family + ":" + std::to_string(n);

  struct Row {
    double p;
    bool bs, gme;
    double bs_margin_min;
    double gme_mean_eps;
  };
  std::vector<Row> rows;
  for (int i = 0; i < grid.points(); ++i) {
    double p = grid.at(i);
    if (!(p >= 0.0 && p <= 1.0)) continue;
    qnet::iso::IsotropicParams params{d, p};
    Row row{p, false, false, 0.0, 1.0};
    auto bs = qnet::certify::bs_certificate(g, params);
    row.bs = bs.has_value();
    if (bs && !bs->per_vertex_margin.empty()) {
      row.bs_margin_min = bs->per_vertex_margin.begin()->second;
      for (auto [v, m] : bs->per_vertex_margin)
        row.bs_margin_min = std::min(row.bs_margin_min, m);
    }
    auto gme = qnet::certify::gme_certificate(g, params, model);
    row.gme = gme.has_value();
    if (gme) row.gme_mean_eps = 1.0 - gme->average_fidelity_lower_bound;
    rows.push_back(row);
  }
  double p_lo = qnet::iso::separability_threshold(d);
  double p_hi = 1.0;
  for (const auto& r : rows) {
    if (r.bs) p_lo = std::max(p_lo, r.p);
    if (r.gme) p_hi = std::min(p_hi, r.p);
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return kExitIo;
    }
    out = &file;
  }
  if (!no_header)
    *out << "# qnet " << qnet::certify::kToolVersion << " sweep d=" << d
         << " model=" << model.name() << "\n";
  *out << "graph_id,N,d,p,bs_certified,gme_certified,p_lo,p_hi,bs_margin_min,"
          "gme_mean_eps\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f", r.p);
    *out << graph_id << "," << g.vertex_count() << "," << d << "," << buf << ","
         << (r.bs ? 1 : 0) << "," << (r.gme ? 1 : 0) << ",";
    std::snprintf(buf, sizeof buf, "%.6f", p_lo);
    *out << buf << ",";
    std::snprintf(buf, sizeof buf, "%.6f", p_hi);
    *out << buf << ",";
    std::snprintf(buf, sizeof buf, "%.9g", r.bs_margin_min);
    *out << buf << ",";
    std::snprintf(buf, sizeof buf, "%.9g", r.gme_mean_eps);
    *out << buf << "\n";
  }
  if (!out->good()) return kExitIo;
  return kExitOk;
}

int run_exact_suite(const std::string& suite, long long dim_cap);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noisy quantum-network topology analysis toolkit"};
  app.require_subcommand(1);

  std::string family, in_path, out_path, mode = "both", grid_text = "0.05:0.95:0.05";
  std::string model_text = "hashing", suite;
  long long n = 0;
  int d = 2;
  double p = 0.9;
  double tau_value = 0.0;
  bool no_header = false;
  long long dim_cap = qnet::exact::kDefaultDimCap;
  bool tau_set = false;

  auto* gen = app.add_subcommand("generate", "write a family instance as an edge list");
  gen->add_option("--family", family)->required();
  gen->add_option("--n", n)->required();
  gen->add_option("--out", out_path);

  auto* ana = app.add_subcommand("analyze", "graph parameters of an edge-list file");
  ana->add_option("--in", in_path)->required();
  ana->add_option("--tau", tau_value)->each([&](const std::string&) { tau_set = true; });

  auto* cls = app.add_subcommand("classify", "asymptotic family verdict");
  cls->add_option("--family", family)->required();
  cls->add_option("--d", d);

  auto* cert = app.add_subcommand("certify", "biseparability / GME certificates");
  cert->add_option("--family", family);
  cert->add_option("--n", n);
  cert->add_option("--in", in_path);
  cert->add_option("--d", d);
  cert->add_option("--p", p)->required();
  cert->add_option("--mode", mode);
  cert->add_option("--exponent-model", model_text);

  auto* sweep = app.add_subcommand("sweep", "certificate sweep over a visibility grid");
  sweep->add_option("--family", family);
  sweep->add_option("--n", n);
  sweep->add_option("--in", in_path);
  sweep->add_option("--d", d);
  sweep->add_option("--grid", grid_text);
  sweep->add_option("--out", out_path);
  sweep->add_option("--exponent-model", model_text);
  sweep->add_flag("--no-header", no_header);

  auto* exact = app.add_subcommand("exact-check", "dense-oracle verification suites");
  exact->add_option("suite", suite, "ppt | bsa | cascade | edge-deletion | witness")
      ->required();
  exact->add_option("--dim-cap", dim_cap);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(family, n, out_path);
    if (ana->parsed())
      return cmd_analyze(in_path, tau_set ? std::optional<double>(tau_value)
                                          : std::nullopt);
    if (cls->parsed()) return cmd_classify(family, d);
    if (cert->parsed())
      return cmd_certify(family, n, in_path, d, p, mode,
                         qnet::iso::ExponentModel::parse(model_text));
    if (sweep->parsed())
      return cmd_sweep(family, n, in_path, d, qnet::certify::GridSpec::parse(grid_text),
                       out_path, qnet::iso::ExponentModel::parse(model_text), no_header);
    if (exact->parsed()) return run_exact_suite(suite, dim_cap);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

namespace {

int run_exact_suite(const std::string& suite, long long dim_cap) {
  using namespace qnet;
  using exact::DenseState;
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  };

  if (suite == "ppt") {
    for (int d : {2, 3, 4}) {
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        double mid = (lo + hi) / 2;
        DenseState rho = exact::build_isotropic({d, mid}, dim_cap);
        (exact::ppt_min_eigenvalue(rho, {0}) < 0 ? hi : lo) = mid;
      }
      double target = iso::separability_threshold(d);
      std::ostringstream detail;
      detail << "located " << (lo + hi) / 2 << ", threshold " << target;
      report("ppt threshold d=" + std::to_string(d),
             std::abs((lo + hi) / 2 - target) < 1e-9, detail.str());
    }
  } else if (suite == "bsa") {
    for (int d : {2, 3}) {
      double thr = iso::separability_threshold(d);
      bool ok = true;
      for (int i = 1; i <= 20; ++i) {
        double p = thr + (1.0 - thr) * i / 20.0;
        DenseState rho = exact::build_isotropic({d, p}, dim_cap);
        DenseState boundary = exact::build_isotropic({d, thr}, dim_cap);
        double lam = iso::bsa({d, p});
        exact::Matrix rem = rho.mat - lam * boundary.mat;
        Eigen::SelfAdjointEigenSolver<exact::Matrix> es((rem + rem.adjoint()) / 2.0,
                                                        Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-10) ok = false;
        double tr = rem.trace().real();
        DenseState phi = exact::build_isotropic({d, 1.0}, dim_cap);
        if ((rem - tr * phi.mat).cwiseAbs().maxCoeff() > 1e-10) ok = false;
      }
      report("bsa decomposition d=" + std::to_string(d), ok, "20 grid points");
    }
  } else if (suite == "cascade") {
    for (int L : {2, 3, 4}) {
      for (double p : {0.5, 0.8, 1.0}) {
        auto spec = families::FamilySpec::parse("path");
        Graph chain = families::generate(spec, L + 1);
        DenseState state = exact::build_network_state(chain, {2, p}, dim_cap);
        double vis = p;
        for (int step = 0; step < L - 1; ++step) {
          if (step > 0) {
            // Equalize the fresh link to the accumulated visibility first.
            double lam = (p > 0) ? vis / p : 0.0;
            state = exact::depolarize_edge(state, step + 1, lam);
          }
          state = exact::teleport_once(state, step + 1);
          vis *= vis;
        }
        DenseState target = exact::build_isotropic({2, iso::cascade_visibility(p, L)});
        double diff = (state.mat - target.mat).cwiseAbs().maxCoeff();
        std::ostringstream name;
        name << "cascade L=" << L << " p=" << p;
        report(name.str(), diff < 1e-9, "max deviation " + std::to_string(diff));
      }
    }
  } else if (suite == "edge-deletion") {
    auto spec = families::FamilySpec::parse("path");
    for (double p : {0.0, 0.4, 1.0}) {
      Graph g = families::generate(spec, 4);
      DenseState full = exact::build_network_state(g, {2, p}, dim_cap);
      DenseState reduced = exact::partial_trace_edges(full, {2});
      auto sub = subgraph(g, {{2, 3}}, true);
      DenseState direct = exact::build_network_state(sub.graph, {2, p}, dim_cap);
      std::ostringstream name;
      name << "edge-deletion path-4 p=" << p;
      report(name.str(),
             (reduced.mat - direct.mat).cwiseAbs().maxCoeff() < 1e-10, "");
    }
  } else if (suite == "witness") {
    Graph star = families::generate(families::FamilySpec::parse("star"), 3);
    auto wit = exact::reconstruct_bs_witness(star, {2, 0.6}, {1, 2, 3});
    report("witness star-3 p=0.6 valid", wit.valid(),
           "residual " + std::to_string(wit.residual_norm));
    auto wit7 = exact::reconstruct_bs_witness(star, {2, 0.7}, {1, 2, 3});
    report("witness star-3 p=0.7 blocks violated", !wit7.all_blocks_separable(), "");
  } else {
    std::cerr << "unknown suite '" << suite
              << "' (ppt | bsa | cascade | edge-deletion | witness)\n";
    return kExitBadInput;
  }
  return failures == 0 ? kExitOk : 1;
}

}  // namespace
