#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qnet/graph.hpp"
#include "qnet/iso.hpp"

namespace qnet::exact {

using Matrix = Eigen::MatrixXcd;

inline constexpr long long kDefaultDimCap = 1LL << 14;

/// One tensor factor of a network state: the half of edge `edge` held by
/// party `party`.
struct Subsystem {
  int dim = 2;
  int party = 0;
  int edge = 0;
};

/// Dense density matrix with an explicit subsystem layout. Canonical order
/// is party-major: parties ascending, edge factors ascending within a party.
struct DenseState {
  Matrix mat;
  std::vector<Subsystem> layout;

  long long dim() const { return mat.rows(); }
  /// Indices of the subsystems held by the given parties.
  std::vector<int> subsystems_of_parties(const std::vector<int>& parties) const;
  /// Indices of the subsystems belonging to the given edges (both halves).
  std::vector<int> subsystems_of_edges(const std::vector<int>& edges) const;

  /// Checks trace 1, hermiticity and positivity within the given tolerance.
  void validate(double tol = 1e-10) const;
};

/// rho(p,d) = p*phi+ + (1-p)*I/d^2 as a two-subsystem state.
DenseState build_isotropic(const iso::IsotropicParams& params,
                           long long dim_cap = kDefaultDimCap);

/// Tensor product of one isotropic state per edge, permuted to the canonical
/// party-major layout. Dimension d^(2|E|) must fit the cap.
DenseState build_network_state(const Graph& g, const iso::IsotropicParams& params,
                               long long dim_cap = kDefaultDimCap);

DenseState partial_trace(const DenseState& state, const std::vector<int>& subsystem_indices);
DenseState partial_trace_edges(const DenseState& state, const std::vector<int>& edges);
DenseState partial_trace_parties(const DenseState& state, const std::vector<int>& parties);

/// Minimum eigenvalue of the partial transpose over the subsystems of the
/// given parties. Negative values witness entanglement across the cut.
double ppt_min_eigenvalue(const DenseState& state, const std::vector<int>& parties);

/// <phi+|rho|phi+> for a bipartite d x d state.
double fidelity_with_max_ent(const DenseState& state, int d);

/// Bell measurement at the middle party of a u-mid-w chain segment plus the
/// matching correction at w. The middle party must hold exactly two
/// d-dimensional subsystems; its lower-indexed edge is the teleported input,
/// the higher-indexed edge the resource. Output lives on the remaining
/// parties.
DenseState teleport_once(const DenseState& state, int middle_party);

/// Two-qudit depolarizing channel on one edge: rho -> lam*rho +
/// (1-lam) * Itilde_edge (x) tr_edge(rho). Lowers an isotropic edge's
/// visibility from p to lam*p; an LOCC operation on that pair.
DenseState depolarize_edge(const DenseState& state, int edge, double lam);

/// Aggregated recombined block: every fully-covered edge subset F donates a
/// block at vertex v whose separability depends only on |F(v)| and deg(v).
struct WitnessBlockClass {
  int vertex = 0;
  int fv_size = 0;       ///< |F(v)|
  long long count = 0;   ///< number of contributing subsets F
  double weight = 0.0;   ///< summed trace mass of the blocks
  double iso_parameter = 0.0;  ///< effective visibility of the block
  double sep_threshold = 0.0;  ///< 1/(d^|F(v)| + 1)
  bool separable = false;
};

struct OverdraftEntry {
  std::uint64_t subset = 0;  ///< edge bitmask of the over-consumed term
  double available = 0.0;
  double consumed = 0.0;
};

struct WitnessDecomposition {
  std::vector<WitnessBlockClass> blocks;
  double leftover_weight = 0.0;   ///< total weight of untouched product terms
  long long leftover_count = 0;
  double weight_sum = 0.0;        ///< blocks + leftovers; 1 up to float error
  double residual_norm = -1.0;    ///< dense reassembly error; -1 if not computed
  bool residual_checked = false;
  std::vector<OverdraftEntry> overdraft_report;

  bool all_blocks_separable() const;
  /// residual (when checked) <= 1e-9, weights sum to 1, no overdraft and
  /// every block separable.
  bool valid() const;
};

/// Exact bookkeeping of the degree-construction biseparability decomposition:
/// expands the network state over edge subsets, recombines fully-covered
/// terms with their empty-at-one-subset-vertex partners, and reports block
/// separability, leftover weights and any over-consumed partner budgets.
/// Enumeration budget: |E| <= 20; the dense residual is evaluated when the
/// full matrix fits residual_dim_cap.
WitnessDecomposition reconstruct_bs_witness(const Graph& g,
                                            const iso::IsotropicParams& params,
                                            const std::vector<int>& subset,
                                            long long residual_dim_cap = 1 << 12);

}  // namespace qnet::exact
