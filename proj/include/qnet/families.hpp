#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qnet/graph.hpp"
#include "qnet/growth.hpp"

namespace qnet::families {

enum class FamilyKind {
  Complete,
  Path,
  Star,
  BalancedTree,
  Dumbbell,
  ClusterChain,
  Hamming,
  MatchedChain,
};

/// Cluster-count function for the chain families: either ceil(log(n+1))
/// (natural log) or a fixed constant, both nondecreasing in n.
struct CountFn {
  enum class Kind { Log, Fixed };
  Kind kind = Kind::Log;
  long long fixed = 2;

  long long operator()(long long n) const;
  bool unbounded() const { return kind == Kind::Log; }
  GrowthExpr growth() const;
  std::string str() const;
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::Complete;
  int arity = 2;        ///< BalancedTree
  int hamming_k = 1;    ///< Hamming
  CountFn clusters{};   ///< ClusterChain / MatchedChain

  /// Parses CLI family strings: "complete", "path", "star", "tree:a=2",
  /// "dumbbell", "hamming:k=3", "clusterchain:k=log", "clusterchain:k=4",
  /// "matchedchain:f=log", "matchedchain:f=3".
  static FamilySpec parse(const std::string& text);
  std::string name() const;
  long long min_index() const;
};

/// Builds the n-th member of the family. Vertex numbering is deterministic:
/// clusters occupy consecutive blocks, Hamming vertices follow lexicographic
/// multi-index order.
Graph generate(const FamilySpec& spec, long long n);

struct PathHypothesis {
  GrowthExpr path_count;  ///< in N = |G_n|
  int length_cap = 0;
};

struct SubsetDescriptor {
  GrowthExpr subset_size;
  GrowthExpr subset_max_degree;
};

/// Symbolic growth descriptors (stated in the graph order N) plus exact
/// integer formulas in the construction index n, used for verification.
struct FamilyDescriptors {
  GrowthExpr order_fn;  ///< in the index n
  GrowthExpr delta_min;
  GrowthExpr delta_max;
  std::optional<GrowthExpr> lambda;
  std::optional<GrowthExpr> diameter;
  std::optional<PathHypothesis> path_hypothesis;
  std::optional<SubsetDescriptor> subset;

  using ExactFn = std::function<long long(long long)>;
  ExactFn exact_order;
  ExactFn exact_delta_min;
  ExactFn exact_delta_max;
  ExactFn exact_lambda;    ///< may be null
  ExactFn exact_kappa;     ///< may be null
  ExactFn exact_diameter;  ///< may be null
};

FamilyDescriptors descriptors(const FamilySpec& spec);

struct VerifyRow {
  long long n = 0;
  long long order = 0;
  bool ok = false;
  std::string detail;  ///< mismatch description when !ok
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  bool all_ok = true;
};

/// Generates each instance and checks the measured delta_min / delta_max /
/// lambda / kappa / diameter against the exact descriptor formulas (integer
/// equality, no tolerance).
VerifyReport verify_descriptors(const FamilySpec& spec,
                                const std::vector<long long>& n_values);

/// The explicit edge-disjoint path system of the Hamming construction:
/// one coordinate-fixing route plus n-2 detour routes through a fresh value
/// at the first differing coordinate. Lengths are at most k+1.
PathBundle hamming_paths(int k, long long n, int u, int v);

}  // namespace qnet::families
