#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qnet/families.hpp"
#include "qnet/graph.hpp"
#include "qnet/growth.hpp"
#include "qnet/iso.hpp"

namespace qnet::certify {

inline constexpr const char* kToolVersion = "0.1.0";

/// Constructive biseparability certificate. TrivialAllLinksSeparable covers
/// p <= 1/(d+1) (every link separable). DegreeConstruction names an
/// independent vertex subset V' such that the recombined decomposition is a
/// valid mixture: every v in V' satisfies w(v) <= |V'| where
/// w(v) = max_{1<=k<=deg(v)} (d p/(1-p))^k (2^deg(v) - 1).
struct BiseparabilityCertificate {
  enum class Kind { TrivialAllLinksSeparable, DegreeConstruction };
  Kind kind = Kind::TrivialAllLinksSeparable;
  iso::IsotropicParams params;
  std::vector<int> subset;                ///< V' (DegreeConstruction)
  std::map<int, double> per_vertex_margin;  ///< |V'| - w(v), >= 0
};

std::optional<BiseparabilityCertificate> bs_certificate(
    const Graph& g, const iso::IsotropicParams& params);

struct GmePairEntry {
  int u = 0;
  int v = 0;
  int path_count = 0;            ///< edge-disjoint paths within the cap
  int length_cap = 0;            ///< cap C minimizing epsilon
  double delivered_visibility = 0.0;  ///< p^(2^(C-1))
  double epsilon = 1.0;
};

/// Model-conditional certificate that the state beats the biseparable
/// average-fidelity cap 1 - 1/N.
struct GmeCertificate {
  iso::IsotropicParams params;
  std::vector<GmePairEntry> per_pair;
  double average_fidelity_lower_bound = 0.0;
  double cap = 0.0;  ///< 1 - 1/N
  std::string exponent_model;
};

/// Length caps searched, relative to the diameter.
struct CapPolicy {
  int lo_offset = 0;
  int hi_offset = 3;
};

std::optional<GmeCertificate> gme_certificate(
    const Graph& g, const iso::IsotropicParams& params,
    const iso::ExponentModel& model = {}, const CapPolicy& policy = {});

struct ConflictReport {
  bool bs_present = false;
  bool gme_present = false;
};

/// Runs both certificates; throws if both fire (they certify contradictory
/// statements, so simultaneous success is an implementation bug).
ConflictReport certificate_conflict_check(const Graph& g,
                                          const iso::IsotropicParams& params,
                                          const iso::ExponentModel& model = {});

struct GridSpec {
  double start = 0.05;
  double stop = 0.95;
  int steps = 18;  ///< number of intervals; points = steps + 1

  double at(int i) const;
  int points() const { return steps + 1; }
  /// Parses "a:b:step".
  static GridSpec parse(const std::string& text);
};

struct VisibilityBracket {
  double p_lo = 0.0;  ///< largest certified-biseparable visibility (>= 1/(d+1))
  double p_hi = 1.0;  ///< smallest certified-GME visibility, or 1
  bool gme_model_conditional = true;
};

VisibilityBracket critical_visibility_bracket(const Graph& g, int d,
                                              const GridSpec& grid,
                                              const iso::ExponentModel& model = {});

enum class Verdict { AGME, ABS, Unknown };

std::string to_string(Verdict v);

struct RuleFire {
  std::string rule;       ///< "R1".."R6"
  std::string statement;  ///< the theorem the rule encodes
  Verdict verdict = Verdict::Unknown;
};

struct FamilyVerdict {
  Verdict verdict = Verdict::Unknown;
  std::vector<RuleFire> rules_fired;
  families::FamilyDescriptors descriptors_used;
};

/// Evaluates the asymptotic rules R1..R6 on the symbolic descriptors; the
/// first rule that fires decides, every firing rule is recorded. AGME and ABS
/// rules never both fire.
FamilyVerdict classify_family(const families::FamilySpec& spec, int d);

struct ClusterPartition {
  std::vector<std::vector<int>> clusters;  ///< vertex sets, original ids
  std::vector<Edge> cut_edges;
  struct TraceRow {
    int size = 0;
    int lambda = 0;
    double threshold = 0.0;
  };
  std::vector<TraceRow> split_trace;
  int k_bound = 0;  ///< 2^max_depth
};

/// Recursive edge-cut partition: stop when lambda(H) >= tau*|H|, otherwise
/// remove a minimum edge-cut and recurse on both components. Depth is capped
/// at max_depth (default ceil(1/tau)).
ClusterPartition cluster_partition(const Graph& g, double tau, int max_depth = -1);

/// c / (1 - k c); the cluster-splitting constant after k cuts.
double f_c_recursion(double c, int k);

}  // namespace qnet::certify
