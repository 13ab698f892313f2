#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sbrf/newick.hpp"

namespace sbrf {

enum class Metric { rf, erf, wrf, werf };
enum class Traversal { postorder, nextsibling };
enum class Algorithm { postorder, nextsibling, day };

std::string_view to_string(Metric m);
std::string_view to_string(Algorithm a);
std::optional<Metric> parse_metric(std::string_view s);
std::optional<Algorithm> parse_algorithm(std::string_view s);

bool is_weighted(Metric m);
/// Metrics over fully labelled trees (eRF, weRF).
bool is_extended(Metric m);

/// A cluster present in both trees, as pre-order indexes.
struct ClusterMatch {
  NodeIndex tree1;
  NodeIndex tree2;

  friend bool operator==(const ClusterMatch&, const ClusterMatch&) = default;
};

struct DistanceResult {
  Metric metric = Metric::rf;
  Algorithm algorithm = Algorithm::postorder;
  /// |C(T1) symmetric-difference C(T2)|, counting clusters (unweighted view).
  std::uint64_t raw = 0;
  /// raw / 2.
  double halved = 0.0;
  /// wRF / weRF value; 0 for unweighted metrics.
  double weighted = 0.0;
  /// Matched non-singleton clusters.
  std::uint64_t equal_clusters = 0;
  std::uint64_t internal1 = 0;
  std::uint64_t internal2 = 0;
  /// Singleton clusters present in only one tree (only possible for eRF/weRF,
  /// where a label can be a leaf in one tree and internal in the other).
  std::uint64_t unmatched_singletons = 0;
  std::optional<std::vector<ClusterMatch>> common;

  /// The value a user sees: weighted distance, or halved count.
  double value() const { return metric == Metric::wrf || metric == Metric::werf ? weighted : halved; }
};

/// Per-call tallies of the logarithmic-time navigation operations.
struct OpCounters {
  std::uint64_t post_order_select = 0;
  std::uint64_t next_sibling = 0;
  std::uint64_t lca = 0;
  std::uint64_t num_leaves = 0;
  std::uint64_t cluster_size = 0;

  std::uint64_t total() const { return post_order_select + next_sibling + lca + num_leaves + cluster_size; }
};

struct DistanceOptions {
  bool capture = false;
  OpCounters* counters = nullptr;
};

/// Stack entry of the post-order fold: a tree-2 LCA position and the number
/// of tree-1 nodes it summarises.
struct FoldEntry {
  Pos lca_pos;
  std::uint64_t size;
};

DistanceResult rf_postorder(const TreePair& pair, bool capture = false);
DistanceResult rf_nextsibling(const TreePair& pair, bool capture = false);
DistanceResult erf(const TreePair& pair, Traversal traversal, bool capture = false);
DistanceResult wrf(const TreePair& pair, Traversal traversal, bool capture = false);
DistanceResult werf(const TreePair& pair, Traversal traversal, bool capture = false);

/// General entry point. Throws ModeError when the pair's labelling or
/// weights do not fit `metric`.
DistanceResult compute_distance(const TreePair& pair, Metric metric, Traversal traversal,
                                const DistanceOptions& options = {});

}  // namespace sbrf
