#pragma once

// Reference implementations used to cross-check the succinct algorithms:
// a pointer-style tree with literal cluster-set metrics, and Day's
// linear-time RF algorithm. Neither touches BpTree navigation.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sbrf/distance.hpp"
#include "sbrf/newick.hpp"

namespace sbrf::baseline {

/// Explicit tree, nodes stored in pre-order (node 0 is the root).
struct PlainTree {
  std::vector<std::int64_t> parent;  // -1 for the root
  std::vector<std::vector<std::uint32_t>> children;
  std::vector<std::string> label;    // empty = unlabelled
  std::vector<double> weight;        // edge into the node; 0 for the root

  std::size_t size() const { return parent.size(); }
  bool is_leaf(std::uint32_t v) const { return children[v].empty(); }
  std::size_t leaf_count() const;

  std::string to_newick(bool with_weights = false) const;
};

/// Straightforward newick reader, independent of the succinct parser.
/// Labels and weights are optional everywhere; root weights are dropped.
PlainTree parse_plain(std::string_view text);

/// Label -> id, numbered by tree 1's pre-order enumeration of labels.
class LabelIds {
 public:
  explicit LabelIds(const PlainTree& reference);
  /// Throws LabelMismatchError for unknown labels.
  std::uint32_t id(const std::string& label) const;
  std::size_t size() const { return ids_.size(); }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
};

/// Cluster (sorted label ids) -> weight of the edge above the cluster's node.
using ClusterSet = std::map<std::vector<std::uint32_t>, double>;

/// Leaf mode: c(v) = labels of the leaves below v. Full mode: labels of all
/// nodes below v. Singletons are always included.
ClusterSet naive_clusters(const PlainTree& tree, const LabelIds& ids, LabelMode mode);

/// Literal set-algebra evaluation: |C1 \ C2| + |C2 \ C1| for rf/erf, the
/// three-sum weighted form for wrf/werf.
double naive_distance(const ClusterSet& c1, const ClusterSet& c2, Metric metric);

/// Convenience: parse both texts and evaluate `metric` (raw, not halved).
double naive_metric(std::string_view text1, std::string_view text2, Metric metric);

/// Per-tree tables of Day's algorithm: four integers per node (leftmost leaf,
/// rightmost leaf, leaves below, cluster size) and two leaf-indexed columns
/// holding the interval cluster table.
struct DayTables {
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;
  std::vector<std::uint32_t> leaves;
  std::vector<std::uint32_t> size;
  std::vector<std::uint32_t> table_left;
  std::vector<std::uint32_t> table_right;

  /// 32 * (4 * nodes + 2 * leaf_count).
  static std::uint64_t bits_for(std::uint64_t nodes, std::uint64_t leaf_count) {
    return 32 * (4 * nodes + 2 * leaf_count);
  }
};

/// Day's input: both trees as post-order node streams. A value >= 1 is a
/// leaf carrying its tree-1 leaf rank; a value <= 0 is an internal node with
/// -value children.
struct DayPair {
  std::vector<std::int32_t> post1;
  std::vector<std::int32_t> post2;
  std::uint32_t leaf_count = 0;
};

/// Parsing phase of the Day baseline (leaf-labelled trees only).
DayPair day_parse(std::string_view text1, std::string_view text2);
/// Builds the Day input from an already parsed succinct pair.
DayPair day_input(const TreePair& pair);
/// Distance phase of the Day baseline; O(n) time.
DistanceResult day_distance(const DayPair& input);

DistanceResult day_rf(std::string_view text1, std::string_view text2);
DistanceResult day_rf(const TreePair& pair);

}  // namespace sbrf::baseline
