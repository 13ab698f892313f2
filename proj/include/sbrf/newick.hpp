#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sbrf/bp_tree.hpp"
#include "sbrf/exact_sum.hpp"

namespace sbrf {

/// Which nodes must carry labels.
///   leaf: every leaf labelled, internal labels forbidden, no unary internal nodes
///   full: every node labelled
///   any:  labels optional everywhere (single-tree parsing only)
enum class LabelMode { leaf, full, any };

/// Labels of one tree, indexed by pre-order node number.
class LabelTable {
 public:
  LabelTable() = default;
  /// names[i - 1] is the label of node i; an empty string marks an unlabelled node.
  explicit LabelTable(std::vector<std::string> names) : names_(std::move(names)) {}

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  std::optional<std::string_view> label(NodeIndex i) const;

  /// Pre-order index carrying `label`. Linear scan; use index() for bulk lookups.
  std::optional<NodeIndex> lookup(std::string_view label) const;
  std::unordered_map<std::string_view, NodeIndex> index() const;

  std::size_t labelled_count() const;
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const LabelTable&, const LabelTable&) = default;

 private:
  std::vector<std::string> names_;
};

/// Tree-1 pre-order index -> tree-2 pre-order index of the node with the same
/// label. Slot i - 1 belongs to tree-1 node i; 0 marks an unlabelled node.
class CodeMap {
 public:
  CodeMap() = default;
  explicit CodeMap(std::vector<std::uint32_t> slots) : slots_(std::move(slots)) {}

  std::size_t size() const noexcept { return slots_.size(); }
  NodeIndex to_tree2(NodeIndex tree1_index) const { return slots_[tree1_index - 1]; }
  std::span<const std::uint32_t> slots() const noexcept { return slots_; }

  friend bool operator==(const CodeMap&, const CodeMap&) = default;

 private:
  std::vector<std::uint32_t> slots_;
};

/// Slot i - 1 holds the weight of the edge entering node i (0.0 for the root).
using WeightVector = std::vector<double>;

struct ParsedTree {
  BpTree tree;
  LabelTable labels;
  std::optional<WeightVector> weights;
};

/// Output of the parsing phase.
struct TreePair {
  BpTree t1;
  BpTree t2;
  CodeMap code_map;
  LabelTable labels1;  // empty when parsed with keep_labels = false
  LabelTable labels2;
  std::optional<WeightVector> w1;
  std::optional<WeightVector> w2;
  double weights_sum = 0.0;
  /// weights_sum kept exact, for the weighted metrics.
  ExactSum weights_total;
  LabelMode mode = LabelMode::leaf;

  std::uint64_t n() const noexcept { return t1.node_count(); }
  bool weighted() const noexcept { return w1.has_value(); }
};

enum class ParsePhase {
  table_built,     // both trees scanned, label table still alive
  table_released,  // label table freed; parsing is complete
};

struct ParseOptions {
  LabelMode mode = LabelMode::leaf;
  bool weighted = false;
  /// Keep per-tree label strings in the result (needed for write/pack).
  bool keep_labels = true;
  std::function<void(ParsePhase)> on_phase;
};

/// Parses two newick trees over the same label set into their succinct form
/// and the CodeMap between them. Single pass per tree.
///
/// Throws ParseError (malformed text, duplicate label), ModeError (labelling
/// does not fit `mode`), LabelMismatchError (label sets differ).
TreePair parse_pair(std::string_view text1, std::string_view text2, const ParseOptions& options);
TreePair parse_pair(std::string_view text1, std::string_view text2, LabelMode mode, bool weighted);

ParsedTree parse_tree(std::string_view text, LabelMode mode = LabelMode::any, bool weighted = false);

/// Canonical newick: children in stored order, labels verbatim, weights in
/// shortest round-trip form. The root's weight is never written.
std::string write_newick(const BpTree& tree, const LabelTable& labels, const WeightVector* weights = nullptr);

/// True if some ')' is followed by a label (lexical check only).
bool has_internal_labels(std::string_view text);

}  // namespace sbrf
