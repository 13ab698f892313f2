#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sbrf/bit_vector.hpp"

namespace sbrf {

/// 1-based pre-order node number.
using NodeIndex = std::uint32_t;

/// Ordered rooted tree stored as a balanced-parentheses sequence
/// (1 = open, 0 = close, pre-order), plus a min-excess directory.
///
/// The excess of a prefix of length k is rank1(k) - rank0(k). Blocks of the
/// sequence record their minimum prefix excess in a complete binary tree,
/// which drives forward/backward excess searches (find_close, find_open,
/// enclose) and range-minimum queries in O(log n).
///
/// All positions are 1-based bit positions. Immutable after construction.
class BpTree {
 public:
  BpTree() = default;

  /// Throws PreconditionError unless `bits` encodes exactly one tree.
  explicit BpTree(BitVector bits);

  const BitVector& bits() const noexcept { return bv_; }
  std::uint64_t node_count() const noexcept { return bv_.size() / 2; }
  std::uint64_t leaf_count() const noexcept { return bv_.count_10(); }
  std::uint64_t internal_count() const noexcept { return node_count() - leaf_count(); }

  bool is_open(Pos p) const { return bv_.bit(p); }

  /// rank1(p) - rank0(p); excess(0) == 0.
  std::int64_t excess(Pos p) const {
    return 2 * static_cast<std::int64_t>(bv_.rank1(p)) - static_cast<std::int64_t>(p);
  }

  Pos find_close(Pos p) const;
  Pos find_open(Pos p) const;
  /// Open position of the parent of the node opened at p.
  Pos enclose(Pos p) const;
  /// Leftmost position of minimum excess in [l, r].
  Pos rmq(Pos l, Pos r) const;

  NodeIndex pre_order_map(Pos p) const;
  Pos pre_order_select(NodeIndex i) const;
  Pos post_order_select(std::uint64_t i) const;

  bool is_leaf(Pos p) const;
  Pos first_child(Pos p) const;
  std::optional<Pos> next_sibling(Pos p) const;

  /// Lowest common ancestor of two nodes given by their open positions.
  Pos lca(Pos l, Pos r) const;

  /// Number of nodes in the subtree rooted at p.
  std::uint64_t cluster_size(Pos p) const;
  /// Number of leaves in the subtree rooted at p.
  std::uint64_t num_leaves(Pos p) const;

  std::uint64_t block_bits() const noexcept { return block_bits_; }
  /// Directory overhead of the bit vector plus the min-excess tree, in bits.
  std::uint64_t support_bits() const noexcept;

 private:
  struct ScanHit {
    bool found;
    Pos pos;
  };

  void require_open(Pos p, const char* op) const;
  std::int64_t block_min(std::uint64_t block) const;
  ScanHit fwd_scan(Pos from, Pos to, std::int64_t cur, std::int64_t target) const;
  ScanHit bwd_scan(Pos hi, Pos lo, std::int64_t cur, std::int64_t target) const;
  std::pair<std::int64_t, Pos> min_scan(Pos l, Pos r) const;
  std::optional<Pos> fwd_search(Pos k, std::int64_t target) const;
  std::optional<Pos> bwd_search(Pos k, std::int64_t target) const;
  std::optional<std::uint64_t> next_block_le(std::uint64_t block, std::int64_t target) const;
  std::optional<std::uint64_t> prev_block_le(std::uint64_t block, std::int64_t target) const;
  std::uint64_t leftmost_block_min(std::uint64_t first, std::uint64_t last, std::int64_t& value) const;

  BitVector bv_;
  std::uint64_t block_bits_ = 256;
  std::uint64_t n_blocks_ = 0;
  std::uint64_t leaves_ = 1;          // power of two >= n_blocks_
  std::vector<std::int64_t> min_tree_;  // heap layout, node 1 is the root
};

}  // namespace sbrf
