#include "sbrf/bp_tree.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>
#include <string>

#include "sbrf/error.hpp"

namespace sbrf {

namespace {

struct ByteExcess {
  std::int8_t delta;    // excess change over the byte
  std::int8_t min_pref; // minimum over the 8 non-empty prefixes
};

constexpr std::array<ByteExcess, 256> make_byte_table() {
  std::array<ByteExcess, 256> t{};
  for (int v = 0; v < 256; ++v) {
    int cur = 0;
    int lo = 8;
    for (int b = 0; b < 8; ++b) {
      cur += ((v >> b) & 1) ? 1 : -1;
      lo = std::min(lo, cur);
    }
    t[static_cast<std::size_t>(v)] = {static_cast<std::int8_t>(cur), static_cast<std::int8_t>(lo)};
  }
  return t;
}

constexpr auto kByteTable = make_byte_table();

constexpr std::int64_t kNoMin = std::numeric_limits<std::int64_t>::max();

}  // namespace

BpTree::BpTree(BitVector bits) : bv_(std::move(bits)) {
  const std::uint64_t n = bv_.size();
  if (n < 2 || (n & 1)) throw PreconditionError("BpTree: sequence length must be even and positive");
  if (n / 2 > std::numeric_limits<NodeIndex>::max()) throw PreconditionError("BpTree: too many nodes");
  if (bv_.count_ones() != n / 2) throw PreconditionError("BpTree: unbalanced parentheses");

  block_bits_ = 64 * bv_.sample_words();
  n_blocks_ = (n + block_bits_ - 1) / block_bits_;
  leaves_ = 1;
  while (leaves_ < n_blocks_) leaves_ <<= 1;
  min_tree_.assign(2 * leaves_, kNoMin);
  for (std::uint64_t b = 0; b < n_blocks_; ++b) min_tree_[leaves_ + b] = block_min(b);
  for (std::uint64_t v = leaves_ - 1; v >= 1; --v) min_tree_[v] = std::min(min_tree_[2 * v], min_tree_[2 * v + 1]);

  // A single root: every proper non-empty prefix has positive excess.
  if (min_scan(1, n - 1).first < 1 || !bv_.bit(1)) throw PreconditionError("BpTree: sequence is not a single rooted tree");
}

std::int64_t BpTree::block_min(std::uint64_t block) const {
  const Pos first = block * block_bits_ + 1;
  const Pos last = std::min((block + 1) * block_bits_, bv_.size());
  return min_scan(first, last).first;
}

void BpTree::require_open(Pos p, const char* op) const {
  if (p == 0 || p > bv_.size()) throw std::out_of_range(std::string(op) + ": position out of range");
  if (!bv_.bit(p)) throw PreconditionError(std::string(op) + ": position is not an opening parenthesis");
}

namespace {

inline int step(std::span<const std::uint64_t> w, Pos b) { return ((w[b >> 6] >> (b & 63)) & 1U) ? 1 : -1; }

inline std::uint8_t byte_at(std::span<const std::uint64_t> w, Pos b) {
  return static_cast<std::uint8_t>(w[b >> 6] >> (b & 63));
}

}  // namespace

// Smallest j in (from, to] with excess(j) <= target; `cur` is excess(from).
BpTree::ScanHit BpTree::fwd_scan(Pos from, Pos to, std::int64_t cur, std::int64_t target) const {
  const auto w = bv_.words();
  Pos b = from;
  while (b < to) {
    if ((b & 7) == 0 && b + 8 <= to) {
      const auto& e = kByteTable[byte_at(w, b)];
      if (cur + e.min_pref > target) {
        cur += e.delta;
        b += 8;
        continue;
      }
    }
    cur += step(w, b);
    ++b;
    if (cur <= target) return {true, b};
  }
  return {false, 0};
}

// Largest j in [lo, hi] with excess(j) <= target; `cur` is excess(hi).
BpTree::ScanHit BpTree::bwd_scan(Pos hi, Pos lo, std::int64_t cur, std::int64_t target) const {
  const auto w = bv_.words();
  Pos j = hi;
  for (;;) {
    if (cur <= target) return {true, j};
    if (j == lo) return {false, 0};
    if ((j & 7) == 0 && j >= lo + 8) {
      const auto& e = kByteTable[byte_at(w, j - 8)];
      const std::int64_t start = cur - e.delta;
      if (start > target && start + e.min_pref > target) {
        cur = start;
        j -= 8;
        continue;
      }
    }
    cur -= step(w, j - 1);
    --j;
  }
}

// Leftmost minimum of excess over prefix lengths [l, r].
std::pair<std::int64_t, Pos> BpTree::min_scan(Pos l, Pos r) const {
  const auto w = bv_.words();
  std::int64_t cur = excess(l);
  std::int64_t best = cur;
  Pos best_pos = l;
  Pos b = l;
  while (b < r) {
    if ((b & 7) == 0 && b + 8 <= r) {
      const auto& e = kByteTable[byte_at(w, b)];
      if (cur + e.min_pref >= best) {
        cur += e.delta;
        b += 8;
        continue;
      }
    }
    cur += step(w, b);
    ++b;
    if (cur < best) {
      best = cur;
      best_pos = b;
    }
  }
  return {best, best_pos};
}

std::optional<std::uint64_t> BpTree::next_block_le(std::uint64_t block, std::int64_t target) const {
  std::uint64_t node = leaves_ + block;
  while (node > 1) {
    if ((node & 1) == 0 && min_tree_[node + 1] <= target) {
      node += 1;
      while (node < leaves_) node = min_tree_[2 * node] <= target ? 2 * node : 2 * node + 1;
      return node - leaves_;
    }
    node >>= 1;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> BpTree::prev_block_le(std::uint64_t block, std::int64_t target) const {
  std::uint64_t node = leaves_ + block;
  while (node > 1) {
    if ((node & 1) == 1 && min_tree_[node - 1] <= target) {
      node -= 1;
      while (node < leaves_) node = min_tree_[2 * node + 1] <= target ? 2 * node + 1 : 2 * node;
      return node - leaves_;
    }
    node >>= 1;
  }
  return std::nullopt;
}

std::uint64_t BpTree::leftmost_block_min(std::uint64_t first, std::uint64_t last, std::int64_t& value) const {
  std::array<std::uint64_t, 64> left{};
  std::array<std::uint64_t, 64> right{};
  std::size_t nl = 0;
  std::size_t nr = 0;
  std::uint64_t lo = first + leaves_;
  std::uint64_t hi = last + leaves_ + 1;
  while (lo < hi) {
    if (lo & 1) left[nl++] = lo++;
    if (hi & 1) right[nr++] = --hi;
    lo >>= 1;
    hi >>= 1;
  }
  std::uint64_t node = 0;
  value = kNoMin;
  auto consider = [&](std::uint64_t v) {
    if (min_tree_[v] < value) {
      value = min_tree_[v];
      node = v;
    }
  };
  for (std::size_t i = 0; i < nl; ++i) consider(left[i]);
  for (std::size_t i = nr; i-- > 0;) consider(right[i]);
  while (node < leaves_) node = min_tree_[2 * node] == value ? 2 * node : 2 * node + 1;
  return node - leaves_;
}

std::optional<Pos> BpTree::fwd_search(Pos k, std::int64_t target) const {
  const Pos n = bv_.size();
  if (k >= n) return std::nullopt;
  const std::uint64_t block = k / block_bits_;
  const Pos end = std::min((block + 1) * block_bits_, n);
  if (auto hit = fwd_scan(k, end, excess(k), target); hit.found) return hit.pos;
  const auto next = next_block_le(block, target);
  if (!next) return std::nullopt;
  const Pos start = *next * block_bits_;
  const Pos stop = std::min(start + block_bits_, n);
  return fwd_scan(start, stop, excess(start), target).pos;
}

std::optional<Pos> BpTree::bwd_search(Pos k, std::int64_t target) const {
  if (k == 0) return std::nullopt;
  const Pos hi = k - 1;
  if (hi == 0) return target >= 0 ? std::optional<Pos>(0) : std::nullopt;
  const std::uint64_t block = (hi - 1) / block_bits_;
  if (auto hit = bwd_scan(hi, block * block_bits_, excess(hi), target); hit.found) return hit.pos;
  if (const auto prev = prev_block_le(block, target)) {
    const Pos top = std::min((*prev + 1) * block_bits_, bv_.size());
    return bwd_scan(top, *prev * block_bits_ + 1, excess(top), target).pos;
  }
  return target >= 0 ? std::optional<Pos>(0) : std::nullopt;
}

Pos BpTree::find_close(Pos p) const {
  require_open(p, "find_close");
  return *fwd_search(p, excess(p) - 1);
}

Pos BpTree::find_open(Pos p) const {
  if (p == 0 || p > bv_.size()) throw std::out_of_range("find_open: position out of range");
  if (bv_.bit(p)) throw PreconditionError("find_open: position is not a closing parenthesis");
  return *bwd_search(p, excess(p)) + 1;
}

Pos BpTree::enclose(Pos p) const {
  require_open(p, "enclose");
  if (p == 1) throw PreconditionError("enclose: the root has no parent");
  return *bwd_search(p, excess(p) - 2) + 1;
}

Pos BpTree::rmq(Pos l, Pos r) const {
  if (l == 0 || l > r || r > bv_.size()) throw std::out_of_range("rmq: invalid range");
  const std::uint64_t bl = (l - 1) / block_bits_;
  const std::uint64_t br = (r - 1) / block_bits_;
  if (bl == br) return min_scan(l, r).second;

  auto best = min_scan(l, (bl + 1) * block_bits_);
  if (br > bl + 1) {
    std::int64_t value = kNoMin;
    const std::uint64_t block = leftmost_block_min(bl + 1, br - 1, value);
    if (value < best.first) best = min_scan(block * block_bits_ + 1, (block + 1) * block_bits_);
  }
  if (const auto right = min_scan(br * block_bits_ + 1, r); right.first < best.first) best = right;
  return best.second;
}

NodeIndex BpTree::pre_order_map(Pos p) const {
  require_open(p, "pre_order_map");
  return static_cast<NodeIndex>(bv_.rank1(p));
}

Pos BpTree::pre_order_select(NodeIndex i) const {
  if (i == 0 || i > node_count()) throw std::out_of_range("pre_order_select: node index out of range");
  return bv_.select1(i);
}

Pos BpTree::post_order_select(std::uint64_t i) const {
  if (i == 0 || i > node_count()) throw std::out_of_range("post_order_select: node index out of range");
  return find_open(bv_.select0(i));
}

bool BpTree::is_leaf(Pos p) const {
  require_open(p, "is_leaf");
  return !bv_.bit(p + 1);
}

Pos BpTree::first_child(Pos p) const {
  if (is_leaf(p)) throw PreconditionError("first_child: node is a leaf");
  return p + 1;
}

std::optional<Pos> BpTree::next_sibling(Pos p) const {
  const Pos c = find_close(p);
  if (c < bv_.size() && bv_.bit(c + 1)) return c + 1;
  return std::nullopt;
}

Pos BpTree::lca(Pos l, Pos r) const {
  require_open(l, "lca");
  require_open(r, "lca");
  if (l == r) return l;
  if (l > r) std::swap(l, r);
  return enclose(rmq(l, r) + 1);
}

std::uint64_t BpTree::cluster_size(Pos p) const { return (find_close(p) - p + 1) / 2; }

std::uint64_t BpTree::num_leaves(Pos p) const { return bv_.rank10(find_close(p)) - bv_.rank10(p); }

std::uint64_t BpTree::support_bits() const noexcept { return bv_.support_bits() + min_tree_.size() * 64; }

}  // namespace sbrf
