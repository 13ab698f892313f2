#pragma once

// Brute-force oracles and random inputs shared by the test binaries. Nothing
// here uses the rank/select or min-excess directories.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sbrf/baseline.hpp"
#include "sbrf/generator.hpp"

namespace testing_support {

inline const std::string kSixLeaf = "(((A,B),C),(D,E,F));";
inline const std::string kSixLeafOther = "((D,E,F),(B,(A,C)));";
inline const std::string kSixLeafBits = "11110100100110101000";
inline const std::string kSixLeafOtherBits = "11101010011011010000";
inline const std::string kFullyLabelled = "(((B,C)F,D)G,(A,E)H)I;";
inline const std::string kFullyLabelledOther = "((B,(C,D)F)G,(A,E)H)I;";
inline const std::string kFiveLeaf = "(((B, C), D),(A, E));";
inline const std::string kFiveLeafBits = "111101001001101000";

inline std::string random_bits(std::mt19937_64& rng, std::size_t n, double density) {
  std::string s(n, '0');
  for (auto& c : s) c = sbrf::uniform_unit(rng) < density ? '1' : '0';
  return s;
}

/// Explicit tree decoded from a parenthesis string by a stack scan.
struct ScanTree {
  std::vector<std::uint64_t> open;   // pre-order index - 1 -> open position
  std::vector<std::uint64_t> close;  // pre-order index - 1 -> close position
  std::vector<std::int64_t> parent;  // pre-order index - 1 -> parent's, -1 root
  std::vector<std::vector<std::uint32_t>> children;
  std::vector<std::uint32_t> post;   // post-order -> pre-order index - 1
  std::vector<std::uint32_t> node_at;  // position - 1 -> pre-order index - 1 (open or close)

  explicit ScanTree(const std::string& bits) {
    std::vector<std::uint32_t> stack;
    node_at.resize(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        const auto v = static_cast<std::uint32_t>(open.size());
        open.push_back(i + 1);
        close.push_back(0);
        parent.push_back(stack.empty() ? -1 : static_cast<std::int64_t>(stack.back()));
        children.emplace_back();
        if (!stack.empty()) children[stack.back()].push_back(v);
        stack.push_back(v);
        node_at[i] = v;
      } else {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        close[v] = i + 1;
        post.push_back(v);
        node_at[i] = v;
      }
    }
  }

  std::size_t size() const { return open.size(); }

  std::uint32_t lca(std::uint32_t a, std::uint32_t b) const {
    std::vector<char> up(size(), 0);
    for (std::int64_t x = a; x >= 0; x = parent[x]) up[x] = 1;
    std::int64_t y = b;
    while (!up[y]) y = parent[y];
    return static_cast<std::uint32_t>(y);
  }

  std::uint64_t subtree_size(std::uint32_t v) const {
    std::uint64_t s = 1;
    for (auto c : children[v]) s += subtree_size(c);
    return s;
  }

  std::uint64_t leaves_below(std::uint32_t v) const {
    if (children[v].empty()) return 1;
    std::uint64_t s = 0;
    for (auto c : children[v]) s += leaves_below(c);
    return s;
  }
};

/// Random ordered tree with `nodes` nodes: node i picks a uniform parent
/// among the earlier nodes. Unary nodes occur.
inline sbrf::baseline::PlainTree random_recursive_tree(std::mt19937_64& rng, std::size_t nodes) {
  std::vector<std::vector<std::uint32_t>> kids(nodes);
  for (std::size_t i = 1; i < nodes; ++i) {
    kids[sbrf::uniform_below(rng, i)].push_back(static_cast<std::uint32_t>(i));
  }
  for (auto& k : kids) {
    for (std::size_t i = k.size(); i > 1; --i) std::swap(k[i - 1], k[sbrf::uniform_below(rng, i)]);
  }
  // Renumber in pre-order.
  sbrf::baseline::PlainTree t;
  std::vector<std::pair<std::uint32_t, std::int64_t>> stack{{0, -1}};
  while (!stack.empty()) {
    auto [v, par] = stack.back();
    stack.pop_back();
    const auto id = static_cast<std::uint32_t>(t.parent.size());
    t.parent.push_back(par);
    t.children.emplace_back();
    t.label.emplace_back();
    t.weight.push_back(0.0);
    if (par >= 0) t.children[par].push_back(id);
    for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back({*it, id});
  }
  return t;
}

inline std::string bits_of(const sbrf::baseline::PlainTree& t) {
  std::string out;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
  out += '1';
  while (!stack.empty()) {
    auto& [v, k] = stack.back();
    if (k == t.children[v].size()) {
      out += '0';
      stack.pop_back();
      continue;
    }
    const std::uint32_t c = t.children[v][k++];
    out += '1';
    stack.push_back({c, 0});
  }
  return out;
}

/// Labels every node (full) or every leaf (leaf) with a shuffled "X<k>", and
/// optionally draws edge weights with 3 decimals.
inline void label_tree(sbrf::baseline::PlainTree& t, std::mt19937_64& rng, bool full, bool weights) {
  std::vector<std::uint32_t> targets;
  for (std::uint32_t v = 0; v < t.size(); ++v) {
    t.label[v].clear();
    if (full || t.is_leaf(v)) targets.push_back(v);
  }
  for (std::size_t i = targets.size(); i > 1; --i) std::swap(targets[i - 1], targets[sbrf::uniform_below(rng, i)]);
  for (std::size_t i = 0; i < targets.size(); ++i) t.label[targets[i]] = "X" + std::to_string(i + 1);
  for (std::uint32_t v = 1; v < t.size(); ++v) {
    t.weight[v] = weights ? static_cast<double>(sbrf::uniform_below(rng, 4000)) / 1000.0 : 0.0;
  }
}

/// Copy of `t` with `swaps` random label transpositions among the labelled
/// nodes and, when weighted, a few re-drawn weights. Topology is kept, so
/// many clusters stay common.
inline sbrf::baseline::PlainTree perturb(const sbrf::baseline::PlainTree& t, std::mt19937_64& rng,
                                         std::size_t swaps, bool weights) {
  sbrf::baseline::PlainTree u = t;
  std::vector<std::uint32_t> labelled;
  for (std::uint32_t v = 0; v < u.size(); ++v) {
    if (!u.label[v].empty()) labelled.push_back(v);
  }
  for (std::size_t s = 0; s < swaps && labelled.size() > 1; ++s) {
    const auto a = labelled[sbrf::uniform_below(rng, labelled.size())];
    const auto b = labelled[sbrf::uniform_below(rng, labelled.size())];
    std::swap(u.label[a], u.label[b]);
  }
  if (weights) {
    for (std::uint32_t v = 1; v < u.size(); ++v) {
      if (sbrf::uniform_below(rng, 3) == 0) u.weight[v] = static_cast<double>(sbrf::uniform_below(rng, 4000)) / 1000.0;
    }
  }
  return u;
}

}  // namespace testing_support
