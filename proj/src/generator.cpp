#include "sbrf/generator.hpp"

#include <cstdio>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sbrf {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string generate_tree(const GenOptions& options) {
  if (options.leaves == 0) throw std::invalid_argument("a tree needs at least one leaf");
  std::mt19937_64 rng(options.seed);

  // Node 0 is the root; children in creation order.
  std::vector<std::vector<std::uint32_t>> children(1);
  std::vector<std::uint32_t> leaves{0};
  leaves.reserve(options.leaves);
  while (leaves.size() < options.leaves) {
    const std::uint64_t slot = uniform_below(rng, leaves.size());
    const std::uint32_t v = leaves[slot];
    std::uint64_t k = options.arity == Arity::binary ? 2 : 2 + uniform_below(rng, 3);
    k = std::min<std::uint64_t>(k, options.leaves - leaves.size() + 1);
    for (std::uint64_t c = 0; c < k; ++c) {
      const auto child = static_cast<std::uint32_t>(children.size());
      children.emplace_back();
      children[v].push_back(child);
      if (c == 0) leaves[slot] = child;
      else leaves.push_back(child);
    }
  }

  std::vector<std::uint64_t> perm(leaves.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i + 1;
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);

  const std::size_t n = children.size();
  std::vector<std::string> label(n);
  for (std::size_t i = 0; i < leaves.size(); ++i) label[leaves[i]] = "L" + std::to_string(perm[i]);
  if (options.full_labels) {
    std::uint64_t next = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!children[v].empty()) label[v] = "I" + std::to_string(++next);
    }
  }
  std::vector<double> weight;
  if (options.weights) {
    weight.assign(n, 0.0);
    for (std::size_t v = 1; v < n; ++v) weight[v] = uniform_unit(rng);
  }

  std::string out;
  out.reserve(n * (options.weights ? 16 : 8));
  auto tail = [&](std::uint32_t v) {
    out += label[v];
    if (options.weights && v != 0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, ":%.6f", weight[v]);
      out += buf;
    }
  };
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto& [v, k] = stack.back();
    if (k == children[v].size()) {
      if (k != 0) out += ')';
      tail(v);
      stack.pop_back();
      continue;
    }
    out += k == 0 ? '(' : ',';
    const std::uint32_t c = children[v][k++];
    stack.push_back({c, 0});
  }
  out += ';';
  return out;
}

}  // namespace sbrf
