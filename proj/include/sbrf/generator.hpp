#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace sbrf {

enum class Arity { binary, random };

struct GenOptions {
  std::uint64_t leaves = 1;
  std::uint64_t seed = 0;
  bool full_labels = false;
  bool weights = false;
  Arity arity = Arity::binary;
};

/// Random rooted tree by uniform leaf splitting: start from a single leaf and
/// repeatedly replace a uniformly chosen leaf by an internal node with 2
/// (binary) or 2..4 (random) new leaves, never overshooting `leaves`. Leaves
/// get "L1".."LN" in shuffled order, internal nodes "I1".."Ik" with
/// full_labels, non-root edges a uniform [0,1) weight printed with 6 decimals.
///
/// Output depends only on the options; the random streams are drawn with
/// hand-written reductions so results do not vary across standard libraries.
/// Throws std::invalid_argument for leaves == 0.
std::string generate_tree(const GenOptions& options);

/// Portable helpers over mt19937_64.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
double uniform_unit(std::mt19937_64& rng);

}  // namespace sbrf
