#pragma once

// Packed tree byte format (all scalars little-endian):
//
//   "SBPT"  u8 version (1)  u8 flags (bit 0: weight block present)  u64 n
//   bp      ceil(2n / 8) bytes, position 1 is the most significant bit of
//           byte 0, padding bits are zero
//   labels  u64 count, then per label: varint node index, varint byte
//           length, bytes; node indexes strictly increasing
//   weights n f64 values, present iff flags bit 0

#include <cstdint>
#include <span>
#include <vector>

#include "sbrf/newick.hpp"

namespace sbrf {

inline constexpr std::uint8_t kPackVersion = 1;

std::vector<std::uint8_t> pack(const BpTree& tree, const LabelTable& labels, const WeightVector* weights = nullptr);

/// Throws FormatError on bad magic, version mismatch, truncation, nonzero
/// padding, trailing bytes or an invalid parenthesis sequence.
ParsedTree unpack(std::span<const std::uint8_t> bytes);

/// Byte offset and length of the bp section inside a packed buffer.
inline constexpr std::size_t kPackHeaderBytes = 4 + 1 + 1 + 8;
inline std::size_t packed_bp_bytes(std::uint64_t n) { return static_cast<std::size_t>((2 * n + 7) / 8); }

struct SizeReport {
  std::uint64_t n = 0;
  std::uint64_t bp_bits = 0;       // 2n, tree 1
  std::uint64_t support_bits = 0;  // rank/select + min-excess directories of tree 1
  std::uint64_t map_bits = 0;      // 32 bits per CodeMap slot
  std::uint64_t total_bits = 0;    // bp + support + map
  std::uint64_t comparison_bits_day = 0;  // 192n - 64
  std::uint64_t pair_total_bits = 0;      // both trees with directories, plus the map
};

SizeReport size_report(const TreePair& pair);
/// Single tree: the map term assumes one 32-bit slot per node.
SizeReport size_report(const BpTree& tree);

}  // namespace sbrf
