#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sbrf {

/// Bit positions and counts. Positions are 1-based everywhere in the public
/// interface; position 0 denotes the empty prefix.
using Pos = std::uint64_t;

class BitVector;

/// Append-only buffer used to assemble a bit sequence before the rank/select
/// directories are built.
class BitVectorBuilder {
 public:
  void reserve(std::uint64_t n_bits) { words_.reserve((n_bits + 63) / 64); }

  void push_back(bool bit) {
    if ((size_ & 63) == 0) words_.push_back(0);
    if (bit) words_.back() |= std::uint64_t{1} << (size_ & 63);
    ++size_;
  }

  std::uint64_t size() const noexcept { return size_; }

  BitVector build() &&;

 private:
  std::vector<std::uint64_t> words_;
  std::uint64_t size_ = 0;
};

/// Static bit vector with rank1/rank0/rank10 and select1/select0.
///
/// Layout: bits are packed LSB-first into 64-bit words. A superblock spans
/// `sample_words()` words and stores absolute counts of ones and of "10"
/// patterns; its width grows logarithmically with the vector length so the
/// directory is o(n) bits. Select is answered from sampled hints that narrow
/// the superblock range, followed by a word scan.
///
/// Conventions: rank queries are inclusive of p; a "10" occurrence counts
/// toward rank10(p) once its 0-bit lies at a position <= p.
class BitVector {
 public:
  BitVector() = default;
  BitVector(std::vector<std::uint64_t> words, std::uint64_t n_bits);

  /// Builds from a string of '0'/'1' characters (other characters rejected).
  static BitVector from_string(std::string_view bits);

  std::uint64_t size() const noexcept { return n_bits_; }
  bool empty() const noexcept { return n_bits_ == 0; }

  /// Bit at 1-based position p.
  bool bit(Pos p) const;
  bool operator[](Pos p) const { return bit(p); }

  std::uint64_t rank1(Pos p) const;
  std::uint64_t rank0(Pos p) const { return p - rank1(p); }
  std::uint64_t rank10(Pos p) const;
  Pos select1(std::uint64_t i) const;
  Pos select0(std::uint64_t i) const;

  std::uint64_t count_ones() const noexcept { return ones_; }
  std::uint64_t count_zeros() const noexcept { return n_bits_ - ones_; }
  std::uint64_t count_10() const noexcept { return tens_; }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::uint64_t sample_words() const noexcept { return sample_words_; }

  /// Bits spent on rank/select directories (excludes the raw bits).
  std::uint64_t support_bits() const noexcept;

  std::string to_string() const;

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.n_bits_ == b.n_bits_ && a.words_ == b.words_;
  }

 private:
  void build_directories();
  std::uint64_t pattern10_word(std::uint64_t k) const noexcept;
  std::uint64_t superblock_bits() const noexcept { return sample_words_ * 64; }

  std::vector<std::uint64_t> words_;
  std::uint64_t n_bits_ = 0;
  std::uint64_t ones_ = 0;
  std::uint64_t tens_ = 0;
  std::uint64_t sample_words_ = 4;
  std::uint64_t select_stride_ = 256;
  std::vector<std::uint64_t> rank1_samples_;   // ones before superblock k
  std::vector<std::uint64_t> rank10_samples_;  // "10" pairs closed before superblock k
  std::vector<std::uint64_t> select1_hints_;   // superblock of the (j*stride+1)-th one
  std::vector<std::uint64_t> select0_hints_;
};

}  // namespace sbrf
