#include "sbrf/bit_vector.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace sbrf {

namespace {

std::uint64_t low_mask(std::uint64_t bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// Offset (0-based) of the r-th set bit of w, r >= 1.
unsigned select_in_word(std::uint64_t w, std::uint64_t r) {
  unsigned base = 0;
  for (;;) {
    const auto byte = static_cast<std::uint8_t>(w);
    const auto c = static_cast<std::uint64_t>(std::popcount(byte));
    if (r <= c) break;
    r -= c;
    w >>= 8;
    base += 8;
  }
  for (std::uint64_t k = 1; k < r; ++k) w &= w - 1;
  return base + static_cast<unsigned>(std::countr_zero(w));
}

std::uint64_t pick_sample_words(std::uint64_t n_bits) {
  // Superblocks of Theta(log n) words keep the sampled counts at o(n) bits.
  // The slope is shallow so blocks stay at 8 words (64 bytes) from 2^16
  // to 2^19 bits.
  const auto width = static_cast<std::uint64_t>(std::bit_width(n_bits));
  return std::clamp<std::uint64_t>(width / 4 + 4, 4, 32);
}

}  // namespace

BitVector BitVectorBuilder::build() && {
  BitVector bv(std::move(words_), size_);
  words_.clear();
  size_ = 0;
  return bv;
}

BitVector::BitVector(std::vector<std::uint64_t> words, std::uint64_t n_bits)
    : words_(std::move(words)), n_bits_(n_bits) {
  if (words_.size() * 64 < n_bits_) throw std::invalid_argument("BitVector: word buffer shorter than n_bits");
  words_.resize((n_bits_ + 63) / 64);
  if (n_bits_ & 63) words_.back() &= low_mask(n_bits_ & 63);
  build_directories();
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVectorBuilder b;
  b.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("BitVector::from_string: expected '0' or '1'");
    b.push_back(c == '1');
  }
  return std::move(b).build();
}

bool BitVector::bit(Pos p) const {
  if (p == 0 || p > n_bits_) throw std::out_of_range("BitVector::bit: position out of range");
  const Pos i = p - 1;
  return (words_[i >> 6] >> (i & 63)) & 1U;
}

std::uint64_t BitVector::pattern10_word(std::uint64_t k) const noexcept {
  const std::uint64_t w = words_[k];
  const std::uint64_t carry = k > 0 ? words_[k - 1] >> 63 : 0;
  return ~w & ((w << 1) | carry);
}

void BitVector::build_directories() {
  sample_words_ = pick_sample_words(n_bits_);
  select_stride_ = superblock_bits();
  const std::uint64_t sb_bits = superblock_bits();
  const std::uint64_t n_sb = (n_bits_ + sb_bits - 1) / sb_bits;

  rank1_samples_.assign(n_sb + 1, 0);
  rank10_samples_.assign(n_sb + 1, 0);
  std::uint64_t ones = 0;
  std::uint64_t tens = 0;
  const std::uint64_t n_words = words_.size();
  for (std::uint64_t sb = 0; sb < n_sb; ++sb) {
    rank1_samples_[sb] = ones;
    rank10_samples_[sb] = tens;
    const std::uint64_t end = std::min((sb + 1) * sample_words_, n_words);
    for (std::uint64_t k = sb * sample_words_; k < end; ++k) {
      ones += static_cast<std::uint64_t>(std::popcount(words_[k]));
      std::uint64_t pat = pattern10_word(k);
      if (k + 1 == n_words && (n_bits_ & 63)) pat &= low_mask(n_bits_ & 63);
      tens += static_cast<std::uint64_t>(std::popcount(pat));
    }
  }
  rank1_samples_[n_sb] = ones;
  rank10_samples_[n_sb] = tens;
  ones_ = ones;
  tens_ = tens;

  const std::uint64_t zeros = n_bits_ - ones_;
  select1_hints_.clear();
  select0_hints_.clear();
  select1_hints_.reserve(ones_ / select_stride_ + 1);
  select0_hints_.reserve(zeros / select_stride_ + 1);
  std::uint64_t sb = 0;
  for (std::uint64_t target = 1; target <= ones_; target += select_stride_) {
    while (rank1_samples_[sb + 1] < target) ++sb;
    select1_hints_.push_back(sb);
  }
  sb = 0;
  auto zeros_before = [&](std::uint64_t s) { return std::min(s * sb_bits, n_bits_) - rank1_samples_[s]; };
  for (std::uint64_t target = 1; target <= zeros; target += select_stride_) {
    while (zeros_before(sb + 1) < target) ++sb;
    select0_hints_.push_back(sb);
  }
}

std::uint64_t BitVector::rank1(Pos p) const {
  if (p > n_bits_) throw std::out_of_range("BitVector::rank1: position out of range");
  const std::uint64_t sb = p / superblock_bits();
  std::uint64_t r = rank1_samples_[sb];
  const std::uint64_t last = p >> 6;
  for (std::uint64_t k = sb * sample_words_; k < last; ++k) r += static_cast<std::uint64_t>(std::popcount(words_[k]));
  if (p & 63) r += static_cast<std::uint64_t>(std::popcount(words_[last] & low_mask(p & 63)));
  return r;
}

std::uint64_t BitVector::rank10(Pos p) const {
  if (p > n_bits_) throw std::out_of_range("BitVector::rank10: position out of range");
  const std::uint64_t sb = p / superblock_bits();
  std::uint64_t r = rank10_samples_[sb];
  const std::uint64_t last = p >> 6;
  for (std::uint64_t k = sb * sample_words_; k < last; ++k) r += static_cast<std::uint64_t>(std::popcount(pattern10_word(k)));
  if (p & 63) r += static_cast<std::uint64_t>(std::popcount(pattern10_word(last) & low_mask(p & 63)));
  return r;
}

Pos BitVector::select1(std::uint64_t i) const {
  if (i == 0 || i > ones_) throw std::out_of_range("BitVector::select1: ordinal out of range");
  const std::uint64_t h = (i - 1) / select_stride_;
  const std::uint64_t lo = select1_hints_[h];
  const std::uint64_t hi = h + 1 < select1_hints_.size() ? select1_hints_[h + 1] : rank1_samples_.size() - 2;
  const auto first = rank1_samples_.begin() + static_cast<std::ptrdiff_t>(lo);
  const auto last = rank1_samples_.begin() + static_cast<std::ptrdiff_t>(hi + 1);
  const auto it = std::partition_point(first, last, [i](std::uint64_t c) { return c < i; });
  const std::uint64_t sb = static_cast<std::uint64_t>(it - rank1_samples_.begin()) - 1;

  std::uint64_t rem = i - rank1_samples_[sb];
  for (std::uint64_t k = sb * sample_words_;; ++k) {
    const auto c = static_cast<std::uint64_t>(std::popcount(words_[k]));
    if (rem <= c) return k * 64 + select_in_word(words_[k], rem) + 1;
    rem -= c;
  }
}

Pos BitVector::select0(std::uint64_t i) const {
  if (i == 0 || i > n_bits_ - ones_) throw std::out_of_range("BitVector::select0: ordinal out of range");
  const std::uint64_t sb_bits = superblock_bits();
  auto zeros_before = [&](std::uint64_t s) { return std::min(s * sb_bits, n_bits_) - rank1_samples_[s]; };
  const std::uint64_t h = (i - 1) / select_stride_;
  std::uint64_t lo = select0_hints_[h];
  std::uint64_t hi = h + 1 < select0_hints_.size() ? select0_hints_[h + 1] : rank1_samples_.size() - 2;
  // Largest superblock in [lo, hi] with fewer than i zeros before it.
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (zeros_before(mid) < i) lo = mid;
    else hi = mid - 1;
  }
  std::uint64_t rem = i - zeros_before(lo);
  for (std::uint64_t k = lo * sample_words_;; ++k) {
    const std::uint64_t inv = ~words_[k];
    const auto c = static_cast<std::uint64_t>(std::popcount(inv));
    if (rem <= c) return k * 64 + select_in_word(inv, rem) + 1;
    rem -= c;
  }
}

std::uint64_t BitVector::support_bits() const noexcept {
  const std::uint64_t entries =
      rank1_samples_.size() + rank10_samples_.size() + select1_hints_.size() + select0_hints_.size();
  return entries * 64;
}

std::string BitVector::to_string() const {
  std::string s;
  s.reserve(n_bits_);
  for (Pos p = 1; p <= n_bits_; ++p) s.push_back(bit(p) ? '1' : '0');
  return s;
}

}  // namespace sbrf
