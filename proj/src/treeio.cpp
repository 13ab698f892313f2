#include "sbrf/treeio.hpp"

#include <bit>
#include <cstring>
#include <string>

#include "sbrf/error.hpp"

namespace sbrf {

namespace {

constexpr char kMagic[4] = {'S', 'B', 'P', 'T'};

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : b_(bytes) {}

  std::span<const std::uint8_t> take(std::size_t k, const char* what) {
    if (b_.size() - at_ < k) throw FormatError(std::string("truncated input: ") + what);
    auto s = b_.subspan(at_, k);
    at_ += k;
    return s;
  }
  std::uint8_t u8(const char* what) { return take(1, what)[0]; }
  std::uint64_t u64(const char* what) {
    const auto s = take(8, what);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | s[i];
    return v;
  }
  std::uint64_t varint(const char* what) {
    std::uint64_t v = 0;
    for (int shift = 0;; shift += 7) {
      if (shift > 63) throw FormatError(std::string("varint too long: ") + what);
      const std::uint8_t byte = u8(what);
      v |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
      if (!(byte & 0x80)) return v;
    }
  }
  std::size_t remaining() const { return b_.size() - at_; }

 private:
  std::span<const std::uint8_t> b_;
  std::size_t at_ = 0;
};

}  // namespace

std::vector<std::uint8_t> pack(const BpTree& tree, const LabelTable& labels, const WeightVector* weights) {
  const std::uint64_t n = tree.node_count();
  const BitVector& bv = tree.bits();
  std::vector<std::uint8_t> out;
  out.reserve(kPackHeaderBytes + packed_bp_bytes(n) + 16);
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kPackVersion);
  out.push_back(weights ? 1 : 0);
  put_u64(out, n);

  const std::size_t base = out.size();
  out.resize(base + packed_bp_bytes(n), 0);
  for (Pos p = 1; p <= bv.size(); ++p) {
    if (bv.bit(p)) out[base + (p - 1) / 8] |= static_cast<std::uint8_t>(0x80u >> ((p - 1) % 8));
  }

  put_u64(out, labels.labelled_count());
  const auto& names = labels.names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) continue;
    put_varint(out, i + 1);
    put_varint(out, names[i].size());
    out.insert(out.end(), names[i].begin(), names[i].end());
  }

  if (weights) {
    for (std::uint64_t i = 0; i < n; ++i) put_u64(out, std::bit_cast<std::uint64_t>((*weights)[i]));
  }
  return out;
}

ParsedTree unpack(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const auto magic = r.take(4, "magic");
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw FormatError("bad magic");
  const std::uint8_t version = r.u8("version");
  if (version != kPackVersion) throw FormatError("unsupported version " + std::to_string(version));
  const std::uint8_t flags = r.u8("flags");
  if (flags & ~1u) throw FormatError("unknown flags");
  const std::uint64_t n = r.u64("node count");
  if (n == 0 || n > 0xffffffffULL) throw FormatError("invalid node count");
  if (r.remaining() < packed_bp_bytes(n)) throw FormatError("truncated input: parentheses");

  const auto bp = r.take(packed_bp_bytes(n), "parentheses");
  const std::uint64_t n_bits = 2 * n;
  if (n_bits % 8 != 0) {
    const std::uint8_t pad_mask = static_cast<std::uint8_t>(0xffu >> (n_bits % 8));
    if (bp.back() & pad_mask) throw FormatError("nonzero padding bits");
  }
  BitVectorBuilder builder;
  builder.reserve(n_bits);
  for (std::uint64_t p = 0; p < n_bits; ++p) builder.push_back((bp[p / 8] >> (7 - p % 8)) & 1);

  ParsedTree out;
  try {
    out.tree = BpTree(std::move(builder).build());
  } catch (const PreconditionError& e) {
    throw FormatError(std::string("invalid parenthesis sequence: ") + e.what());
  }

  const std::uint64_t count = r.u64("label count");
  if (count > n) throw FormatError("more labels than nodes");
  std::vector<std::string> names(n);
  std::uint64_t last = 0;
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t node = r.varint("label node");
    if (node <= last || node > n) throw FormatError("label node index out of order");
    const std::uint64_t len = r.varint("label length");
    if (len == 0) throw FormatError("empty label");
    if (len > r.remaining()) throw FormatError("truncated input: label");
    const auto s = r.take(static_cast<std::size_t>(len), "label");
    names[node - 1].assign(s.begin(), s.end());
    last = node;
  }
  out.labels = LabelTable(std::move(names));

  if (flags & 1) {
    if (r.remaining() / 8 < n) throw FormatError("truncated input: weights");
    WeightVector w(n);
    for (std::uint64_t i = 0; i < n; ++i) w[i] = std::bit_cast<double>(r.u64("weights"));
    out.weights = std::move(w);
  }
  if (r.remaining() != 0) throw FormatError("trailing bytes after packed tree");
  return out;
}

namespace {

SizeReport report(const BpTree& tree, std::uint64_t map_slots) {
  SizeReport s;
  s.n = tree.node_count();
  s.bp_bits = tree.bits().size();
  s.support_bits = tree.support_bits();
  s.map_bits = 32 * map_slots;
  s.total_bits = s.bp_bits + s.support_bits + s.map_bits;
  s.comparison_bits_day = 192 * s.n - 64;
  return s;
}

}  // namespace

SizeReport size_report(const TreePair& pair) {
  SizeReport s = report(pair.t1, pair.code_map.size());
  s.pair_total_bits = s.total_bits + pair.t2.bits().size() + pair.t2.support_bits();
  return s;
}

SizeReport size_report(const BpTree& tree) {
  SizeReport s = report(tree, tree.node_count());
  s.pair_total_bits = s.total_bits + s.bp_bits + s.support_bits;
  return s;
}

}  // namespace sbrf
