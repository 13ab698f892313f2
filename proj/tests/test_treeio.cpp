#include <gtest/gtest.h>

#include "sbrf/error.hpp"
#include "sbrf/generator.hpp"
#include "sbrf/treeio.hpp"
#include "support.hpp"

using namespace sbrf;
using namespace testing_support;

namespace {

std::vector<std::uint8_t> pack_text(const std::string& text, bool weights = false) {
  const ParsedTree t = parse_tree(text, LabelMode::any, weights);
  return pack(t.tree, t.labels, t.weights ? &*t.weights : nullptr);
}

}  // namespace

TEST(TreeIo, T4Layout) {
  const auto bytes = pack_text(kSixLeaf);
  ASSERT_GE(bytes.size(), kPackHeaderBytes + 3);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "SBPT");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 0);
  EXPECT_EQ(bytes[6], 10);
  for (int i = 7; i < 14; ++i) EXPECT_EQ(bytes[i], 0);
  EXPECT_EQ(packed_bp_bytes(10), 3u);
  // 11110100 10011010 1000|0000
  EXPECT_EQ(bytes[14], 0xF4);
  EXPECT_EQ(bytes[15], 0x9A);
  EXPECT_EQ(bytes[16], 0x80);
  EXPECT_EQ(bytes[17], 6);  // label count
}

TEST(TreeIo, UnlabelledUnweighted) {
  const auto bytes = pack_text("((,),);");
  const std::size_t label_at = kPackHeaderBytes + packed_bp_bytes(5);
  ASSERT_EQ(bytes.size(), label_at + 8);
  for (std::size_t i = label_at; i < bytes.size(); ++i) EXPECT_EQ(bytes[i], 0);
  const ParsedTree back = unpack(bytes);
  EXPECT_EQ(back.tree.bits().to_string(), "1110100100");
  EXPECT_FALSE(back.weights);
  EXPECT_EQ(back.labels.labelled_count(), 0u);
}

TEST(TreeIo, RoundTripT4) {
  const ParsedTree t = parse_tree(kSixLeaf);
  const ParsedTree back = unpack(pack(t.tree, t.labels));
  EXPECT_EQ(back.tree.bits(), t.tree.bits());
  EXPECT_EQ(back.labels, t.labels);
}

TEST(TreeIo, RoundTripRandom) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenOptions g;
    g.leaves = 1 + seed * 17;
    g.seed = seed;
    g.full_labels = seed % 2;
    g.weights = seed % 3 == 0;
    g.arity = seed % 4 < 2 ? Arity::binary : Arity::random;
    const ParsedTree t = parse_tree(generate_tree(g), LabelMode::any, g.weights);
    const auto bytes = pack(t.tree, t.labels, t.weights ? &*t.weights : nullptr);
    const ParsedTree back = unpack(bytes);
    ASSERT_EQ(back.tree.bits(), t.tree.bits());
    ASSERT_EQ(back.labels, t.labels);
    ASSERT_EQ(back.weights, t.weights);
    ASSERT_EQ(pack(back.tree, back.labels, back.weights ? &*back.weights : nullptr), bytes);
  }
}

TEST(TreeIo, WeightsExact) {
  const auto bytes = pack_text("(A:0.1,B:1e-300,C:-7.25);", true);
  const ParsedTree back = unpack(bytes);
  ASSERT_TRUE(back.weights);
  EXPECT_EQ(*back.weights, (WeightVector{0.0, 0.1, 1e-300, -7.25}));
}

TEST(TreeIo, Deterministic) {
  EXPECT_EQ(pack_text(kSixLeafOther), pack_text(kSixLeafOther));
}

TEST(TreeIo, Errors) {
  const auto good = pack_text(kSixLeaf, false);
  auto bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(unpack(bad_magic), FormatError);
  auto bad_version = good;
  bad_version[4] = 2;
  EXPECT_THROW(unpack(bad_version), FormatError);
  for (std::size_t cut = 0; cut < good.size(); ++cut) {
    EXPECT_THROW(unpack(std::span(good).first(cut)), FormatError) << cut;
  }
  auto padded = good;
  padded[16] |= 0x01;
  try {
    unpack(padded);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("padding"), std::string::npos);
  }
  auto trailing = good;
  trailing.push_back(0);
  EXPECT_THROW(unpack(trailing), FormatError);
  auto unbalanced = good;
  unbalanced[14] = 0x74;  // 01110100...
  EXPECT_THROW(unpack(unbalanced), FormatError);
}

TEST(TreeIo, SizeReportSmall) {
  const TreePair p = parse_pair(kSixLeaf, kSixLeafOther, LabelMode::leaf, false);
  const SizeReport s = size_report(p);
  EXPECT_EQ(s.n, 10u);
  EXPECT_EQ(s.bp_bits, 20u);
  EXPECT_EQ(s.map_bits, 320u);
  EXPECT_EQ(s.comparison_bits_day, 1856u);
  EXPECT_EQ(s.total_bits, s.bp_bits + s.support_bits + s.map_bits);
  EXPECT_EQ(s.support_bits, p.t1.support_bits());
}

TEST(TreeIo, SizeReportOverheadDeclines) {
  GenOptions g;
  g.leaves = 500;
  const ParsedTree small = parse_tree(generate_tree(g));
  g.leaves = 500000;
  const ParsedTree large = parse_tree(generate_tree(g));
  const SizeReport a = size_report(small.tree);
  const SizeReport b = size_report(large.tree);
  EXPECT_LT(static_cast<double>(b.support_bits) / b.n, static_cast<double>(a.support_bits) / a.n);
  EXPECT_EQ(b.bp_bits + b.map_bits, 34 * b.n);
  EXPECT_LE(b.total_bits, 40 * b.n);
}
