#include <gtest/gtest.h>

#include <random>
#include <set>

#include "sbrf/baseline.hpp"
#include "sbrf/distance.hpp"
#include "sbrf/error.hpp"
#include "support.hpp"

using namespace sbrf;
using namespace sbrf::baseline;
using namespace testing_support;

namespace {

std::set<std::set<std::string>> named(const ClusterSet& cs, const PlainTree& t) {
  std::vector<std::string> by_id;
  for (const auto& l : t.label) {
    if (!l.empty()) by_id.push_back(l);
  }
  std::set<std::set<std::string>> out;
  for (const auto& [ids, w] : cs) {
    std::set<std::string> s;
    for (auto id : ids) s.insert(by_id[id]);
    out.insert(s);
  }
  return out;
}

}  // namespace

TEST(Baseline, FiveLeafClusters) {
  const PlainTree t = parse_plain(kFiveLeaf);
  const ClusterSet cs = naive_clusters(t, LabelIds(t), LabelMode::leaf);
  EXPECT_EQ(cs.size(), 9u);
  const std::set<std::set<std::string>> expected{{"A"}, {"B"}, {"C"}, {"D"}, {"E"}, {"B", "C"},
                                                 {"B", "C", "D"}, {"A", "E"}, {"A", "B", "C", "D", "E"}};
  EXPECT_EQ(named(cs, t), expected);
}

TEST(Baseline, T2FullClusters) {
  const PlainTree t = parse_plain(kFullyLabelled);
  const ClusterSet cs = naive_clusters(t, LabelIds(t), LabelMode::full);
  EXPECT_EQ(cs.size(), t.size());
  const auto sets = named(cs, t);
  EXPECT_TRUE(sets.count({"B", "C", "F"}));
  EXPECT_TRUE(sets.count({"B", "C", "D", "F", "G"}));
  EXPECT_TRUE(sets.count({"A", "E", "H"}));
}

TEST(Baseline, SingleLeaf) {
  const PlainTree t = parse_plain("A;");
  const ClusterSet cs = naive_clusters(t, LabelIds(t), LabelMode::leaf);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs.begin()->first, std::vector<std::uint32_t>{0});
}

TEST(Baseline, NaiveDistanceExamples) {
  EXPECT_EQ(naive_metric(kFullyLabelled, kFullyLabelledOther, Metric::erf), 2.0);
  EXPECT_EQ(naive_metric(kSixLeaf, kSixLeaf, Metric::rf), 0.0);
  EXPECT_EQ(naive_metric(kSixLeaf, kSixLeafOther, Metric::rf), 2.0);
  EXPECT_DOUBLE_EQ(naive_metric("((A:1,B:2):3,C:4);", "((A:1,C:2):3,B:4);", Metric::wrf), 10.0);
}

TEST(Baseline, ClusterCountIdentity) {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    PlainTree t = random_recursive_tree(rng, 1 + sbrf::uniform_below(rng, 80));
    label_tree(t, rng, true, false);
    EXPECT_EQ(naive_clusters(t, LabelIds(t), LabelMode::full).size(), t.size());
    GenOptions g;
    g.leaves = 1 + sbrf::uniform_below(rng, 80);
    g.seed = rep;
    g.arity = Arity::random;
    const PlainTree u = parse_plain(generate_tree(g));
    EXPECT_EQ(naive_clusters(u, LabelIds(u), LabelMode::leaf).size(), u.size());
  }
}

TEST(Baseline, PlainTreeRoundTrip) {
  const std::string s = "((A:1.5,B:0.25)X:3,C:4)R;";
  const PlainTree t = parse_plain(s);
  EXPECT_EQ(t.to_newick(true), s);
  EXPECT_EQ(t.to_newick(false), "((A,B)X,C)R;");
  EXPECT_EQ(bits_of(t), "1110100100");
  EXPECT_THROW(parse_plain("(A,B"), ParseError);
  EXPECT_THROW(parse_plain("(A,B);x"), ParseError);
}

TEST(Baseline, DayFixtures) {
  const DistanceResult r = day_rf(kSixLeaf, kSixLeafOther);
  EXPECT_EQ(r.raw, 2u);
  EXPECT_EQ(r.halved, 1.0);
  EXPECT_EQ(r.algorithm, Algorithm::day);
  EXPECT_EQ(day_rf(kSixLeaf, kSixLeaf).raw, 0u);
  EXPECT_EQ(day_rf("A;", "A;").raw, 0u);
  const TreePair p = parse_pair(kSixLeaf, kSixLeafOther, LabelMode::leaf, false);
  EXPECT_EQ(day_rf(p).raw, 2u);
}

TEST(Baseline, DayInputsAgree) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenOptions g;
    g.leaves = 1 + seed * 11;
    g.arity = seed % 2 ? Arity::random : Arity::binary;
    g.seed = 2 * seed;
    const std::string a = generate_tree(g);
    g.seed = 2 * seed + 1;
    const std::string b = generate_tree(g);
    const DayPair from_text = day_parse(a, b);
    const DayPair from_pair = day_input(parse_pair(a, b, LabelMode::leaf, false));
    EXPECT_EQ(from_text.post1, from_pair.post1);
    EXPECT_EQ(from_text.post2, from_pair.post2);
    EXPECT_EQ(from_text.leaf_count, from_pair.leaf_count);
  }
}

TEST(Baseline, DayErrors) {
  EXPECT_THROW(day_rf(kFullyLabelled, kFullyLabelledOther), ModeError);
  EXPECT_THROW(day_rf("((A),B);", "((A),B);"), ModeError);
  EXPECT_THROW(day_rf("(A,B);", "(A,C);"), LabelMismatchError);
  EXPECT_THROW(day_rf("(A,B,C);", "(A,B);"), LabelMismatchError);
  EXPECT_THROW(day_rf("(A,A);", "(A,B);"), ParseError);
  EXPECT_THROW(day_rf("(A,B);", "(A,(B,B));"), ParseError);
  EXPECT_THROW(day_rf("(A,B", "(A,B);"), ParseError);
}

TEST(Baseline, DayMatchesOracleOnLargePairs) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GenOptions g;
    g.leaves = 1000;
    g.seed = 2 * seed;
    const std::string a = generate_tree(g);
    g.seed = 2 * seed + 1;
    const std::string b = generate_tree(g);
    const TreePair p = parse_pair(a, b, LabelMode::leaf, false);
    EXPECT_EQ(day_rf(a, b).raw, rf_nextsibling(p).raw);
  }
}

TEST(Baseline, DayTablesBitFormula) {
  // Worst case is a star: n nodes, n - 1 leaves.
  for (std::uint64_t n : {2u, 10u, 1000u, 100000u}) EXPECT_EQ(DayTables::bits_for(n, n - 1), 192 * n - 64);
  EXPECT_EQ(DayTables::bits_for(10, 6), 32u * (40 + 12));
}
