#include <gtest/gtest.h>

#include "sbrf/bench.hpp"
#include "sbrf/generator.hpp"
#include "sbrf/newick.hpp"

using namespace sbrf;

TEST(Generator, Deterministic) {
  GenOptions g;
  g.leaves = 50;
  g.seed = 1;
  g.weights = true;
  g.full_labels = true;
  g.arity = Arity::random;
  EXPECT_EQ(generate_tree(g), generate_tree(g));
  GenOptions h = g;
  h.seed = 2;
  EXPECT_NE(generate_tree(g), generate_tree(h));
}

TEST(Generator, FrozenOutput) {
  GenOptions g;
  g.leaves = 5;
  g.seed = 1;
  EXPECT_EQ(generate_tree(g), "(((L1,L2),(L3,L5)),L4);");
}

TEST(Generator, ValidTreesAcrossSizesAndSeeds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (std::uint64_t n : {1u, 2u, 3u, 10u, 257u}) {
      for (Arity a : {Arity::binary, Arity::random}) {
        GenOptions g;
        g.leaves = n;
        g.seed = seed;
        g.arity = a;
        g.full_labels = seed % 2;
        g.weights = seed % 3 == 0;
        const ParsedTree t = parse_tree(generate_tree(g), g.full_labels ? LabelMode::full : LabelMode::leaf, g.weights);
        ASSERT_EQ(t.tree.leaf_count(), n);
        if (a == Arity::binary) {
          ASSERT_EQ(t.tree.node_count(), 2 * n - 1);
        }
        if (g.weights) {
          for (std::size_t i = 1; i < t.weights->size(); ++i) {
            ASSERT_GE((*t.weights)[i], 0.0);
            ASSERT_LT((*t.weights)[i], 1.0);
          }
        }
      }
    }
  }
}

TEST(Generator, LargeTree) {
  GenOptions g;
  g.leaves = 100000;
  g.seed = 9;
  g.arity = Arity::random;
  EXPECT_EQ(parse_tree(generate_tree(g), LabelMode::leaf).tree.leaf_count(), 100000u);
}

TEST(Generator, ZeroLeavesRejected) {
  GenOptions g;
  g.leaves = 0;
  EXPECT_THROW(generate_tree(g), std::invalid_argument);
}

TEST(Generator, UniformBelowStaysInRange) {
  std::mt19937_64 rng(1);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) ++hist[uniform_below(rng, 7)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform_unit(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Bench, ParseSizes) {
  EXPECT_EQ(parse_sizes("100"), (std::vector<std::uint64_t>{100}));
  EXPECT_EQ(parse_sizes("10000..50000:10000,7"), (std::vector<std::uint64_t>{10000, 20000, 30000, 40000, 50000, 7}));
  EXPECT_EQ(parse_sizes("3..5"), (std::vector<std::uint64_t>{3, 4, 5}));
  EXPECT_EQ(parse_sizes("10000..100000:10000").size(), 10u);
  for (const char* bad : {"", "x", "5..3", "1..4:0", "0", "1,,", "3..", "..3"}) {
    EXPECT_THROW(parse_sizes(bad), std::invalid_argument) << bad;
  }
}

TEST(Bench, GridShapeAndValues) {
  BenchConfig c;
  c.sizes = {50, 80};
  c.pairs = 2;
  c.metrics = {Metric::rf, Metric::erf, Metric::wrf};
  std::vector<BenchRecord> out;
  run_bench(c, [&](const BenchRecord& r) { out.push_back(r); });
  // rf: three algorithms; erf and wrf: the two succinct ones.
  EXPECT_EQ(out.size(), 2u * 2u * (3u + 2u + 2u));
  for (const auto& r : out) {
    EXPECT_GE(r.parse_seconds, 0.0);
    EXPECT_GE(r.distance_seconds, 0.0);
    EXPECT_GE(r.value, 0.0);
  }
  // Same pair, same rf value from every algorithm.
  EXPECT_EQ(out[0].value, out[1].value);
  EXPECT_EQ(out[0].value, out[2].value);
  EXPECT_EQ(out[0].algorithm, Algorithm::postorder);
  EXPECT_EQ(out[2].algorithm, Algorithm::day);
}

TEST(Bench, PairSeeds) {
  const auto [a, b] = bench_pair(20, 3, Metric::rf);
  GenOptions g;
  g.leaves = 20;
  g.seed = 6;
  EXPECT_EQ(a, generate_tree(g));
  g.seed = 7;
  EXPECT_EQ(b, generate_tree(g));
}

TEST(Bench, CsvRow) {
  BenchRecord r;
  r.n_leaves = 100;
  r.seed = 4;
  r.metric = Metric::werf;
  r.algorithm = Algorithm::nextsibling;
  r.parse_seconds = 0.5;
  r.distance_seconds = 0.25;
  r.peak_tracked_bytes = 1234;
  r.value = 3.5;
  EXPECT_EQ(csv_row(r), "100,4,werf,nextsibling,0.500000000,0.250000000,1234,3.5");
  EXPECT_EQ(kBenchCsvHeader, "n_leaves,seed,metric,algorithm,parse_seconds,distance_seconds,peak_tracked_bytes,value");
}
