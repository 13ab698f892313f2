#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sbrf/distance.hpp"
#include "sbrf/generator.hpp"

namespace sbrf {

inline constexpr std::string_view kBenchCsvHeader =
    "n_leaves,seed,metric,algorithm,parse_seconds,distance_seconds,peak_tracked_bytes,value";

struct BenchRecord {
  std::uint64_t n_leaves = 0;
  std::uint64_t seed = 0;
  Metric metric = Metric::rf;
  Algorithm algorithm = Algorithm::postorder;
  double parse_seconds = 0.0;
  double distance_seconds = 0.0;
  std::uint64_t peak_tracked_bytes = 0;
  double value = 0.0;
};

struct BenchConfig {
  std::vector<std::uint64_t> sizes;
  std::uint64_t pairs = 1;
  std::uint64_t seed = 0;
  std::vector<Metric> metrics{Metric::rf};
  std::vector<Algorithm> algorithms{Algorithm::postorder, Algorithm::nextsibling, Algorithm::day};
  Arity arity = Arity::binary;
};

/// "100,1000..5000:1000" -> 100 1000 2000 3000 4000 5000. A range without a
/// step uses step 1. Throws std::invalid_argument on malformed input.
std::vector<std::uint64_t> parse_sizes(std::string_view text);

/// Pair k of a size uses tree seeds 2 * (seed + k) and 2 * (seed + k) + 1.
std::pair<std::string, std::string> bench_pair(std::uint64_t leaves, std::uint64_t pair_seed, Metric metric,
                                               Arity arity = Arity::binary);

/// Times one parse + distance run. peak_tracked_bytes is the tracked heap
/// peak above the usage at entry; zero unless sbrf_memtrack is linked.
BenchRecord bench_once(const std::string& text1, const std::string& text2, std::uint64_t leaves, std::uint64_t seed,
                       Metric metric, Algorithm algorithm);

/// Runs the grid in order size -> pair -> metric -> algorithm. Combinations
/// the day baseline cannot compute (anything but rf) are skipped.
void run_bench(const BenchConfig& config, const std::function<void(const BenchRecord&)>& sink);

std::string csv_row(const BenchRecord& r);

}  // namespace sbrf
