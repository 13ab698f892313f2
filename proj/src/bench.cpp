#include "sbrf/bench.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "sbrf/baseline.hpp"
#include "sbrf/error.hpp"
#include "sbrf/memtrack.hpp"
#include "sbrf/newick.hpp"

namespace sbrf {

namespace {

std::uint64_t to_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number '" + std::string(s) + "' in size list");
  }
  return v;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<std::uint64_t> parse_sizes(std::string_view text) {
  std::vector<std::uint64_t> out;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(to_u64(item));
      continue;
    }
    std::string_view rest = item.substr(dots + 2);
    std::uint64_t step = 1;
    if (const std::size_t colon = rest.find(':'); colon != std::string_view::npos) {
      step = to_u64(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const std::uint64_t lo = to_u64(item.substr(0, dots));
    const std::uint64_t hi = to_u64(rest);
    if (step == 0 || lo > hi) throw std::invalid_argument("bad range '" + std::string(item) + "'");
    for (std::uint64_t v = lo; v <= hi; v += step) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty size list");
  for (std::uint64_t v : out) {
    if (v == 0) throw std::invalid_argument("sizes must be positive");
  }
  return out;
}

std::pair<std::string, std::string> bench_pair(std::uint64_t leaves, std::uint64_t pair_seed, Metric metric,
                                               Arity arity) {
  GenOptions g;
  g.leaves = leaves;
  g.full_labels = is_extended(metric);
  g.weights = is_weighted(metric);
  g.arity = arity;
  g.seed = 2 * pair_seed;
  std::string a = generate_tree(g);
  g.seed = 2 * pair_seed + 1;
  return {std::move(a), generate_tree(g)};
}

BenchRecord bench_once(const std::string& text1, const std::string& text2, std::uint64_t leaves, std::uint64_t seed,
                       Metric metric, Algorithm algorithm) {
  BenchRecord r;
  r.n_leaves = leaves;
  r.seed = seed;
  r.metric = metric;
  r.algorithm = algorithm;
  const std::uint64_t base = memtrack::reset_peak();

  if (algorithm == Algorithm::day) {
    if (metric != Metric::rf) throw ModeError("the day baseline computes rf only");
    auto t0 = std::chrono::steady_clock::now();
    const baseline::DayPair input = baseline::day_parse(text1, text2);
    r.parse_seconds = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    r.value = baseline::day_distance(input).value();
    r.distance_seconds = seconds_since(t0);
  } else {
    ParseOptions opts;
    opts.mode = is_extended(metric) ? LabelMode::full : LabelMode::leaf;
    opts.weighted = is_weighted(metric);
    opts.keep_labels = false;
    auto t0 = std::chrono::steady_clock::now();
    const TreePair pair = parse_pair(text1, text2, opts);
    r.parse_seconds = seconds_since(t0);
    const Traversal trav = algorithm == Algorithm::postorder ? Traversal::postorder : Traversal::nextsibling;
    t0 = std::chrono::steady_clock::now();
    r.value = compute_distance(pair, metric, trav).value();
    r.distance_seconds = seconds_since(t0);
  }
  const std::uint64_t peak = memtrack::peak_bytes();
  r.peak_tracked_bytes = peak > base ? peak - base : 0;
  return r;
}

void run_bench(const BenchConfig& config, const std::function<void(const BenchRecord&)>& sink) {
  for (std::uint64_t leaves : config.sizes) {
    for (std::uint64_t k = 0; k < config.pairs; ++k) {
      const std::uint64_t seed = config.seed + k;
      for (Metric m : config.metrics) {
        const auto [a, b] = bench_pair(leaves, seed, m, config.arity);
        for (Algorithm alg : config.algorithms) {
          if (alg == Algorithm::day && m != Metric::rf) continue;
          sink(bench_once(a, b, leaves, seed, m, alg));
        }
      }
    }
  }
}

std::string csv_row(const BenchRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%llu,%llu,%s,%s,%.9f,%.9f,%llu,%.12g", static_cast<unsigned long long>(r.n_leaves),
                static_cast<unsigned long long>(r.seed), std::string(to_string(r.metric)).c_str(),
                std::string(to_string(r.algorithm)).c_str(), r.parse_seconds, r.distance_seconds,
                static_cast<unsigned long long>(r.peak_tracked_bytes), r.value);
  return buf;
}

}  // namespace sbrf
