// sbrf: Robinson-Foulds distances over succinct trees.
//
//   sbrf dist A.nwk B.nwk [--metric rf|erf|wrf|werf] [--algo postorder|nextsibling|day]
//                         [--mode auto|leaf|full] [--raw] [--emit-common]
//   sbrf gen --leaves N [--seed S] [--full-labels] [--weights] [--arity binary|random]
//   sbrf bench --sizes LIST [--pairs K] [--seed S] [--metrics LIST] [--algos LIST] [--csv PATH]
//   sbrf pack IN OUT [--weights] [--report]
//   sbrf unpack IN [OUT]
//
// Exit status: 0 ok, 1 I/O, 2 parse or format error, 3 mode/metric mismatch,
// 4 label-set mismatch; command-line usage errors use CLI11's codes.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sbrf/baseline.hpp"
#include "sbrf/bench.hpp"
#include "sbrf/distance.hpp"
#include "sbrf/error.hpp"
#include "sbrf/generator.hpp"
#include "sbrf/newick.hpp"
#include "sbrf/treeio.hpp"

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw IoError("cannot write '" + path + "'");
}

std::string format_weighted(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_count(double v) {
  if (v == std::floor(v)) return std::to_string(static_cast<long long>(v));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct DistArgs {
  std::string file1, file2;
  std::string metric = "rf";
  std::string algo = "postorder";
  std::string mode = "auto";
  bool raw = false;
  bool emit_common = false;
};

int run_dist(const DistArgs& a) {
  const sbrf::Metric metric = *sbrf::parse_metric(a.metric);
  const sbrf::Algorithm algo = *sbrf::parse_algorithm(a.algo);
  const std::string t1 = read_file(a.file1);
  const std::string t2 = read_file(a.file2);

  if (algo == sbrf::Algorithm::day) {
    if (metric != sbrf::Metric::rf) throw sbrf::ModeError("--algo day supports --metric rf only");
    if (a.emit_common) throw sbrf::ModeError("--emit-common is not available with --algo day");
    if (a.mode == "full") throw sbrf::ModeError("--algo day needs leaf-labelled trees");
    const sbrf::DistanceResult r = sbrf::baseline::day_rf(t1, t2);
    std::cout << (a.raw ? std::to_string(r.raw) : format_count(r.halved)) << '\n';
    return 0;
  }

  sbrf::LabelMode mode;
  if (a.mode == "leaf") {
    mode = sbrf::LabelMode::leaf;
  } else if (a.mode == "full") {
    mode = sbrf::LabelMode::full;
  } else {
    const bool l1 = sbrf::has_internal_labels(t1);
    const bool l2 = sbrf::has_internal_labels(t2);
    if (l1 != l2) throw sbrf::ModeError("only one of the trees has internal labels; pass --mode explicitly");
    mode = l1 ? sbrf::LabelMode::full : sbrf::LabelMode::leaf;
  }
  const bool weighted = sbrf::is_weighted(metric);
  if (weighted && t1.find(':') == std::string::npos && t2.find(':') == std::string::npos) {
    throw sbrf::ModeError(std::string(sbrf::to_string(metric)) + " needs branch lengths");
  }

  sbrf::ParseOptions opts;
  opts.mode = mode;
  opts.weighted = weighted;
  opts.keep_labels = false;
  const sbrf::TreePair pair = sbrf::parse_pair(t1, t2, opts);
  const auto traversal =
      algo == sbrf::Algorithm::postorder ? sbrf::Traversal::postorder : sbrf::Traversal::nextsibling;
  const sbrf::DistanceResult r = sbrf::compute_distance(pair, metric, traversal, {a.emit_common, nullptr});

  if (weighted) std::cout << format_weighted(r.weighted) << '\n';
  else std::cout << (a.raw ? std::to_string(r.raw) : format_count(r.halved)) << '\n';
  if (r.common) {
    for (const auto& m : *r.common) std::cout << m.tree1 << '\t' << m.tree2 << '\n';
  }
  return 0;
}

struct BenchArgs {
  std::string sizes;
  std::uint64_t pairs = 5;
  std::uint64_t seed = 0;
  std::string metrics = "rf";
  std::string algos = "postorder,nextsibling,day";
  std::string arity = "binary";
  std::string csv = "-";
};

int run_bench(const BenchArgs& a) {
  sbrf::BenchConfig config;
  try {
    config.sizes = sbrf::parse_sizes(a.sizes);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--sizes", e.what());
  }
  config.pairs = a.pairs;
  config.seed = a.seed;
  config.arity = a.arity == "random" ? sbrf::Arity::random : sbrf::Arity::binary;
  config.metrics.clear();
  for (const auto& m : split(a.metrics)) {
    const auto v = sbrf::parse_metric(m);
    if (!v) throw CLI::ValidationError("--metrics", "unknown metric '" + m + "'");
    config.metrics.push_back(*v);
  }
  config.algorithms.clear();
  for (const auto& s : split(a.algos)) {
    const auto v = sbrf::parse_algorithm(s);
    if (!v) throw CLI::ValidationError("--algos", "unknown algorithm '" + s + "'");
    config.algorithms.push_back(*v);
  }

  std::ofstream file;
  if (a.csv != "-") {
    file.open(a.csv);
    if (!file) throw IoError("cannot write '" + a.csv + "'");
  }
  std::ostream& out = a.csv == "-" ? std::cout : file;
  out << sbrf::kBenchCsvHeader << '\n';
  sbrf::run_bench(config, [&](const sbrf::BenchRecord& r) { out << sbrf::csv_row(r) << '\n' << std::flush; });
  if (!out) throw IoError("cannot write '" + a.csv + "'");
  return 0;
}

void print_report(const sbrf::SizeReport& s) {
  std::cout << "n " << s.n << '\n'
            << "bp_bits " << s.bp_bits << '\n'
            << "support_bits " << s.support_bits << '\n'
            << "map_bits " << s.map_bits << '\n'
            << "total_bits " << s.total_bits << '\n'
            << "comparison_bits_day " << s.comparison_bits_day << '\n';
}

int run_pack(const std::string& in, const std::string& out, bool weights, bool report) {
  const std::string text = read_file(in);
  const sbrf::ParsedTree t = sbrf::parse_tree(text, sbrf::LabelMode::any, weights);
  const auto bytes = sbrf::pack(t.tree, t.labels, t.weights ? &*t.weights : nullptr);
  write_file(out, bytes.data(), bytes.size());
  if (report) print_report(sbrf::size_report(t.tree));
  return 0;
}

int run_unpack(const std::string& in, const std::string& out) {
  const std::string data = read_file(in);
  const auto* begin = reinterpret_cast<const std::uint8_t*>(data.data());
  const sbrf::ParsedTree t = sbrf::unpack({begin, data.size()});
  const std::string text = sbrf::write_newick(t.tree, t.labels, t.weights ? &*t.weights : nullptr) + "\n";
  if (out.empty() || out == "-") std::cout << text;
  else write_file(out, text.data(), text.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robinson-Foulds distances over succinct balanced-parentheses trees"};
  app.require_subcommand(1);

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "distance between two newick trees");
  dist_cmd->add_option("file1", dist.file1)->required();
  dist_cmd->add_option("file2", dist.file2)->required();
  dist_cmd->add_option("--metric", dist.metric)->check(CLI::IsMember({"rf", "erf", "wrf", "werf"}));
  dist_cmd->add_option("--algo", dist.algo)->check(CLI::IsMember({"postorder", "nextsibling", "day"}));
  dist_cmd->add_option("--mode", dist.mode)->check(CLI::IsMember({"auto", "leaf", "full"}));
  dist_cmd->add_flag("--raw", dist.raw, "print the symmetric-difference count instead of half of it");
  dist_cmd->add_flag("--emit-common", dist.emit_common, "list matched clusters as pre-order index pairs");

  sbrf::GenOptions gen;
  std::string arity = "binary";
  auto* gen_cmd = app.add_subcommand("gen", "random tree on stdout");
  gen_cmd->add_option("--leaves", gen.leaves)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 31));
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_flag("--full-labels", gen.full_labels);
  gen_cmd->add_flag("--weights", gen.weights);
  gen_cmd->add_option("--arity", arity)->check(CLI::IsMember({"binary", "random"}));

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "timing grid as CSV");
  bench_cmd->add_option("--sizes", bench.sizes, "e.g. 10000..100000:10000")->required();
  bench_cmd->add_option("--pairs", bench.pairs)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--metrics", bench.metrics);
  bench_cmd->add_option("--algos", bench.algos);
  bench_cmd->add_option("--arity", bench.arity)->check(CLI::IsMember({"binary", "random"}));
  bench_cmd->add_option("--csv", bench.csv, "output path, '-' for stdout");

  std::string pack_in, pack_out;
  bool pack_weights = false, pack_report = false;
  auto* pack_cmd = app.add_subcommand("pack", "newick to packed bytes");
  pack_cmd->add_option("in", pack_in)->required();
  pack_cmd->add_option("out", pack_out)->required();
  pack_cmd->add_flag("--weights", pack_weights, "keep branch lengths");
  pack_cmd->add_flag("--report", pack_report, "print the size report");

  std::string unpack_in, unpack_out;
  auto* unpack_cmd = app.add_subcommand("unpack", "packed bytes to newick");
  unpack_cmd->add_option("in", unpack_in)->required();
  unpack_cmd->add_option("out", unpack_out);

  try {
    app.parse(argc, argv);
    if (*dist_cmd) return run_dist(dist);
    if (*gen_cmd) {
      gen.arity = arity == "random" ? sbrf::Arity::random : sbrf::Arity::binary;
      std::cout << sbrf::generate_tree(gen) << '\n';
      return 0;
    }
    if (*bench_cmd) return run_bench(bench);
    if (*pack_cmd) return run_pack(pack_in, pack_out, pack_weights, pack_report);
    if (*unpack_cmd) return run_unpack(unpack_in, unpack_out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const sbrf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const sbrf::FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return 2;
  } catch (const sbrf::ModeError& e) {
    std::cerr << "mode error: " << e.what() << '\n';
    return 3;
  } catch (const sbrf::LabelMismatchError& e) {
    std::cerr << "label mismatch: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
