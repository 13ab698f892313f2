#include "sbrf/distance.hpp"

#include <algorithm>
#include <cmath>

#include "sbrf/error.hpp"

namespace sbrf {

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::rf: return "rf";
    case Metric::erf: return "erf";
    case Metric::wrf: return "wrf";
    case Metric::werf: return "werf";
  }
  return "?";
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::postorder: return "postorder";
    case Algorithm::nextsibling: return "nextsibling";
    case Algorithm::day: return "day";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view s) {
  for (Metric m : {Metric::rf, Metric::erf, Metric::wrf, Metric::werf}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  for (Algorithm a : {Algorithm::postorder, Algorithm::nextsibling, Algorithm::day}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

bool is_weighted(Metric m) { return m == Metric::wrf || m == Metric::werf; }
bool is_extended(Metric m) { return m == Metric::erf || m == Metric::werf; }

namespace {

// Runs one metric over one traversal. Leaf-labelled metrics fold the mapped
// leaves of each tree-1 cluster with LCA in tree 2 and compare leaf counts;
// extended metrics also fold the internal labels and compare cluster sizes.
// Weighted metrics start from the total weight of both trees and, for every
// common cluster c, replace w1(c) + w2(c) by |w1(c) - w2(c)|.
class Engine {
 public:
  Engine(const TreePair& pair, Metric metric, const DistanceOptions& options)
      : t1_(pair.t1),
        t2_(pair.t2),
        map_(pair.code_map),
        w1_(pair.w1 ? &*pair.w1 : nullptr),
        w2_(pair.w2 ? &*pair.w2 : nullptr),
        extended_(is_extended(metric)),
        weighted_(is_weighted(metric)),
        counters_(options.counters ? options.counters : &scratch_),
        sum_(pair.weights_total) {
    result_.metric = metric;
    if (options.capture) result_.common.emplace();
  }

  DistanceResult run(Traversal traversal) {
    result_.algorithm = traversal == Traversal::postorder ? Algorithm::postorder : Algorithm::nextsibling;
    if (traversal == Traversal::postorder) post_order();
    else next_sibling();
    finish();
    return std::move(result_);
  }

 private:
  Pos mapped(Pos p1) const { return t2_.pre_order_select(map_.to_tree2(t1_.pre_order_map(p1))); }

  Pos fold(Pos acc, Pos x) {
    ++counters_->lca;
    return t2_.lca(acc, x);
  }

  void subtract_common(Pos p1, Pos p2) {
    const double a = (*w1_)[t1_.pre_order_map(p1) - 1];
    const double b = (*w2_)[t2_.pre_order_map(p2) - 1];
    // a + b - |a - b| = 2 min(a, b), exact in floating point.
    sum_.add(-2.0 * std::min(a, b));
  }

  Pos visit_leaf(Pos p) {
    const Pos q = mapped(p);
    // Leaf-labelled trees share every singleton. In fully labelled trees the
    // singleton {x} is common only if x is a leaf in tree 2 as well.
    const bool common = !extended_ || t2_.is_leaf(q);
    if (common) {
      ++common_singletons_;
      if (weighted_) subtract_common(p, q);
    }
    return q;
  }

  // `size1` is cluster_size(t1, p) for extended metrics, unused otherwise.
  void close_internal(Pos p, Pos acc, std::uint64_t size1) {
    bool match;
    if (extended_) {
      ++counters_->cluster_size;
      match = t2_.cluster_size(acc) == size1;
    } else {
      counters_->num_leaves += 2;
      match = t1_.num_leaves(p) == t2_.num_leaves(acc);
    }
    if (!match) return;
    ++result_.equal_clusters;
    if (result_.common) result_.common->push_back({t1_.pre_order_map(p), t2_.pre_order_map(acc)});
    if (weighted_) subtract_common(p, acc);
  }

  void post_order() {
    std::vector<FoldEntry> stack;
    const std::uint64_t n = t1_.node_count();
    for (std::uint64_t i = 1; i <= n; ++i) {
      ++counters_->post_order_select;
      const Pos p = t1_.post_order_select(i);
      if (t1_.is_leaf(p)) {
        stack.push_back({visit_leaf(p), 1});
        continue;
      }
      ++counters_->cluster_size;
      const std::uint64_t size = t1_.cluster_size(p);
      std::uint64_t remaining = size - 1;
      bool have = extended_;
      Pos acc = extended_ ? mapped(p) : 0;
      while (remaining != 0) {
        const FoldEntry e = stack.back();
        stack.pop_back();
        acc = have ? fold(acc, e.lca_pos) : e.lca_pos;
        have = true;
        remaining -= e.size;
      }
      close_internal(p, acc, size);
      stack.push_back({acc, size});
    }
  }

  // Iterative form of the first-child / next-sibling recursion: each frame
  // scans one sibling list and folds the LCA of the clusters it has seen.
  void next_sibling() {
    struct Frame {
      Pos current;
      Pos acc;
      bool have;
    };
    std::vector<Frame> frames;
    frames.push_back({1, 0, false});
    bool entering = true;
    Pos returned = 0;
    while (!frames.empty()) {
      Frame& f = frames.back();
      Pos value;
      if (entering) {
        if (!t1_.is_leaf(f.current)) {
          frames.push_back({t1_.first_child(f.current), 0, false});
          continue;
        }
        value = visit_leaf(f.current);
      } else {
        value = returned;
        std::uint64_t size = 0;
        if (extended_) {
          value = fold(value, mapped(f.current));
          ++counters_->cluster_size;
          size = t1_.cluster_size(f.current);
        }
        close_internal(f.current, value, size);
      }
      f.acc = f.have ? fold(f.acc, value) : value;
      f.have = true;

      std::optional<Pos> sibling;
      if (f.current != 1) {
        ++counters_->next_sibling;
        sibling = t1_.next_sibling(f.current);
      }
      if (sibling) {
        f.current = *sibling;
        entering = true;
      } else {
        returned = f.acc;
        frames.pop_back();
        entering = false;
      }
    }
  }

  void finish() {
    result_.internal1 = t1_.internal_count();
    result_.internal2 = t2_.internal_count();
    const std::uint64_t l1 = t1_.leaf_count();
    const std::uint64_t l2 = t2_.leaf_count();
    result_.unmatched_singletons = (l1 - common_singletons_) + (l2 - common_singletons_);
    result_.raw = result_.internal1 + result_.internal2 - 2 * result_.equal_clusters + result_.unmatched_singletons;
    result_.halved = static_cast<double>(result_.raw) / 2.0;
    if (weighted_) result_.weighted = sum_.value();
  }

  const BpTree& t1_;
  const BpTree& t2_;
  const CodeMap& map_;
  const WeightVector* w1_;
  const WeightVector* w2_;
  bool extended_;
  bool weighted_;
  OpCounters scratch_;
  OpCounters* counters_;
  DistanceResult result_;
  ExactSum sum_;
  std::uint64_t common_singletons_ = 0;
};

void check_mode(const TreePair& pair, Metric metric) {
  if (is_extended(metric) && pair.mode != LabelMode::full) {
    throw ModeError(std::string(to_string(metric)) + " requires fully labelled trees");
  }
  if (!is_extended(metric) && pair.mode != LabelMode::leaf) {
    throw ModeError(std::string(to_string(metric)) + " requires leaf-labelled trees");
  }
  if (is_weighted(metric) && !pair.weighted()) {
    throw ModeError(std::string(to_string(metric)) + " requires edge weights");
  }
}

}  // namespace

DistanceResult compute_distance(const TreePair& pair, Metric metric, Traversal traversal,
                                const DistanceOptions& options) {
  check_mode(pair, metric);
  return Engine(pair, metric, options).run(traversal);
}

DistanceResult rf_postorder(const TreePair& pair, bool capture) {
  return compute_distance(pair, Metric::rf, Traversal::postorder, {capture, nullptr});
}

DistanceResult rf_nextsibling(const TreePair& pair, bool capture) {
  return compute_distance(pair, Metric::rf, Traversal::nextsibling, {capture, nullptr});
}

DistanceResult erf(const TreePair& pair, Traversal traversal, bool capture) {
  return compute_distance(pair, Metric::erf, traversal, {capture, nullptr});
}

DistanceResult wrf(const TreePair& pair, Traversal traversal, bool capture) {
  return compute_distance(pair, Metric::wrf, traversal, {capture, nullptr});
}

DistanceResult werf(const TreePair& pair, Traversal traversal, bool capture) {
  return compute_distance(pair, Metric::werf, traversal, {capture, nullptr});
}

}  // namespace sbrf
