#include "sbrf/baseline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "sbrf/error.hpp"

namespace sbrf::baseline {

namespace {

bool is_delim(char c) {
  switch (c) {
    case '(': case ')': case ',': case ':': case ';':
    case ' ': case '\t': case '\n': case '\r':
      return true;
    default:
      return false;
  }
}

// Event-driven newick reader. Callbacks:
//   open()                      '(' starts an internal node
//   leaf(label, weight)         a leaf, weight NaN when absent
//   close(label, weight)        ')' ends the innermost internal node
template <class Sink>
void scan(std::string_view text, int tree_no, Sink& sink) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  int depth = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(i, tree_no, msg); };
  auto skip_ws = [&] {
    while (i < n && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
  };
  auto token = [&] {
    skip_ws();
    const std::size_t s = i;
    while (i < n && !is_delim(text[i])) ++i;
    return text.substr(s, i - s);
  };
  auto weight = [&] {
    skip_ws();
    if (i >= n || text[i] != ':') return std::numeric_limits<double>::quiet_NaN();
    ++i;
    std::string_view t = token();
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
      fail("bad weight");
    }
    return v;
  };

  bool expect_item = true;
  for (;;) {
    skip_ws();
    if (i == n) fail("unexpected end of input");
    const char c = text[i];
    if (expect_item) {
      if (c == '(') {
        ++i;
        ++depth;
        sink.open();
        continue;
      }
      if (c == ')' || c == ',' || c == ';') fail("expected a subtree");
      const std::string_view label = token();
      sink.leaf(label, weight());
      expect_item = false;
    } else if (c == ',') {
      if (depth == 0) fail("',' at top level");
      ++i;
      expect_item = true;
    } else if (c == ')') {
      if (depth == 0) fail("unbalanced ')'");
      ++i;
      --depth;
      const std::string_view label = token();
      sink.close(label, weight());
    } else if (c == ';') {
      if (depth != 0) fail("missing ')'");
      ++i;
      skip_ws();
      if (i != n) fail("text after ';'");
      return;
    } else {
      fail("unexpected character");
    }
  }
}

struct PlainSink {
  PlainTree& t;
  std::vector<std::uint32_t> stack;

  std::uint32_t add(std::string_view label, double w) {
    const auto v = static_cast<std::uint32_t>(t.parent.size());
    t.parent.push_back(stack.empty() ? -1 : static_cast<std::int64_t>(stack.back()));
    if (!stack.empty()) t.children[stack.back()].push_back(v);
    t.children.emplace_back();
    t.label.emplace_back(label);
    t.weight.push_back(std::isnan(w) ? 0.0 : w);
    return v;
  }
  void open() { stack.push_back(add({}, 0.0)); }
  void leaf(std::string_view label, double w) { add(label, w); }
  void close(std::string_view label, double w) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    t.label[v] = std::string(label);
    t.weight[v] = std::isnan(w) ? 0.0 : w;
  }
};

}  // namespace

std::size_t PlainTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(children.begin(), children.end(),
                                                [](const auto& c) { return c.empty(); }));
}

std::string PlainTree::to_newick(bool with_weights) const {
  std::string out;
  if (parent.empty()) return out;
  auto tail = [&](std::uint32_t v) {
    out += label[v];
    if (with_weights && v != 0) {
      char buf[32];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, weight[v]);
      out += ':';
      out.append(buf, ptr);
    }
  };
  // (node, next child to emit)
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto& [v, k] = stack.back();
    if (children[v].empty()) {
      tail(v);
      stack.pop_back();
      continue;
    }
    if (k == children[v].size()) {
      out += ')';
      tail(v);
      stack.pop_back();
      continue;
    }
    out += k == 0 ? '(' : ',';
    const std::uint32_t c = children[v][k++];
    stack.push_back({c, 0});
  }
  out += ';';
  return out;
}

PlainTree parse_plain(std::string_view text) {
  PlainTree t;
  PlainSink sink{t, {}};
  scan(text, 0, sink);
  if (t.parent.empty()) throw ParseError(0, 0, "empty tree");
  t.weight[0] = 0.0;
  return t;
}

LabelIds::LabelIds(const PlainTree& reference) {
  for (const std::string& l : reference.label) {
    if (l.empty()) continue;
    const auto id = static_cast<std::uint32_t>(ids_.size());
    if (!ids_.emplace(l, id).second) throw ParseError(0, 1, "duplicate label '" + l + "'");
  }
}

std::uint32_t LabelIds::id(const std::string& label) const {
  const auto it = ids_.find(label);
  if (it == ids_.end()) throw LabelMismatchError("label '" + label + "' is not in tree 1");
  return it->second;
}

ClusterSet naive_clusters(const PlainTree& tree, const LabelIds& ids, LabelMode mode) {
  const std::size_t n = tree.size();
  std::vector<std::vector<std::uint32_t>> below(n);
  // Children have larger pre-order numbers than their parent.
  for (std::size_t k = n; k-- > 0;) {
    auto& c = below[k];
    const bool leaf = tree.is_leaf(static_cast<std::uint32_t>(k));
    if (leaf || mode == LabelMode::full) {
      if (tree.label[k].empty()) throw ModeError("unlabelled node in cluster oracle");
      c.push_back(ids.id(tree.label[k]));
    }
    for (std::uint32_t ch : tree.children[k]) c.insert(c.end(), below[ch].begin(), below[ch].end());
  }
  ClusterSet out;
  for (std::size_t k = 0; k < n; ++k) {
    std::sort(below[k].begin(), below[k].end());
    out.emplace(std::move(below[k]), tree.weight[k]);
  }
  return out;
}

double naive_distance(const ClusterSet& c1, const ClusterSet& c2, Metric metric) {
  const bool weighted = is_weighted(metric);
  double only1 = 0.0, only2 = 0.0, both = 0.0;
  for (const auto& [cluster, w] : c1) {
    const auto it = c2.find(cluster);
    if (it == c2.end()) only1 += weighted ? w : 1.0;
    else if (weighted) both += std::abs(w - it->second);
  }
  for (const auto& [cluster, w] : c2) {
    if (!c1.count(cluster)) only2 += weighted ? w : 1.0;
  }
  return both + only1 + only2;
}

double naive_metric(std::string_view text1, std::string_view text2, Metric metric) {
  const PlainTree a = parse_plain(text1);
  const PlainTree b = parse_plain(text2);
  const LabelIds ids(a);
  const LabelMode mode = is_extended(metric) ? LabelMode::full : LabelMode::leaf;
  return naive_distance(naive_clusters(a, ids, mode), naive_clusters(b, ids, mode), metric);
}

namespace {

struct DaySink {
  std::vector<std::int32_t>& post;
  std::unordered_map<std::string, std::int32_t>* ranks;  // filled for tree 1
  const std::unordered_map<std::string, std::int32_t>* lookup;  // used for tree 2
  std::vector<char>* seen;
  int tree_no;
  std::vector<std::int32_t> children{0};

  void open() {
    ++children.back();
    children.push_back(0);
  }
  void leaf(std::string_view label, double) {
    ++children.back();
    if (label.empty()) throw ParseError(0, tree_no, "leaf without a label");
    std::string key(label);
    std::int32_t r;
    if (ranks) {
      r = static_cast<std::int32_t>(ranks->size()) + 1;
      if (!ranks->emplace(std::move(key), r).second) {
        throw ParseError(0, tree_no, "duplicate label '" + std::string(label) + "'");
      }
    } else {
      const auto it = lookup->find(key);
      if (it == lookup->end()) throw LabelMismatchError("label '" + key + "' is not in tree 1");
      r = it->second;
      if ((*seen)[r]) throw ParseError(0, tree_no, "duplicate label '" + key + "'");
      (*seen)[r] = 1;
    }
    post.push_back(r);
  }
  void close(std::string_view label, double) {
    if (!label.empty()) throw ModeError("internal label in leaf-labelled mode");
    const std::int32_t k = children.back();
    children.pop_back();
    if (k < 2) throw ModeError("internal node with a single child in leaf-labelled mode");
    post.push_back(-k);
  }
};

}  // namespace

DayPair day_parse(std::string_view text1, std::string_view text2) {
  DayPair out;
  std::unordered_map<std::string, std::int32_t> ranks;
  ranks.reserve(text1.size() / 4 + 1);
  {
    DaySink s1{out.post1, &ranks, nullptr, nullptr, 1};
    scan(text1, 1, s1);
  }
  out.leaf_count = static_cast<std::uint32_t>(ranks.size());
  std::vector<char> seen(out.leaf_count + 1, 0);
  DaySink s2{out.post2, nullptr, &ranks, &seen, 2};
  scan(text2, 2, s2);
  if (std::count(seen.begin() + 1, seen.end(), 1) != static_cast<std::ptrdiff_t>(out.leaf_count)) {
    throw LabelMismatchError("tree 2 is missing labels of tree 1");
  }
  return out;
}

DayPair day_input(const TreePair& pair) {
  if (pair.mode != LabelMode::leaf) throw ModeError("rf requires leaf-labelled trees");
  DayPair out;
  const BpTree& t1 = pair.t1;
  const BpTree& t2 = pair.t2;
  out.leaf_count = static_cast<std::uint32_t>(t1.leaf_count());

  // tree-2 pre-order index -> tree-1 leaf rank
  std::vector<std::int32_t> rank2(t2.node_count() + 1, 0);
  {
    std::int32_t rank = 0;
    NodeIndex pre = 0;
    const BitVector& b = t1.bits();
    for (Pos p = 1; p <= b.size(); ++p) {
      if (!b.bit(p)) continue;
      ++pre;
      if (p < b.size() && !b.bit(p + 1)) rank2[pair.code_map.to_tree2(pre)] = ++rank;
    }
  }
  auto emit = [](const BpTree& t, std::vector<std::int32_t>& post, auto leaf_value) {
    const BitVector& b = t.bits();
    post.reserve(t.node_count());
    std::vector<std::int32_t> children{0};
    NodeIndex pre = 0;
    for (Pos p = 1; p <= b.size(); ++p) {
      if (b.bit(p)) {
        ++pre;
        ++children.back();
        if (p < b.size() && !b.bit(p + 1)) {
          post.push_back(leaf_value(pre));
          ++p;
        } else {
          children.push_back(0);
        }
      } else {
        post.push_back(-children.back());
        children.pop_back();
      }
    }
  };
  std::int32_t rank1 = 0;
  emit(t1, out.post1, [&](NodeIndex) { return ++rank1; });
  emit(t2, out.post2, [&](NodeIndex pre) { return rank2[pre]; });
  return out;
}

DistanceResult day_distance(const DayPair& input) {
  const std::uint32_t leaves = input.leaf_count;
  DayTables tab;
  tab.table_left.assign(leaves + 1, 0);
  tab.table_right.assign(leaves + 1, 0);

  // Post-order summary: per node the smallest and largest leaf rank below it,
  // the number of leaves below it and the node count of its subtree. The
  // arrays are indexed by post-order number and reused for tree 2.
  auto sweep = [&](const std::vector<std::int32_t>& post, auto on_internal) {
    const std::size_t n = post.size();
    tab.left.resize(n);
    tab.right.resize(n);
    tab.leaves.resize(n);
    tab.size.resize(n);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t v = 0; v < n; ++v) {
      const std::int32_t x = post[v];
      if (x > 0) {
        tab.left[v] = tab.right[v] = static_cast<std::uint32_t>(x);
        tab.leaves[v] = tab.size[v] = 1;
        stack.push_back(v);
        continue;
      }
      const auto k = static_cast<std::size_t>(-x);
      std::uint32_t lo = std::numeric_limits<std::uint32_t>::max(), hi = 0, lv = 0, sz = 1;
      for (std::size_t c = stack.size() - k; c < stack.size(); ++c) {
        const std::uint32_t u = stack[c];
        lo = std::min(lo, tab.left[u]);
        hi = std::max(hi, tab.right[u]);
        lv += tab.leaves[u];
        sz += tab.size[u];
      }
      stack.resize(stack.size() - k);
      tab.left[v] = lo;
      tab.right[v] = hi;
      tab.leaves[v] = lv;
      tab.size[v] = sz;
      on_internal(v);
      stack.push_back(v);
    }
  };

  // Tree 1: leaf ranks are in-order, so every cluster is the interval
  // [left, right]. A node that is the last child of its parent is filed under
  // its left end, any other node (including the root) under its right end;
  // without unary nodes neither key can collide.
  std::uint64_t internal1 = 0;
  {
    std::vector<char> is_last(input.post1.size(), 0);
    sweep(input.post1, [&](std::uint32_t v) {
      ++internal1;
      is_last[v - 1] = 1;  // in post-order the last child directly precedes its parent
    });
    for (std::uint32_t v = 0; v < input.post1.size(); ++v) {
      if (input.post1[v] > 0) continue;
      const bool root = v + 1 == input.post1.size();
      if (!root && is_last[v]) tab.table_left[tab.left[v]] = tab.right[v];
      else tab.table_right[tab.right[v]] = tab.left[v];
    }
  }

  DistanceResult r;
  r.metric = Metric::rf;
  r.algorithm = Algorithm::day;
  std::uint64_t internal2 = 0, equal = 0;
  sweep(input.post2, [&](std::uint32_t v) {
    ++internal2;
    const std::uint32_t lo = tab.left[v], hi = tab.right[v];
    if (hi - lo + 1 != tab.leaves[v]) return;
    if (tab.table_left[lo] == hi || tab.table_right[hi] == lo) ++equal;
  });

  r.internal1 = internal1;
  r.internal2 = internal2;
  r.equal_clusters = equal;
  r.raw = internal1 + internal2 - 2 * equal;
  r.halved = static_cast<double>(r.raw) / 2.0;
  return r;
}

DistanceResult day_rf(std::string_view text1, std::string_view text2) {
  return day_distance(day_parse(text1, text2));
}

DistanceResult day_rf(const TreePair& pair) { return day_distance(day_input(pair)); }

}  // namespace sbrf::baseline
