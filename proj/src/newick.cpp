#include "sbrf/newick.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "sbrf/error.hpp"
#include "sbrf/exact_sum.hpp"

namespace sbrf {

std::optional<std::string_view> LabelTable::label(NodeIndex i) const {
  if (i == 0 || i > names_.size() || names_[i - 1].empty()) return std::nullopt;
  return std::string_view(names_[i - 1]);
}

std::optional<NodeIndex> LabelTable::lookup(std::string_view label) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!names_[i].empty() && names_[i] == label) return static_cast<NodeIndex>(i + 1);
  }
  return std::nullopt;
}

std::unordered_map<std::string_view, NodeIndex> LabelTable::index() const {
  std::unordered_map<std::string_view, NodeIndex> out;
  out.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!names_[i].empty()) out.emplace(names_[i], static_cast<NodeIndex>(i + 1));
  }
  return out;
}

std::size_t LabelTable::labelled_count() const {
  std::size_t c = 0;
  for (const auto& s : names_) c += s.empty() ? 0 : 1;
  return c;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_delim(char c) { return c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || is_space(c); }

// [+-]? (digits [. digits*]? | . digits) ([eE] [+-]? digits)?
bool valid_weight_token(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
  }
  if (digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

// Neumaier-compensated running sum.
struct TreeBuild {
  BitVectorBuilder bits;
  WeightVector weights;
  NodeIndex nodes = 0;
};

// One pass over a newick string. Emits 1 on '(' , "10" per leaf and 0 on ')'.
// `on_label(index, label, offset)` fires for every labelled node.
template <class OnLabel>
void scan_tree(std::string_view text, int tree_no, LabelMode mode, bool weighted, TreeBuild& out,
               ExactSum& weight_sum, OnLabel&& on_label) {
  struct Open {
    NodeIndex index;
    std::uint32_t children;
  };
  std::vector<Open> stack;
  const std::size_t n = text.size();
  std::size_t i = 0;

  auto fail = [&](std::size_t at, const std::string& msg) { throw ParseError(at, tree_no, msg); };
  auto skip_ws = [&] {
    while (i < n && is_space(text[i])) ++i;
  };
  auto read_token = [&] {
    skip_ws();
    const std::size_t start = i;
    while (i < n && !is_delim(text[i])) ++i;
    return text.substr(start, i - start);
  };
  auto new_node = [&] {
    if (out.nodes == std::numeric_limits<NodeIndex>::max()) fail(i, "too many nodes");
    ++out.nodes;
    if (weighted) out.weights.push_back(0.0);
    return out.nodes;
  };
  auto read_weight = [&](NodeIndex node) {
    skip_ws();
    if (i >= n || text[i] != ':') return;
    ++i;
    skip_ws();
    const std::size_t start = i;
    const std::string_view tok = read_token();
    if (!valid_weight_token(tok)) fail(start, "malformed weight literal '" + std::string(tok) + "'");
    const char* first = tok.data() + (tok.front() == '+' ? 1 : 0);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
      fail(start, "malformed weight literal '" + std::string(tok) + "'");
    }
    // The root has no entering edge: its weight literal is accepted and dropped.
    if (weighted && node != 1) {
      out.weights[node - 1] = value;
      weight_sum.add(value);
    }
  };

  skip_ws();
  if (i == n || text[i] == ';') fail(i, "empty tree");

  bool expect_item = true;
  for (;;) {
    skip_ws();
    if (i == n) {
      if (!stack.empty()) fail(n, "unbalanced parentheses: missing ')'");
      fail(n, "missing ';' terminator");
    }
    const char c = text[i];
    if (expect_item) {
      if (c == ';') fail(i, "expected a subtree");
      if (!stack.empty()) ++stack.back().children;
      if (c == '(') {
        ++i;
        stack.push_back({new_node(), 0});
        out.bits.push_back(true);
        continue;
      }
      const std::size_t start = i;
      const NodeIndex node = new_node();
      out.bits.push_back(true);
      out.bits.push_back(false);
      const std::string_view label = read_token();
      if (label.empty()) {
        if (mode != LabelMode::any) fail(start, "leaf without a label");
      } else {
        on_label(node, label, start);
      }
      read_weight(node);
      expect_item = false;
      continue;
    }

    if (c == ',') {
      if (stack.empty()) fail(i, "',' outside parentheses");
      ++i;
      expect_item = true;
    } else if (c == ')') {
      if (stack.empty()) fail(i, "unbalanced parentheses: unexpected ')'");
      const Open top = stack.back();
      stack.pop_back();
      ++i;
      out.bits.push_back(false);
      skip_ws();
      const std::size_t start = i;
      const std::string_view label = read_token();
      if (mode == LabelMode::leaf) {
        if (!label.empty()) {
          throw ModeError("tree " + std::to_string(tree_no) + ", offset " + std::to_string(start) +
                          ": internal label '" + std::string(label) + "' in leaf-labelled mode");
        }
        if (top.children == 1) {
          throw ModeError("tree " + std::to_string(tree_no) + ", offset " + std::to_string(start) +
                          ": internal node with a single child in leaf-labelled mode");
        }
      }
      if (label.empty()) {
        if (mode == LabelMode::full) {
          throw ModeError("tree " + std::to_string(tree_no) + ", offset " + std::to_string(start) +
                          ": internal node without a label in fully-labelled mode");
        }
      } else {
        on_label(top.index, label, start);
      }
      read_weight(top.index);
    } else if (c == ';') {
      if (!stack.empty()) fail(i, "unbalanced parentheses: missing ')'");
      ++i;
      skip_ws();
      if (i != n) fail(i, "unexpected text after ';'");
      return;
    } else {
      fail(i, std::string("expected ',', ')' or ';' but found '") + c + "'");
    }
  }
}

BpTree finish_tree(TreeBuild& build, int tree_no) {
  try {
    return BpTree(std::move(build.bits).build());
  } catch (const PreconditionError& e) {
    throw ParseError(0, tree_no, e.what());
  }
}

}  // namespace

TreePair parse_pair(std::string_view text1, std::string_view text2, LabelMode mode, bool weighted) {
  ParseOptions opts;
  opts.mode = mode;
  opts.weighted = weighted;
  return parse_pair(text1, text2, opts);
}

TreePair parse_pair(std::string_view text1, std::string_view text2, const ParseOptions& options) {
  if (options.mode == LabelMode::any) throw ModeError("parse_pair: mode must be leaf or full");
  TreePair pair;
  pair.mode = options.mode;
  ExactSum weight_sum;

  // Transient label -> tree-1 index table; keys view into text1.
  std::unordered_map<std::string_view, NodeIndex> table;
  table.reserve(text1.size() / 4 + 1);
  std::vector<std::string> names1;

  TreeBuild b1;
  b1.bits.reserve(text1.size());
  scan_tree(text1, 1, options.mode, options.weighted, b1, weight_sum,
            [&](NodeIndex node, std::string_view label, std::size_t offset) {
              if (!table.emplace(label, node).second) {
                throw ParseError(offset, 1, "duplicate label '" + std::string(label) + "'");
              }
              if (options.keep_labels) {
                if (names1.size() < node) names1.resize(node);
                names1[node - 1] = std::string(label);
              }
            });
  pair.t1 = finish_tree(b1, 1);
  if (options.keep_labels) names1.resize(b1.nodes);

  std::vector<std::uint32_t> slots(b1.nodes, 0);
  std::vector<std::string> names2;
  std::size_t matched = 0;
  TreeBuild b2;
  b2.bits.reserve(text2.size());
  scan_tree(text2, 2, options.mode, options.weighted, b2, weight_sum,
            [&](NodeIndex node, std::string_view label, std::size_t offset) {
              const auto it = table.find(label);
              if (it == table.end()) {
                throw LabelMismatchError("label '" + std::string(label) + "' of tree 2 does not occur in tree 1");
              }
              auto& slot = slots[it->second - 1];
              if (slot != 0) throw ParseError(offset, 2, "duplicate label '" + std::string(label) + "'");
              slot = node;
              ++matched;
              if (options.keep_labels) {
                if (names2.size() < node) names2.resize(node);
                names2[node - 1] = std::string(label);
              }
            });
  pair.t2 = finish_tree(b2, 2);
  if (options.keep_labels) names2.resize(b2.nodes);

  if (matched != table.size()) {
    for (const auto& [label, node] : table) {
      if (slots[node - 1] == 0) {
        throw LabelMismatchError("label '" + std::string(label) + "' of tree 1 does not occur in tree 2");
      }
    }
  }

  if (options.on_phase) options.on_phase(ParsePhase::table_built);
  std::unordered_map<std::string_view, NodeIndex>().swap(table);
  if (options.on_phase) options.on_phase(ParsePhase::table_released);

  pair.code_map = CodeMap(std::move(slots));
  pair.labels1 = LabelTable(std::move(names1));
  pair.labels2 = LabelTable(std::move(names2));
  if (options.weighted) {
    pair.w1 = std::move(b1.weights);
    pair.w2 = std::move(b2.weights);
    pair.weights_sum = weight_sum.value();
    pair.weights_total = std::move(weight_sum);
  }
  return pair;
}

ParsedTree parse_tree(std::string_view text, LabelMode mode, bool weighted) {
  ExactSum weight_sum;
  std::unordered_set<std::string_view> seen;
  std::vector<std::string> names;
  TreeBuild b;
  b.bits.reserve(text.size());
  scan_tree(text, 0, mode, weighted, b, weight_sum, [&](NodeIndex node, std::string_view label, std::size_t offset) {
    if (!seen.insert(label).second) throw ParseError(offset, 0, "duplicate label '" + std::string(label) + "'");
    if (names.size() < node) names.resize(node);
    names[node - 1] = std::string(label);
  });
  ParsedTree out{finish_tree(b, 0), LabelTable(), std::nullopt};
  names.resize(b.nodes);
  out.labels = LabelTable(std::move(names));
  if (weighted) out.weights = std::move(b.weights);
  return out;
}

namespace {

void append_weight(std::string& out, double w) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
  out.push_back(':');
  out.append(buf, ptr);
}

}  // namespace

std::string write_newick(const BpTree& tree, const LabelTable& labels, const WeightVector* weights) {
  const BitVector& bv = tree.bits();
  const Pos n = bv.size();
  std::string out;
  out.reserve(n * 3);
  std::vector<NodeIndex> open;
  NodeIndex index = 0;
  auto finish_node = [&](NodeIndex node) {
    if (const auto l = labels.label(node)) out.append(*l);
    if (weights && node != 1) append_weight(out, (*weights)[node - 1]);
  };
  for (Pos p = 1; p <= n; ++p) {
    if (bv.bit(p)) {
      if (p > 1 && !bv.bit(p - 1)) out.push_back(',');
      ++index;
      if (!bv.bit(p + 1)) {
        finish_node(index);
        ++p;
      } else {
        out.push_back('(');
        open.push_back(index);
      }
    } else {
      out.push_back(')');
      finish_node(open.back());
      open.pop_back();
    }
  }
  out.push_back(';');
  return out;
}

bool has_internal_labels(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != ')') continue;
    std::size_t j = i + 1;
    while (j < text.size() && is_space(text[j])) ++j;
    if (j < text.size() && !is_delim(text[j])) return true;
  }
  return false;
}

}  // namespace sbrf
