#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sbrf {

/// A documented precondition of a tree or bit-vector operation was violated
/// (e.g. find_close on a closing parenthesis).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed newick text. Carries the 0-based character offset of the
/// offending input and the tree (1 or 2, 0 for single-tree parses).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, int tree, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  int tree() const noexcept { return tree_; }

 private:
  std::size_t offset_;
  int tree_;
};

/// Input is valid newick but does not fit the requested labelling mode or
/// metric (e.g. an internal label in leaf-labelled mode, wRF without weights).
class ModeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The two trees do not carry the same label set.
class LabelMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Corrupt or incompatible packed-tree bytes.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sbrf
