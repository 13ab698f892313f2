#include "sbrf/error.hpp"

namespace sbrf {

namespace {

std::string decorate(std::size_t offset, int tree, const std::string& message) {
  std::string out = tree > 0 ? "tree " + std::to_string(tree) + ", " : std::string();
  out += "offset " + std::to_string(offset) + ": " + message;
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t offset, int tree, const std::string& message)
    : std::runtime_error(decorate(offset, tree, message)), offset_(offset), tree_(tree) {}

}  // namespace sbrf
