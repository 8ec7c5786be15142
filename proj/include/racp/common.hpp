#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace racp {

using index_t = std::int64_t;
using flops_t = std::int64_t;

/// Raised when a nominally invertible block turns out to be singular
/// (local augmentation block, factorization pivot, MCP leading block).
/// block_index identifies the offending column/block where applicable, -1 otherwise.
class SingularBlockError : public std::runtime_error {
 public:
  SingularBlockError(const std::string& what, index_t block_index = -1)
      : std::runtime_error(what), block_index(block_index) {}
  index_t block_index;
};

/// Raised on malformed external input (Matrix Market files, CSV).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace racp
