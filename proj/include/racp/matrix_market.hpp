#pragma once

#include <string>

#include "racp/sparse.hpp"

namespace racp {

/// Reads a Matrix Market coordinate file (real, general or symmetric,
/// 1-based indices). Symmetric files are expanded to full storage.
/// Throws IoError on malformed headers, inconsistent counts, out-of-range
/// indices or duplicate entries.
SparseMatrix read_matrix_market(const std::string& path);

/// Writes coordinate format with 17 significant digits so that a
/// write/read round trip reproduces the matrix entrywise. With
/// `symmetric` set, only the lower triangle is stored; the matrix must
/// then be exactly symmetric.
void write_matrix_market(const SparseMatrix& m, const std::string& path, bool symmetric = false);

}  // namespace racp
