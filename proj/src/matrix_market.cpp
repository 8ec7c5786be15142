#include "racp/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace racp {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("matrix market: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw IoError("matrix market: empty file " + path);
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate" ||
      lower(field) != "real")
    throw IoError("matrix market: unsupported header in " + path + ": " + line);
  bool symmetric;
  if (lower(symmetry) == "general") {
    symmetric = false;
  } else if (lower(symmetry) == "symmetric") {
    symmetric = true;
  } else {
    throw IoError("matrix market: unsupported symmetry '" + symmetry + "' in " + path);
  }

  index_t n_rows = -1, n_cols = -1, n_entries = -1;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '%') continue;
    std::istringstream sizes(line);
    if (!(sizes >> n_rows >> n_cols >> n_entries))
      throw IoError("matrix market: malformed size line in " + path);
    break;
  }
  if (n_rows < 0 || n_cols < 0 || n_entries < 0)
    throw IoError("matrix market: missing size line in " + path);

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(n_entries));
  index_t seen = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::istringstream entry(line);
    index_t i, j;
    double v;
    if (!(entry >> i >> j >> v)) throw IoError("matrix market: malformed entry in " + path);
    if (i < 1 || i > n_rows || j < 1 || j > n_cols)
      throw IoError("matrix market: index out of range in " + path);
    if (symmetric && j > i)
      throw IoError("matrix market: symmetric file stores an upper-triangle entry in " + path);
    triplets.emplace_back(i - 1, j - 1, v);
    if (symmetric && i != j) triplets.emplace_back(j - 1, i - 1, v);
    ++seen;
  }
  if (seen != n_entries)
    throw IoError("matrix market: entry count mismatch in " + path + " (declared " +
                  std::to_string(n_entries) + ", found " + std::to_string(seen) + ")");

  // Duplicates are rejected rather than summed: files written by this
  // toolkit never contain them, so a duplicate signals a corrupt input.
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  for (std::size_t k = 1; k < triplets.size(); ++k)
    if (std::get<0>(triplets[k]) == std::get<0>(triplets[k - 1]) &&
        std::get<1>(triplets[k]) == std::get<1>(triplets[k - 1]))
      throw IoError("matrix market: duplicate entry in " + path);

  return from_triplets(n_rows, n_cols, std::move(triplets));
}

void write_matrix_market(const SparseMatrix& m, const std::string& path, bool symmetric) {
  if (symmetric) {
    SparseMatrix t = transpose(m);
    if (!identical(m, t))
      throw std::invalid_argument("matrix market: symmetric write requires a symmetric matrix");
  }
  std::ofstream out(path);
  if (!out) throw IoError("matrix market: cannot write " + path);
  out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general") << "\n";

  index_t count = 0;
  if (symmetric) {
    for (index_t i = 0; i < m.n_rows; ++i)
      for (index_t k = m.row_offsets[static_cast<std::size_t>(i)];
           k < m.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
        if (m.col_indices[static_cast<std::size_t>(k)] <= i) ++count;
  } else {
    count = m.nnz();
  }

  out << m.n_rows << " " << m.n_cols << " " << count << "\n";
  out << std::setprecision(17);
  for (index_t i = 0; i < m.n_rows; ++i)
    for (index_t k = m.row_offsets[static_cast<std::size_t>(i)];
         k < m.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
      index_t j = m.col_indices[static_cast<std::size_t>(k)];
      if (symmetric && j > i) continue;
      out << i + 1 << " " << j + 1 << " " << m.values[static_cast<std::size_t>(k)] << "\n";
    }
  if (!out) throw IoError("matrix market: write failed for " + path);
}

}  // namespace racp
