#pragma once

#include <tuple>
#include <vector>

#include "racp/common.hpp"
#include "racp/dense.hpp"

namespace racp {

/// Dense vector with finite entries; construction rejects NaN/Inf.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::vector<double> v);
  static Vector zeros(index_t n);

  index_t size() const { return static_cast<index_t>(values_.size()); }
  double operator[](index_t i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return values_; }
  const double* data() const { return values_.data(); }

 private:
  std::vector<double> values_;
};

/// Compressed sparse row matrix, the single working storage format.
/// Column indices are sorted and unique within each row. Explicitly stored
/// zeros are legal and deliberately kept by the arithmetic kernels so that
/// result patterns depend only on input patterns, never on values.
struct SparseMatrix {
  index_t n_rows = 0;
  index_t n_cols = 0;
  std::vector<index_t> row_offsets;  // size n_rows + 1
  std::vector<index_t> col_indices;  // size nnz
  std::vector<double> values;        // size nnz

  index_t nnz() const { return static_cast<index_t>(col_indices.size()); }

  /// Checks the structural invariants (offset monotonicity, index bounds,
  /// per-row sorted unique columns, finite values). Throws std::invalid_argument.
  void validate() const;
};

using Triplet = std::tuple<index_t, index_t, double>;

SparseMatrix identity(index_t n);
SparseMatrix from_diag(const std::vector<double>& d);
/// Duplicate triplets are summed (assembly semantics). Entries that sum to
/// exactly zero stay stored.
SparseMatrix from_triplets(index_t n_rows, index_t n_cols, std::vector<Triplet> triplets);
/// Exact zeros of the dense input are not stored.
SparseMatrix from_dense(const DenseMatrix& d);
DenseMatrix to_dense(const SparseMatrix& m);

/// y = m * x on raw buffers; x and y must not alias.
void spmv_raw(const SparseMatrix& m, const double* x, double* y);
Vector spmv(const SparseMatrix& m, const Vector& x);

/// Sparse matrix product. The pattern is the full symbolic product pattern:
/// entries whose values cancel to zero are kept.
SparseMatrix spmm(const SparseMatrix& a, const SparseMatrix& b);

SparseMatrix transpose(const SparseMatrix& m);

/// a + scale * b with the union pattern of both inputs, cancellations kept.
SparseMatrix sparse_add(const SparseMatrix& a, const SparseMatrix& b, double scale = 1.0);

SparseMatrix scale_columns(const SparseMatrix& m, const std::vector<double>& s);
SparseMatrix scale_rows(const SparseMatrix& m, const std::vector<double>& s);

/// Dense principal submatrix m(idx, idx). idx must be strictly increasing.
DenseMatrix gather_submatrix(const SparseMatrix& m, const std::vector<index_t>& idx);

/// (m + m^T) / 2 for a matrix with symmetric pattern; the result is stored
/// bitwise symmetric. Throws std::invalid_argument if the pattern is not symmetric.
SparseMatrix symmetrize(const SparseMatrix& m);

std::vector<double> extract_diagonal(const SparseMatrix& m);

/// True when both matrices have identical dimensions, patterns and values.
bool identical(const SparseMatrix& a, const SparseMatrix& b);
/// True when patterns coincide (values ignored).
bool same_pattern(const SparseMatrix& a, const SparseMatrix& b);

double frobenius_norm(const SparseMatrix& m);

// Cost accounting: multiply-add counts as 2 flops, vector adds and copies
// are not charged.
inline flops_t spmv_flops(const SparseMatrix& m) { return 2 * m.nnz(); }
inline flops_t diag_apply_flops(index_t k) { return k; }

// Small dense-vector helpers shared by the iterative solvers.
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);

}  // namespace racp
