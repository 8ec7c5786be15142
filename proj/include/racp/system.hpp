#pragma once

#include <string>

#include "racp/sparse.hpp"

namespace racp {

/// Symmetric saddle-point system
///
///   [ A   B ] [u]   [f_u]
///   [ B^T 0 ] [t] = [f_t]
///
/// with A (n_u x n_u) symmetric positive semidefinite, B (n_u x n_t) of
/// full column rank, n_u > n_t. The transpose of B is materialized once at
/// construction and reused everywhere a column sweep of B is needed.
struct SaddleSystem {
  SparseMatrix a;
  SparseMatrix b;
  SparseMatrix b_t;
  Vector rhs;  // length n_u + n_t
  std::string label;

  index_t n_u() const { return a.n_rows; }
  index_t n_t() const { return b.n_cols; }
  index_t size() const { return n_u() + n_t(); }
};

/// Validates dimensions and caches B^T. An empty rhs defaults to all ones.
SaddleSystem make_saddle_system(SparseMatrix a, SparseMatrix b, Vector rhs = {},
                                std::string label = {});

/// y = [[A, B], [B^T, 0]] * x without forming the block matrix.
void saddle_apply(const SaddleSystem& sys, const double* x, double* y);

/// Dense assembly of the block matrix, for small-scale oracle work.
DenseMatrix saddle_dense(const SaddleSystem& sys);

struct SystemReport {
  double symmetry_defect = 0.0;  // max |A_ij - A_ji|
  double lambda_min_a = 0.0;
  double sigma_min_b = 0.0;
  double sigma_max_b = 0.0;
  index_t nullity_a = 0;
  index_t rank_saddle = 0;
  bool a_symmetric = false;
  bool b_full_rank = false;
  bool saddle_nonsingular = false;
};

/// Dense diagnostic pass: symmetry defect, extreme spectra of the blocks,
/// nullity of A and the rank of the full block matrix.
SystemReport verify_system(const SaddleSystem& sys);

}  // namespace racp
