#pragma once

#include "racp/augmentation.hpp"
#include "racp/sparse.hpp"

namespace racp {

/// Sparse Cholesky factorization L L^T of an SPD matrix in natural order.
/// Exact mode grows fill as needed; pattern-restricted mode drops all fill
/// (zero-fill incomplete factorization). Breakdown, i.e. a pivot at or
/// below pivot_rel_tol * max(diag), raises SingularBlockError tagged with
/// the pivot row.
class SparseCholesky {
 public:
  static SparseCholesky factor(const SparseMatrix& spd, bool restrict_to_pattern,
                               double pivot_rel_tol = 1e-12);

  void solve_raw(const double* b, double* x) const;
  const SparseMatrix& lower() const { return l_; }
  flops_t solve_flops() const { return 4 * l_.nnz(); }
  index_t size() const { return l_.n_rows; }

 private:
  SparseMatrix l_;    // diagonal entry last in each row
  SparseMatrix l_t_;  // cached transpose for the backward sweep
};

enum class InnerKind { exact_factor, jacobi, ic0 };

const char* inner_kind_name(InnerKind k);

/// Approximate inverse of an SPD operator, used both for the primal Schur
/// complement inside the constraint preconditioners and for the leading
/// block of the forward variant. `spd_form` is the SPD matrix the solver
/// effectively inverts (the operator itself for exact_factor, its diagonal
/// for jacobi, L~ L~^T for the incomplete factorization); the spectral
/// bound machinery relies on it.
struct InnerSolver {
  InnerKind kind = InnerKind::exact_factor;
  index_t n = 0;
  std::vector<double> diag_inv;
  SparseCholesky chol;
  SparseMatrix spd_form;
  flops_t flops_per_apply = 0;
  bool shift_applied = false;  // incomplete factorization retried with +1e-3 diag

  void apply_raw(const double* x, double* y) const;
  Vector apply(const Vector& v) const;
};

/// Builds the requested approximation of `spd`. The incomplete
/// factorization retries once with a relative diagonal shift of 1e-3 on
/// breakdown before giving up.
InnerSolver build_inner_solver(InnerKind kind, const SparseMatrix& spd);

inline InnerSolver build_inner_solver(InnerKind kind, const PrimalSchur& s) {
  return build_inner_solver(kind, s.s_u);
}

}  // namespace racp
