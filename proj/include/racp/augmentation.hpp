#pragma once

#include <string>

#include "racp/system.hpp"

namespace racp {

/// Diagonal augmentation block C for the stabilized system; all entries
/// are strictly positive.
struct AugmentationDiag {
  std::vector<double> entries;
  std::string recipe;
  double omega = 1.0;  // only meaningful for the norm-ratio recipe
};

/// C_ii = r_i^T (A|_{b_i})^{-1} r_i where b_i is the nonzero row set of
/// column i of B, r_i the corresponding values, and A|_{b_i} the principal
/// submatrix of A on exactly that set. Fails with SingularBlockError when
/// the local factorization pivot drops below 1e-12 * ||A|_{b_i}||_2, and on
/// zero columns of B.
AugmentationDiag compute_c_local_solve(const SaddleSystem& sys);

/// C_ii = omega * ||r_i||_2^2 / ||A|_{b_i}||_2. Survives singular local
/// blocks as long as the local norm is positive.
AugmentationDiag compute_c_norm_ratio(const SaddleSystem& sys, double omega = 1.0);

/// Single global value gamma = ||B||_F^2 / ||A||_F for every entry.
AugmentationDiag compute_c_global(const SaddleSystem& sys);

struct PrimalSchur {
  SparseMatrix s_u;  // A + B C^{-1} B^T
};

/// Assembles the primal Schur complement sparsely. The pattern is exactly
/// pattern(A) union pattern(B B^T); exact cancellations stay stored.
PrimalSchur form_primal_schur(const SaddleSystem& sys, const AugmentationDiag& c);

}  // namespace racp
