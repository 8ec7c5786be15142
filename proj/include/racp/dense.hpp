#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "racp/common.hpp"

namespace racp {

/// Row-major dense matrix. Used for small oracle computations (spectra,
/// singular values, local blocks); sparse storage is the working format.
struct DenseMatrix {
  index_t n_rows = 0;
  index_t n_cols = 0;
  std::vector<double> values;

  DenseMatrix() = default;
  DenseMatrix(index_t rows, index_t cols)
      : n_rows(rows), n_cols(cols), values(static_cast<std::size_t>(rows * cols), 0.0) {}

  double& at(index_t i, index_t j) { return values[static_cast<std::size_t>(i * n_cols + j)]; }
  double at(index_t i, index_t j) const { return values[static_cast<std::size_t>(i * n_cols + j)]; }
};

DenseMatrix dense_identity(index_t n);
DenseMatrix dense_matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix dense_transpose(const DenseMatrix& a);
DenseMatrix dense_add(const DenseMatrix& a, const DenseMatrix& b, double b_scale = 1.0);

/// Largest singular value, computed by a dense SVD.
double spectral_norm_2(const DenseMatrix& m);

/// Singular values in descending order.
std::vector<double> singular_values(const DenseMatrix& m);

/// Eigenvalues of a general square matrix. `symmetric` selects the
/// self-adjoint solver (real output, but still returned as complex for a
/// uniform interface). Throws std::length_error when n exceeds `cap` and
/// std::runtime_error if the iteration fails to converge.
std::vector<std::complex<double>> dense_eigensolve(const DenseMatrix& m, bool symmetric = false,
                                                   index_t cap = 2000);

/// Eigenvalues of a symmetric matrix, ascending.
std::vector<double> sym_eigenvalues(const DenseMatrix& m);

/// Full eigendecomposition of a symmetric matrix: m = vectors * diag(values) * vectors^T.
struct SymEigenDecomposition {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column k is the eigenvector for values[k]
};
SymEigenDecomposition sym_eigendecompose(const DenseMatrix& m);

/// Inverse square root of an SPD matrix via full symmetric eigendecomposition.
/// Throws SingularBlockError if the smallest eigenvalue is not positive.
DenseMatrix sym_inverse_sqrt(const DenseMatrix& m);

/// Numerical rank with threshold rel_tol * sigma_max.
index_t dense_rank(const DenseMatrix& m, double rel_tol = 1e-10);

/// r^T m^{-1} r for a symmetric positive definite block, via pivoted LDLT.
/// Throws SingularBlockError tagged with `block_label` when the smallest
/// pivot drops below pivot_rel_tol * ||m||_2 or turns negative.
double spd_quadratic_form_inverse(const DenseMatrix& m, const std::vector<double>& r,
                                  double pivot_rel_tol, index_t block_label);

/// Persistent LU factorization with partial pivoting for repeated solves.
class DenseLuSolver {
 public:
  explicit DenseLuSolver(const DenseMatrix& m);
  std::vector<double> solve(const std::vector<double>& rhs) const;
  void solve_raw(const double* rhs, double* x) const;
  index_t size() const { return n_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  index_t n_ = 0;
};

}  // namespace racp
