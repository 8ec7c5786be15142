#include "racp/augmentation.hpp"

#include <cmath>
#include <stdexcept>

namespace racp {

namespace {

// Nonzero row set and values of column i of B, read off the cached transpose.
void column_support(const SaddleSystem& sys, index_t col, std::vector<index_t>& idx,
                    std::vector<double>& vals) {
  idx.clear();
  vals.clear();
  const SparseMatrix& bt = sys.b_t;
  for (index_t k = bt.row_offsets[static_cast<std::size_t>(col)];
       k < bt.row_offsets[static_cast<std::size_t>(col) + 1]; ++k) {
    idx.push_back(bt.col_indices[static_cast<std::size_t>(k)]);
    vals.push_back(bt.values[static_cast<std::size_t>(k)]);
  }
}

}  // namespace

AugmentationDiag compute_c_local_solve(const SaddleSystem& sys) {
  AugmentationDiag c;
  c.recipe = "local_solve";
  c.entries.reserve(static_cast<std::size_t>(sys.n_t()));
  std::vector<index_t> idx;
  std::vector<double> vals;
  for (index_t l = 0; l < sys.n_t(); ++l) {
    column_support(sys, l, idx, vals);
    if (idx.empty())
      throw std::invalid_argument("augmentation: zero column " + std::to_string(l) + " of B");
    DenseMatrix block = gather_submatrix(sys.a, idx);
    double v = spd_quadratic_form_inverse(block, vals, 1e-12, l);
    if (!(v > 0.0)) throw SingularBlockError("augmentation: nonpositive local entry", l);
    c.entries.push_back(v);
  }
  return c;
}

AugmentationDiag compute_c_norm_ratio(const SaddleSystem& sys, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("augmentation: omega must be positive");
  AugmentationDiag c;
  c.recipe = "norm_ratio";
  c.omega = omega;
  c.entries.reserve(static_cast<std::size_t>(sys.n_t()));
  std::vector<index_t> idx;
  std::vector<double> vals;
  for (index_t l = 0; l < sys.n_t(); ++l) {
    column_support(sys, l, idx, vals);
    if (idx.empty())
      throw std::invalid_argument("augmentation: zero column " + std::to_string(l) + " of B");
    double r2 = 0.0;
    for (double v : vals) r2 += v * v;
    double block_norm = spectral_norm_2(gather_submatrix(sys.a, idx));
    if (!(block_norm > 0.0))
      throw SingularBlockError("augmentation: zero local block of A", l);
    c.entries.push_back(omega * r2 / block_norm);
  }
  return c;
}

AugmentationDiag compute_c_global(const SaddleSystem& sys) {
  AugmentationDiag c;
  c.recipe = "global_gamma";
  double a_norm = frobenius_norm(sys.a);
  if (!(a_norm > 0.0)) throw SingularBlockError("augmentation: zero Frobenius norm of A");
  double gamma = frobenius_norm(sys.b);
  gamma = gamma * gamma / a_norm;
  if (!(gamma > 0.0)) throw SingularBlockError("augmentation: zero coupling block");
  c.entries.assign(static_cast<std::size_t>(sys.n_t()), gamma);
  return c;
}

PrimalSchur form_primal_schur(const SaddleSystem& sys, const AugmentationDiag& c) {
  if (static_cast<index_t>(c.entries.size()) != sys.n_t())
    throw std::invalid_argument("primal schur: augmentation size mismatch");
  std::vector<double> inv(c.entries.size());
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (!(c.entries[i] > 0.0))
      throw std::invalid_argument("primal schur: augmentation entries must be positive");
    inv[i] = 1.0 / c.entries[i];
  }
  PrimalSchur s;
  s.s_u = sparse_add(sys.a, spmm(scale_columns(sys.b, inv), sys.b_t));
  return s;
}

}  // namespace racp
