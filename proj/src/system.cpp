#include "racp/system.hpp"

#include <cmath>
#include <stdexcept>

namespace racp {

SaddleSystem make_saddle_system(SparseMatrix a, SparseMatrix b, Vector rhs, std::string label) {
  if (a.n_rows != a.n_cols) throw std::invalid_argument("saddle system: A must be square");
  if (b.n_rows != a.n_rows) throw std::invalid_argument("saddle system: B row count must match A");
  if (b.n_cols >= a.n_rows)
    throw std::invalid_argument("saddle system: expected fewer multipliers than displacements");
  a.validate();
  b.validate();
  SaddleSystem sys;
  sys.a = std::move(a);
  sys.b = std::move(b);
  sys.b_t = transpose(sys.b);
  if (rhs.size() == 0) {
    sys.rhs = Vector(std::vector<double>(static_cast<std::size_t>(sys.size()), 1.0));
  } else {
    if (rhs.size() != sys.size()) throw std::invalid_argument("saddle system: rhs length mismatch");
    sys.rhs = std::move(rhs);
  }
  sys.label = std::move(label);
  return sys;
}

void saddle_apply(const SaddleSystem& sys, const double* x, double* y) {
  const index_t nu = sys.n_u();
  spmv_raw(sys.a, x, y);
  if (sys.n_t() > 0) {
    std::vector<double> tmp(static_cast<std::size_t>(nu));
    spmv_raw(sys.b, x + nu, tmp.data());
    for (index_t i = 0; i < nu; ++i) y[i] += tmp[static_cast<std::size_t>(i)];
    spmv_raw(sys.b_t, x, y + nu);
  }
}

DenseMatrix saddle_dense(const SaddleSystem& sys) {
  const index_t nu = sys.n_u();
  const index_t n = sys.size();
  DenseMatrix d(n, n);
  DenseMatrix da = to_dense(sys.a);
  for (index_t i = 0; i < nu; ++i)
    for (index_t j = 0; j < nu; ++j) d.at(i, j) = da.at(i, j);
  for (index_t i = 0; i < nu; ++i)
    for (index_t k = sys.b.row_offsets[static_cast<std::size_t>(i)];
         k < sys.b.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
      index_t j = sys.b.col_indices[static_cast<std::size_t>(k)];
      double v = sys.b.values[static_cast<std::size_t>(k)];
      d.at(i, nu + j) = v;
      d.at(nu + j, i) = v;
    }
  return d;
}

SystemReport verify_system(const SaddleSystem& sys) {
  SystemReport r;

  SparseMatrix diff = sparse_add(sys.a, transpose(sys.a), -1.0);
  for (double v : diff.values) r.symmetry_defect = std::max(r.symmetry_defect, std::abs(v));
  double a_scale = 0.0;
  for (double v : sys.a.values) a_scale = std::max(a_scale, std::abs(v));
  r.a_symmetric = r.symmetry_defect <= 1e-12 * std::max(1.0, a_scale);

  std::vector<double> eig_a = sym_eigenvalues(to_dense(sys.a));
  r.lambda_min_a = eig_a.empty() ? 0.0 : eig_a.front();
  double lambda_max = eig_a.empty() ? 0.0 : std::abs(eig_a.back());
  for (double ev : eig_a)
    if (std::abs(ev) <= 1e-10 * std::max(lambda_max, 1e-300)) ++r.nullity_a;

  if (sys.n_t() > 0) {
    std::vector<double> sv = singular_values(to_dense(sys.b));
    r.sigma_max_b = sv.front();
    r.sigma_min_b = sv.back();
    r.b_full_rank = r.sigma_min_b > 1e-10 * r.sigma_max_b;
  } else {
    r.b_full_rank = true;
  }

  r.rank_saddle = dense_rank(saddle_dense(sys));
  r.saddle_nonsingular = r.rank_saddle == sys.size();
  return r;
}

}  // namespace racp
