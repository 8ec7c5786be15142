#include "racp/inner_solver.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace racp {

SparseCholesky SparseCholesky::factor(const SparseMatrix& spd, bool restrict_to_pattern,
                                      double pivot_rel_tol) {
  if (spd.n_rows != spd.n_cols) throw std::invalid_argument("cholesky: matrix not square");
  const index_t n = spd.n_rows;

  double max_diag = 0.0;
  {
    std::vector<double> d = extract_diagonal(spd);
    for (double v : d) max_diag = std::max(max_diag, std::abs(v));
  }

  // Up-looking factorization, one row of L at a time. w holds the current
  // row; finished columns are kept as (row, value) lists for the updates.
  std::vector<std::vector<std::pair<index_t, double>>> cols(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  std::vector<index_t> marker(static_cast<std::size_t>(n), -1);
  std::vector<double> diag(static_cast<std::size_t>(n), 0.0);
  std::priority_queue<index_t, std::vector<index_t>, std::greater<index_t>> pending;

  SparseMatrix l;
  l.n_rows = l.n_cols = n;
  l.row_offsets.assign(static_cast<std::size_t>(n) + 1, 0);

  for (index_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (index_t k = spd.row_offsets[static_cast<std::size_t>(i)];
         k < spd.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
      index_t j = spd.col_indices[static_cast<std::size_t>(k)];
      if (j > i) break;  // only the lower triangle is read
      double v = spd.values[static_cast<std::size_t>(k)];
      if (j == i) {
        d = v;
      } else {
        w[static_cast<std::size_t>(j)] = v;
        marker[static_cast<std::size_t>(j)] = i;
        pending.push(j);
      }
    }

    index_t row_begin = static_cast<index_t>(l.col_indices.size());
    while (!pending.empty()) {
      index_t j = pending.top();
      pending.pop();
      double x = w[static_cast<std::size_t>(j)] / diag[static_cast<std::size_t>(j)];
      l.col_indices.push_back(j);
      l.values.push_back(x);
      d -= x * x;
      for (const auto& [k, v] : cols[static_cast<std::size_t>(j)]) {
        if (marker[static_cast<std::size_t>(k)] == i) {
          w[static_cast<std::size_t>(k)] -= v * x;
        } else if (!restrict_to_pattern) {
          marker[static_cast<std::size_t>(k)] = i;
          w[static_cast<std::size_t>(k)] = -v * x;
          pending.push(k);
        }
      }
    }

    if (!(d > pivot_rel_tol * max_diag))
      throw SingularBlockError("cholesky: pivot breakdown at row " + std::to_string(i), i);
    double li = std::sqrt(d);
    diag[static_cast<std::size_t>(i)] = li;
    for (index_t k = row_begin; k < static_cast<index_t>(l.col_indices.size()); ++k)
      cols[static_cast<std::size_t>(l.col_indices[static_cast<std::size_t>(k)])].emplace_back(
          i, l.values[static_cast<std::size_t>(k)]);
    l.col_indices.push_back(i);
    l.values.push_back(li);
    l.row_offsets[static_cast<std::size_t>(i) + 1] = static_cast<index_t>(l.col_indices.size());
  }

  SparseCholesky out;
  out.l_ = std::move(l);
  out.l_t_ = transpose(out.l_);
  return out;
}

void SparseCholesky::solve_raw(const double* b, double* x) const {
  const index_t n = l_.n_rows;
  for (index_t i = 0; i < n; ++i) {
    double acc = b[i];
    index_t end = l_.row_offsets[static_cast<std::size_t>(i) + 1];
    for (index_t k = l_.row_offsets[static_cast<std::size_t>(i)]; k < end - 1; ++k)
      acc -= l_.values[static_cast<std::size_t>(k)] * x[l_.col_indices[static_cast<std::size_t>(k)]];
    x[i] = acc / l_.values[static_cast<std::size_t>(end - 1)];
  }
  for (index_t i = n - 1; i >= 0; --i) {
    double acc = x[i];
    index_t begin = l_t_.row_offsets[static_cast<std::size_t>(i)];
    index_t end = l_t_.row_offsets[static_cast<std::size_t>(i) + 1];
    for (index_t k = begin + 1; k < end; ++k)
      acc -= l_t_.values[static_cast<std::size_t>(k)] * x[l_t_.col_indices[static_cast<std::size_t>(k)]];
    x[i] = acc / l_t_.values[static_cast<std::size_t>(begin)];
  }
}

const char* inner_kind_name(InnerKind k) {
  switch (k) {
    case InnerKind::exact_factor:
      return "exact";
    case InnerKind::jacobi:
      return "jacobi";
    default:
      return "ic0";
  }
}

void InnerSolver::apply_raw(const double* x, double* y) const {
  if (kind == InnerKind::jacobi) {
    for (index_t i = 0; i < n; ++i) y[i] = diag_inv[static_cast<std::size_t>(i)] * x[i];
  } else {
    chol.solve_raw(x, y);
  }
}

Vector InnerSolver::apply(const Vector& v) const {
  if (v.size() != n) throw std::invalid_argument("inner solver: size mismatch");
  std::vector<double> y(static_cast<std::size_t>(n));
  apply_raw(v.data(), y.data());
  return Vector(std::move(y));
}

InnerSolver build_inner_solver(InnerKind kind, const SparseMatrix& spd) {
  InnerSolver s;
  s.kind = kind;
  s.n = spd.n_rows;
  switch (kind) {
    case InnerKind::exact_factor: {
      s.chol = SparseCholesky::factor(spd, /*restrict_to_pattern=*/false);
      s.spd_form = spd;
      s.flops_per_apply = s.chol.solve_flops();
      break;
    }
    case InnerKind::jacobi: {
      std::vector<double> d = extract_diagonal(spd);
      s.diag_inv.resize(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(d[i] > 0.0))
          throw SingularBlockError("jacobi inner: nonpositive diagonal entry",
                                   static_cast<index_t>(i));
        s.diag_inv[i] = 1.0 / d[i];
      }
      s.spd_form = from_diag(d);
      s.flops_per_apply = diag_apply_flops(s.n);
      break;
    }
    case InnerKind::ic0: {
      try {
        s.chol = SparseCholesky::factor(spd, /*restrict_to_pattern=*/true);
      } catch (const SingularBlockError&) {
        SparseMatrix shifted = sparse_add(spd, from_diag(extract_diagonal(spd)), 1e-3);
        s.chol = SparseCholesky::factor(shifted, /*restrict_to_pattern=*/true);
        s.shift_applied = true;
      }
      s.spd_form = symmetrize(spmm(s.chol.lower(), transpose(s.chol.lower())));
      s.flops_per_apply = s.chol.solve_flops();
      break;
    }
  }
  return s;
}

}  // namespace racp
