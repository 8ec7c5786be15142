#include "racp/preconditioners.hpp"

#include <cstring>
#include <stdexcept>

namespace racp {

PrecondOp identity_op(index_t n) {
  PrecondOp p;
  p.n = n;
  p.flops_per_apply = 0;
  p.apply = [n](const double* x, double* y) {
    std::memcpy(y, x, static_cast<std::size_t>(n) * sizeof(double));
  };
  return p;
}

CostModel cost_model(flops_t flops_per_apply, const SaddleSystem& sys) {
  CostModel m;
  m.flops_per_apply = flops_per_apply;
  m.matvec_flops = 2 * (sys.a.nnz() + 2 * sys.b.nnz());
  m.c_app = m.matvec_flops > 0
                ? static_cast<double>(flops_per_apply) / static_cast<double>(m.matvec_flops)
                : 0.0;
  return m;
}

const char* racp_variant_name(RacpVariant v) { return v == RacpVariant::m ? "racp-m" : "racp-ma"; }

void RacpPreconditioner::apply_raw(const double* v, double* w) const {
  const double* v_u = v;
  const double* v_t = v + n_u;
  double* w_u = w;
  double* w_t = w + n_u;
  const double sign = variant == RacpVariant::m ? 1.0 : -1.0;

  std::vector<double> ct(static_cast<std::size_t>(n_t));
  for (index_t i = 0; i < n_t; ++i) ct[static_cast<std::size_t>(i)] = c_inv[static_cast<std::size_t>(i)] * v_t[i];

  std::vector<double> t1(static_cast<std::size_t>(n_u), 0.0);
  if (n_t > 0) spmv_raw(b, ct.data(), t1.data());
  for (index_t i = 0; i < n_u; ++i) t1[static_cast<std::size_t>(i)] = v_u[i] + sign * t1[static_cast<std::size_t>(i)];

  inner.apply_raw(t1.data(), w_u);

  if (n_t > 0) {
    std::vector<double> bt(static_cast<std::size_t>(n_t));
    spmv_raw(b_t, w_u, bt.data());
    for (index_t i = 0; i < n_t; ++i)
      w_t[i] = c_inv[static_cast<std::size_t>(i)] * (bt[static_cast<std::size_t>(i)] - sign * v_t[i]);
  }
}

Vector RacpPreconditioner::apply(const Vector& v) const {
  if (v.size() != n_u + n_t) throw std::invalid_argument("racp apply: size mismatch");
  std::vector<double> w(static_cast<std::size_t>(n_u + n_t));
  apply_raw(v.data(), w.data());
  return Vector(std::move(w));
}

PrecondOp RacpPreconditioner::op() const {
  PrecondOp p;
  p.n = n_u + n_t;
  p.flops_per_apply = flops_per_apply;
  p.apply = [this](const double* x, double* y) { apply_raw(x, y); };
  return p;
}

RacpPreconditioner build_racp(const SaddleSystem& sys, const AugmentationDiag& c,
                              InnerKind inner_kind, RacpVariant variant) {
  RacpPreconditioner p;
  p.variant = variant;
  p.n_u = sys.n_u();
  p.n_t = sys.n_t();
  p.b = sys.b;
  p.b_t = sys.b_t;
  p.c_inv.resize(c.entries.size());
  if (static_cast<index_t>(c.entries.size()) != p.n_t)
    throw std::invalid_argument("racp build: augmentation size mismatch");
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    if (!(c.entries[i] > 0.0))
      throw std::invalid_argument("racp build: augmentation entries must be positive");
    p.c_inv[i] = 1.0 / c.entries[i];
  }
  p.inner = build_inner_solver(inner_kind, form_primal_schur(sys, c));
  p.flops_per_apply = p.inner.flops_per_apply + 2 * spmv_flops(sys.b) + 2 * diag_apply_flops(p.n_t);
  return p;
}

void McpPreconditioner::apply_raw(const double* v, double* w) const {
  const double* v_u = v;
  const double* v_t = v + n_u;
  double* w_u = w;
  double* w_t = w + n_u;

  std::vector<double> t(static_cast<std::size_t>(n_u));
  inner_a.apply_raw(v_u, t.data());

  if (n_t > 0) {
    std::vector<double> s(static_cast<std::size_t>(n_t));
    spmv_raw(b_t, t.data(), s.data());
    for (index_t i = 0; i < n_t; ++i) s[static_cast<std::size_t>(i)] = v_t[i] - s[static_cast<std::size_t>(i)];
    // S~ = -(B^T diag(A)^{-1} B); the stored factor is of the positive form.
    std::vector<double> wt(static_cast<std::size_t>(n_t));
    schur_factor.solve_raw(s.data(), wt.data());
    for (index_t i = 0; i < n_t; ++i) w_t[i] = -wt[static_cast<std::size_t>(i)];

    std::vector<double> bw(static_cast<std::size_t>(n_u));
    spmv_raw(b, w_t, bw.data());
    std::vector<double> abw(static_cast<std::size_t>(n_u));
    inner_a.apply_raw(bw.data(), abw.data());
    for (index_t i = 0; i < n_u; ++i) w_u[i] = t[static_cast<std::size_t>(i)] - abw[static_cast<std::size_t>(i)];
  } else {
    for (index_t i = 0; i < n_u; ++i) w_u[i] = t[static_cast<std::size_t>(i)];
  }
}

Vector McpPreconditioner::apply(const Vector& v) const {
  if (v.size() != n_u + n_t) throw std::invalid_argument("mcp apply: size mismatch");
  std::vector<double> w(static_cast<std::size_t>(n_u + n_t));
  apply_raw(v.data(), w.data());
  return Vector(std::move(w));
}

PrecondOp McpPreconditioner::op() const {
  PrecondOp p;
  p.n = n_u + n_t;
  p.flops_per_apply = flops_per_apply;
  p.apply = [this](const double* x, double* y) { apply_raw(x, y); };
  return p;
}

McpPreconditioner build_mcp(const SaddleSystem& sys, InnerKind inner_a) {
  McpPreconditioner p;
  p.n_u = sys.n_u();
  p.n_t = sys.n_t();
  p.b = sys.b;
  p.b_t = sys.b_t;
  try {
    p.inner_a = build_inner_solver(inner_a, sys.a);
  } catch (const SingularBlockError& e) {
    throw SingularBlockError("leading block singular", e.block_index);
  }

  std::vector<double> d = extract_diagonal(sys.a);
  std::vector<double> d_inv(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0))
      throw SingularBlockError("leading block singular", static_cast<index_t>(i));
    d_inv[i] = 1.0 / d[i];
  }
  if (p.n_t > 0) {
    SparseMatrix k = spmm(sys.b_t, scale_rows(sys.b, d_inv));
    try {
      p.schur_factor = SparseCholesky::factor(k, /*restrict_to_pattern=*/false);
    } catch (const SingularBlockError& e) {
      throw SingularBlockError("dual Schur block singular", e.block_index);
    }
    p.flops_per_apply = 2 * p.inner_a.flops_per_apply + 2 * spmv_flops(sys.b) +
                        p.schur_factor.solve_flops();
  } else {
    p.flops_per_apply = p.inner_a.flops_per_apply;
  }
  return p;
}

}  // namespace racp
