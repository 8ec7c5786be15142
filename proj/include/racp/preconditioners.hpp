#pragma once

#include <functional>

#include "racp/inner_solver.hpp"
#include "racp/system.hpp"

namespace racp {

/// Type-erased preconditioner handle consumed by the Krylov driver and the
/// spectrum tooling. `apply` maps a length-n vector to M^{-1} v. Handles
/// produced by the concrete preconditioners reference them; the owning
/// object must outlive the handle and stay at the same address.
struct PrecondOp {
  index_t n = 0;
  flops_t flops_per_apply = 0;
  std::function<void(const double*, double*)> apply;
};

PrecondOp identity_op(index_t n);

struct CostModel {
  flops_t flops_per_apply = 0;
  flops_t matvec_flops = 0;  // one block matvec: 2 * (nnz(A) + 2 * nnz(B))
  double c_app = 0.0;        // flops_per_apply / matvec_flops
};

CostModel cost_model(flops_t flops_per_apply, const SaddleSystem& sys);

/// Variant tag for the reverse-factored constraint preconditioner: `m` is
/// the symmetric-factor form (inverse of the stabilized block matrix when
/// the inner solve is exact), `ma` the sign-flipped alternative whose
/// preconditioned operator has a real spectrum.
enum class RacpVariant { m, ma };

const char* racp_variant_name(RacpVariant v);

/// Reverse (UDL) constraint preconditioner. One application costs one
/// inner solve on the primal Schur complement, two sweeps of B and two
/// diagonal scalings:
///
///   m : w_u = S~^{-1} (v_u + B C^{-1} v_t),  w_t = C^{-1} (B^T w_u - v_t)
///   ma: w_u = S~^{-1} (v_u - B C^{-1} v_t),  w_t = C^{-1} (B^T w_u + v_t)
struct RacpPreconditioner {
  RacpVariant variant = RacpVariant::m;
  index_t n_u = 0;
  index_t n_t = 0;
  SparseMatrix b;
  SparseMatrix b_t;
  std::vector<double> c_inv;
  InnerSolver inner;
  flops_t flops_per_apply = 0;

  void apply_raw(const double* v, double* w) const;
  Vector apply(const Vector& v) const;
  PrecondOp op() const;
};

RacpPreconditioner build_racp(const SaddleSystem& sys, const AugmentationDiag& c,
                              InnerKind inner_kind, RacpVariant variant);

/// Forward (LDU) preconditioner approximating the leading block and the
/// dual Schur complement S~ = -B^T diag(A)^{-1} B, which is formed
/// explicitly and factored exactly. Requires a nonsingular leading block;
/// breakdown surfaces as SingularBlockError("leading block singular").
struct McpPreconditioner {
  index_t n_u = 0;
  index_t n_t = 0;
  SparseMatrix b;
  SparseMatrix b_t;
  InnerSolver inner_a;
  SparseCholesky schur_factor;  // factor of +B^T diag(A)^{-1} B
  flops_t flops_per_apply = 0;

  void apply_raw(const double* v, double* w) const;
  Vector apply(const Vector& v) const;
  PrecondOp op() const;
};

McpPreconditioner build_mcp(const SaddleSystem& sys, InnerKind inner_a = InnerKind::exact_factor);

}  // namespace racp
