#pragma once

#include <functional>
#include <string>
#include <utility>

#include "racp/preconditioners.hpp"
#include "racp/system.hpp"

namespace racp {

struct GmresConfig {
  index_t restart = 100;
  double rel_tol = 1e-8;     // on the residual relative to ||r_0||
  index_t max_iters = 1000;  // total Arnoldi steps across restarts
  bool record_history = true;
};

struct ConvergenceHistory {
  /// Entry 0 is ||r_0||; entry k the residual norm after Arnoldi step k.
  /// Intermediate entries are Givens-recurrence estimates; at every
  /// restart and at exit the entry for the latest step is replaced by the
  /// recomputed true residual, so the final entry is always true.
  std::vector<double> residual_norms;
  bool estimates_are_arnoldi = true;
  index_t iterations = 0;
  bool converged = false;
  bool lucky_breakdown = false;
  double final_relative_residual = 0.0;
  double c_app = 0.0;      // preconditioner cost in block-matvec units
  double solve_cost = 0.0;  // iterations * (c_app + 1)
};

using LinearOp = std::function<void(const double*, double*)>;

/// Restarted GMRES with right preconditioning and x_0 = 0. Modified
/// Gram-Schmidt with one reorthogonalization pass when the measured loss
/// of orthogonality exceeds 1e-8; convergence is only declared on a
/// recomputed true residual. An (empty) null preconditioner means identity.
std::pair<Vector, ConvergenceHistory> gmres(index_t n, const LinearOp& op, const LinearOp& precond,
                                            const Vector& rhs, const GmresConfig& cfg);

/// Runs gmres on the block operator of `sys` with rhs sys.rhs and fills in
/// the cost fields from the preconditioner's flop count.
std::pair<Vector, ConvergenceHistory> solve_saddle(const SaddleSystem& sys, const PrecondOp& p,
                                                   const GmresConfig& cfg);

/// Two columns: iter, relative_residual (relative to entry 0).
void write_history_csv(const ConvergenceHistory& h, const std::string& path);

}  // namespace racp
