#pragma once

#include <complex>

#include "racp/preconditioners.hpp"
#include "racp/system.hpp"

namespace racp {

enum class SpectralVariant { racp_m, racp_ma, ideal_m, ideal_ma, mcp };

const char* spectral_variant_name(SpectralVariant v);

/// Eigenvalues of M^{-1} A_blk, computed by applying the preconditioner to
/// the columns of the densely assembled block matrix and running a general
/// eigensolve. Guarded by the dense size cap.
std::vector<std::complex<double>> preconditioned_spectrum(const SaddleSystem& sys,
                                                          const PrecondOp& p, index_t cap = 2000);

/// The six scalars controlling the spectral inclusion regions, relative to
/// the SPD form S~ of the inner solver:
///   alpha_u, beta_u: extreme eigenvalues of S~^{-1} (S_u + B C^{-1} B^T)
///   alpha_t, beta_t: extreme singular values of S~^{-1/2} B C^{-1/2}
///   alpha_a, beta_a: extreme eigenvalues of S~^{-1} A
struct BoundQuantities {
  double alpha_u = 0.0, beta_u = 0.0;
  double alpha_t = 0.0, beta_t = 0.0;
  double alpha_a = 0.0, beta_a = 0.0;
};

BoundQuantities bound_quantities(const SaddleSystem& sys, const AugmentationDiag& c,
                                 const InnerSolver& inner);

struct SpectralReport {
  SpectralVariant variant = SpectralVariant::racp_m;
  std::vector<std::complex<double>> eigenvalues;
  BoundQuantities bounds;
  std::vector<bool> contained;  // per eigenvalue, with slack 1e-8 * (1 + |bound|)
  bool all_contained = true;
  index_t n_complex = 0;        // |Im| > 1e-10 * (1 + |lambda|)
  bool complex_forbidden = false;            // 2 beta_t < alpha_u
  bool complex_found_when_forbidden = false;
  bool lower_branch_skipped = false;         // beta_u^2 < 4 alpha_t^2 guard
  bool degenerate_leading_block = false;     // alpha_a ~ 0 (singular A)
  double max_imag = 0.0;
  double spectral_radius = 0.0;
  double real_lower = 0.0, real_upper = 0.0;  // real-axis interval in use
};

/// Evaluates the inclusion regions for the given variant. The sign-flipped
/// variant checks realness (max |Im| against 1e-8 * spectral radius) and a
/// union of two real intervals; the symmetric-factor variant checks a real
/// interval plus a half-plane box for complex pairs.
SpectralReport check_bounds(const std::vector<std::complex<double>>& spectrum,
                            const BoundQuantities& q, SpectralVariant variant);

/// Dense C = B^T A^{-1} B (the augmentation that collapses the spectrum to
/// two points). Requires a nonsingular A.
DenseMatrix ideal_augmentation(const SaddleSystem& sys);

/// Inverse of the stabilized block matrix [[A, B], [B^T, -C]] (variant m)
/// or of the sign-flipped [[A, B], [-B^T, C]] (variant ma) with a dense C,
/// wrapped as a preconditioner operator backed by a dense LU. flops are
/// not modeled (oracle use only).
class DenseSaddleInverse {
 public:
  DenseSaddleInverse(const SaddleSystem& sys, const DenseMatrix& c_dense, RacpVariant variant);
  PrecondOp op() const;
  index_t size() const { return lu_.size(); }

 private:
  DenseLuSolver lu_;
};

/// Spectrum of the ideally augmented, exactly inverted operator.
std::vector<std::complex<double>> ideal_spectrum(const SaddleSystem& sys, RacpVariant variant,
                                                 index_t cap = 2000);

/// Two-point cluster diagnostics: every eigenvalue is assigned to 1 or to
/// `other` when within tol, else counted as an outlier.
struct ClusterCounts {
  index_t at_one = 0;
  index_t at_other = 0;
  index_t outliers = 0;
  double max_deviation = 0.0;  // over assigned eigenvalues
};
ClusterCounts cluster_two_point(const std::vector<std::complex<double>>& spectrum, double other,
                                double tol = 1e-8);

}  // namespace racp
