#include "racp/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace racp {

namespace {

double slack(double bound) { return 1e-8 * (1.0 + std::abs(bound)); }

bool is_real(const std::complex<double>& z) {
  return std::abs(z.imag()) <= 1e-10 * (1.0 + std::abs(z));
}

DenseMatrix dense_block(const SaddleSystem& sys, const DenseMatrix& c, double c_sign,
                        double bt_sign) {
  const index_t nu = sys.n_u();
  const index_t nt = sys.n_t();
  if (c.n_rows != nt || c.n_cols != nt)
    throw std::invalid_argument("dense saddle block: C size mismatch");
  DenseMatrix m(nu + nt, nu + nt);
  DenseMatrix da = to_dense(sys.a);
  DenseMatrix db = to_dense(sys.b);
  for (index_t i = 0; i < nu; ++i)
    for (index_t j = 0; j < nu; ++j) m.at(i, j) = da.at(i, j);
  for (index_t i = 0; i < nu; ++i)
    for (index_t j = 0; j < nt; ++j) {
      m.at(i, nu + j) = db.at(i, j);
      m.at(nu + j, i) = bt_sign * db.at(i, j);
    }
  for (index_t i = 0; i < nt; ++i)
    for (index_t j = 0; j < nt; ++j) m.at(nu + i, nu + j) = c_sign * c.at(i, j);
  return m;
}

}  // namespace

const char* spectral_variant_name(SpectralVariant v) {
  switch (v) {
    case SpectralVariant::racp_m:
      return "racp-m";
    case SpectralVariant::racp_ma:
      return "racp-ma";
    case SpectralVariant::ideal_m:
      return "ideal-m";
    case SpectralVariant::ideal_ma:
      return "ideal-ma";
    default:
      return "mcp";
  }
}

std::vector<std::complex<double>> preconditioned_spectrum(const SaddleSystem& sys,
                                                          const PrecondOp& p, index_t cap) {
  const index_t n = sys.size();
  if (n > cap) throw std::length_error("preconditioned_spectrum: size exceeds dense cap");
  if (!p.apply || p.n != n)
    throw std::invalid_argument("preconditioned_spectrum: bad preconditioner handle");
  DenseMatrix blk = saddle_dense(sys);
  DenseMatrix ma(n, n);
  std::vector<double> col(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
  for (index_t j = 0; j < n; ++j) {
    for (index_t i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = blk.at(i, j);
    p.apply(col.data(), out.data());
    for (index_t i = 0; i < n; ++i) ma.at(i, j) = out[static_cast<std::size_t>(i)];
  }
  return dense_eigensolve(ma, /*symmetric=*/false, cap);
}

BoundQuantities bound_quantities(const SaddleSystem& sys, const AugmentationDiag& c,
                                 const InnerSolver& inner) {
  if (static_cast<index_t>(c.entries.size()) != sys.n_t())
    throw std::invalid_argument("bound_quantities: augmentation size mismatch");
  if (inner.n != sys.n_u())
    throw std::invalid_argument("bound_quantities: inner solver size mismatch");

  std::vector<double> c_inv(c.entries.size()), c_inv_sqrt(c.entries.size());
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    if (!(c.entries[i] > 0.0))
      throw std::invalid_argument("bound_quantities: augmentation entries must be positive");
    c_inv[i] = 1.0 / c.entries[i];
    c_inv_sqrt[i] = std::sqrt(c_inv[i]);
  }

  DenseMatrix g = sym_inverse_sqrt(to_dense(inner.spd_form));
  DenseMatrix da = to_dense(sys.a);
  DenseMatrix bcb = to_dense(spmm(scale_columns(sys.b, c_inv), sys.b_t));

  BoundQuantities q;
  {
    DenseMatrix inner_mat = dense_add(da, bcb, 2.0);  // S_u + B C^{-1} B^T
    std::vector<double> ev = sym_eigenvalues(dense_matmul(g, dense_matmul(inner_mat, g)));
    q.alpha_u = ev.front();
    q.beta_u = ev.back();
  }
  if (sys.n_t() > 0) {
    DenseMatrix f = dense_matmul(g, to_dense(scale_columns(sys.b, c_inv_sqrt)));
    std::vector<double> sv = singular_values(f);
    q.beta_t = sv.front();
    q.alpha_t = sv.back();
  }
  {
    std::vector<double> ev = sym_eigenvalues(dense_matmul(g, dense_matmul(da, g)));
    q.alpha_a = ev.front();
    q.beta_a = ev.back();
  }
  return q;
}

SpectralReport check_bounds(const std::vector<std::complex<double>>& spectrum,
                            const BoundQuantities& q, SpectralVariant variant) {
  SpectralReport rep;
  rep.variant = variant;
  rep.eigenvalues = spectrum;
  rep.bounds = q;
  rep.contained.reserve(spectrum.size());

  for (const auto& z : spectrum) {
    rep.spectral_radius = std::max(rep.spectral_radius, std::abs(z));
    rep.max_imag = std::max(rep.max_imag, std::abs(z.imag()));
    if (!is_real(z)) ++rep.n_complex;
  }

  const bool ma_like = variant == SpectralVariant::racp_ma || variant == SpectralVariant::ideal_ma;
  if (!ma_like) {
    // Real eigenvalues live in [lower, beta_u]; the sharper lower branch is
    // only defined when beta_u^2 >= 4 alpha_t^2.
    rep.lower_branch_skipped = q.beta_u * q.beta_u < 4.0 * q.alpha_t * q.alpha_t;
    double lower = q.alpha_u;
    if (!rep.lower_branch_skipped && q.alpha_t > 0.0) {
      double disc = std::sqrt(q.beta_u * q.beta_u - 4.0 * q.alpha_t * q.alpha_t);
      lower = std::min(q.alpha_u, 2.0 * q.alpha_t * q.alpha_t / (q.beta_u + disc));
    }
    rep.real_lower = lower;
    rep.real_upper = q.beta_u;
    rep.complex_forbidden = 2.0 * q.beta_t < q.alpha_u;
    const double im_cap =
        std::sqrt(std::max(0.0, q.beta_t * q.beta_t - 0.25 * q.alpha_u * q.alpha_u));
    for (const auto& z : spectrum) {
      bool ok;
      if (is_real(z)) {
        ok = z.real() >= lower - slack(lower) && z.real() <= q.beta_u + slack(q.beta_u);
      } else {
        ok = z.real() >= 0.5 * q.alpha_u - slack(0.5 * q.alpha_u) &&
             z.real() <= 0.5 * q.beta_u + slack(0.5 * q.beta_u) &&
             std::abs(z.imag()) <= im_cap + slack(im_cap);
        if (rep.complex_forbidden) rep.complex_found_when_forbidden = true;
      }
      rep.contained.push_back(ok);
      rep.all_contained = rep.all_contained && ok;
    }
  } else {
    // Sign-flipped variant: the spectrum is real up to roundoff and splits
    // into a negative and a positive interval.
    rep.degenerate_leading_block = q.alpha_a <= 1e-10 * std::max(q.beta_a, 1.0);
    const double left_lo = 0.5 * (q.alpha_a - std::sqrt(q.alpha_a * q.alpha_a + 4.0 * q.beta_t * q.beta_t));
    const double left_hi = 0.5 * (q.beta_a - std::sqrt(q.beta_a * q.beta_a + 4.0 * q.alpha_t * q.alpha_t));
    const double right_lo = q.alpha_a;
    const double right_hi = 0.5 * (q.beta_a + std::sqrt(q.beta_a * q.beta_a + 4.0 * q.beta_t * q.beta_t));
    rep.real_lower = left_lo;
    rep.real_upper = right_hi;
    for (const auto& z : spectrum) {
      const double x = z.real();
      bool in_left = x >= left_lo - slack(left_lo) && x <= left_hi + slack(left_hi);
      bool in_right = x >= right_lo - slack(right_lo) && x <= right_hi + slack(right_hi);
      // The intervals are subsets of the real axis, so an eigenvalue with an
      // imaginary part beyond the realness tolerance cannot lie in them.
      bool real_enough = std::abs(z.imag()) <= 1e-8 * rep.spectral_radius;
      bool ok = real_enough && (in_left || in_right);
      rep.contained.push_back(ok);
      rep.all_contained = rep.all_contained && ok;
    }
  }
  return rep;
}

DenseMatrix ideal_augmentation(const SaddleSystem& sys) {
  DenseLuSolver alu(to_dense(sys.a));
  DenseMatrix db = to_dense(sys.b);
  const index_t nu = sys.n_u();
  const index_t nt = sys.n_t();
  DenseMatrix ainv_b(nu, nt);
  std::vector<double> col(static_cast<std::size_t>(nu)), out(static_cast<std::size_t>(nu));
  for (index_t j = 0; j < nt; ++j) {
    for (index_t i = 0; i < nu; ++i) col[static_cast<std::size_t>(i)] = db.at(i, j);
    alu.solve_raw(col.data(), out.data());
    for (index_t i = 0; i < nu; ++i) ainv_b.at(i, j) = out[static_cast<std::size_t>(i)];
  }
  return dense_matmul(dense_transpose(db), ainv_b);
}

DenseSaddleInverse::DenseSaddleInverse(const SaddleSystem& sys, const DenseMatrix& c_dense,
                                       RacpVariant variant)
    : lu_(variant == RacpVariant::m ? dense_block(sys, c_dense, -1.0, 1.0)
                                    : dense_block(sys, c_dense, 1.0, -1.0)) {}

PrecondOp DenseSaddleInverse::op() const {
  PrecondOp p;
  p.n = lu_.size();
  p.flops_per_apply = 0;
  p.apply = [this](const double* x, double* y) { lu_.solve_raw(x, y); };
  return p;
}

std::vector<std::complex<double>> ideal_spectrum(const SaddleSystem& sys, RacpVariant variant,
                                                 index_t cap) {
  if (sys.size() > cap) throw std::length_error("ideal_spectrum: size exceeds dense cap");
  DenseSaddleInverse inv(sys, ideal_augmentation(sys), variant);
  PrecondOp p = inv.op();
  return preconditioned_spectrum(sys, p, cap);
}

ClusterCounts cluster_two_point(const std::vector<std::complex<double>>& spectrum, double other,
                                double tol) {
  ClusterCounts c;
  for (const auto& z : spectrum) {
    const double d_one = std::abs(z - std::complex<double>(1.0, 0.0));
    const double d_other = std::abs(z - std::complex<double>(other, 0.0));
    if (d_one <= tol && d_one <= d_other) {
      ++c.at_one;
      c.max_deviation = std::max(c.max_deviation, d_one);
    } else if (d_other <= tol) {
      ++c.at_other;
      c.max_deviation = std::max(c.max_deviation, d_other);
    } else {
      ++c.outliers;
    }
  }
  return c;
}

}  // namespace racp
