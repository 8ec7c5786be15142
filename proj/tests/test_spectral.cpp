#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "racp/generators.hpp"
#include "racp/spectral.hpp"

using namespace racp;

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
  Eigen::MatrixXd e(m.n_rows, m.n_cols);
  for (index_t i = 0; i < m.n_rows; ++i)
    for (index_t j = 0; j < m.n_cols; ++j) e(i, j) = m.at(i, j);
  return e;
}

// Independent route to the bound quantities: generalized symmetric
// eigenproblems solved directly, no inverse square roots.
struct OracleBounds {
  double alpha_u, beta_u, alpha_t, beta_t, alpha_a, beta_a;
};

OracleBounds oracle_bounds(const SaddleSystem& sys, const AugmentationDiag& c,
                           const SparseMatrix& spd_form) {
  Eigen::MatrixXd s = to_eigen(to_dense(spd_form));
  Eigen::MatrixXd a = to_eigen(to_dense(sys.a));
  Eigen::MatrixXd b = to_eigen(to_dense(sys.b));
  Eigen::VectorXd cd(sys.n_t());
  for (index_t l = 0; l < sys.n_t(); ++l) cd(l) = c.entries[static_cast<std::size_t>(l)];

  Eigen::MatrixXd bcbt = b * cd.cwiseInverse().asDiagonal() * b.transpose();
  OracleBounds o{};
  {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(a + 2.0 * bcbt, s);
    o.alpha_u = ges.eigenvalues().minCoeff();
    o.beta_u = ges.eigenvalues().maxCoeff();
  }
  {
    // sigma^2 of S^{-1/2} B C^{-1/2} are the eigenvalues of
    // (B^T S^{-1} B) x = lambda C x
    Eigen::MatrixXd sinv_b = s.ldlt().solve(b);
    Eigen::MatrixXd gram = b.transpose() * sinv_b;
    Eigen::MatrixXd cm = cd.asDiagonal();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(gram, cm);
    o.alpha_t = std::sqrt(std::max(0.0, ges.eigenvalues().minCoeff()));
    o.beta_t = std::sqrt(std::max(0.0, ges.eigenvalues().maxCoeff()));
  }
  {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(a, s);
    o.alpha_a = ges.eigenvalues().minCoeff();
    o.beta_a = ges.eigenvalues().maxCoeff();
  }
  return o;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("ideal augmentation collapses the spectrum to two points") {
  SaddleSystem sys = random_spd_saddle(30, 6, 19);
  auto eigs = ideal_spectrum(sys, RacpVariant::m);
  ClusterCounts cc = cluster_two_point(eigs, 0.5);
  CHECK(cc.at_one == 30);
  CHECK(cc.at_other == 6);
  CHECK(cc.outliers == 0);
  CHECK(cc.max_deviation < 1e-8);

  auto eigs_a = ideal_spectrum(sys, RacpVariant::ma);
  ClusterCounts ca = cluster_two_point(eigs_a, -0.5);
  CHECK(ca.at_one == 30);
  CHECK(ca.at_other == 6);
  CHECK(ca.outliers == 0);
  CHECK(ca.max_deviation < 1e-8);
}

TEST_CASE("ideal augmentation with unit leading block is the coupling gram matrix") {
  SaddleSystem rnd = random_spd_saddle(15, 4, 29);
  SaddleSystem sys = make_saddle_system(identity(15), rnd.b);
  DenseMatrix c = ideal_augmentation(sys);
  DenseMatrix want = dense_matmul(to_dense(sys.b_t), to_dense(sys.b));
  for (std::size_t k = 0; k < c.values.size(); ++k)
    CHECK(std::abs(c.values[k] - want.values[k]) <= 1e-12 * (1.0 + std::abs(want.values[k])));
}

TEST_CASE("frozen bound quantities of the toy system") {
  // A = I2, B = (1, 0)^T, C = (1), exact inner on S_u = diag(2, 1):
  // alpha_u = 1, beta_u = 3/2, alpha_t = beta_t = 1/sqrt(2),
  // alpha_a = 1/2, beta_a = 1
  SaddleSystem sys = make_saddle_system(from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}}),
                                        from_triplets(2, 1, {{0, 0, 1.0}}));
  AugmentationDiag c{{1.0}, "manual", 1.0};
  RacpPreconditioner pre = build_racp(sys, c, InnerKind::exact_factor, RacpVariant::m);
  BoundQuantities q = bound_quantities(sys, c, pre.inner);
  CHECK(q.alpha_u == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q.beta_u == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(q.alpha_t == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(q.beta_t == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(q.alpha_a == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(q.beta_a == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact inner solves pin the primal interval") {
  // with the exact factorization the inner form equals S_u, so the
  // augmented primal operator has extreme eigenvalues 1 and 1 + beta_t^2
  for (std::uint64_t seed : {3u, 7u}) {
    SaddleSystem sys = random_spd_saddle(24, 6, seed);
    AugmentationDiag c = compute_c_local_solve(sys);
    RacpPreconditioner pre = build_racp(sys, c, InnerKind::exact_factor, RacpVariant::m);
    BoundQuantities q = bound_quantities(sys, c, pre.inner);
    CHECK(std::abs(q.alpha_u - 1.0) < 1e-10);
    CHECK(std::abs(q.beta_u - (1.0 + q.beta_t * q.beta_t)) < 1e-10);
  }
}

TEST_CASE("bound quantities agree with a generalized eigenproblem oracle") {
  SaddleSystem sys = random_spd_saddle(28, 7, 47);
  AugmentationDiag c = compute_c_norm_ratio(sys, 0.7);
  for (InnerKind k : {InnerKind::exact_factor, InnerKind::jacobi, InnerKind::ic0}) {
    RacpPreconditioner pre = build_racp(sys, c, k, RacpVariant::m);
    BoundQuantities q = bound_quantities(sys, c, pre.inner);
    OracleBounds o = oracle_bounds(sys, c, pre.inner.spd_form);
    CHECK(q.alpha_u == doctest::Approx(o.alpha_u).epsilon(1e-9));
    CHECK(q.beta_u == doctest::Approx(o.beta_u).epsilon(1e-9));
    CHECK(q.alpha_t == doctest::Approx(o.alpha_t).epsilon(1e-9));
    CHECK(q.beta_t == doctest::Approx(o.beta_t).epsilon(1e-9));
    CHECK(q.alpha_a == doctest::Approx(o.alpha_a).epsilon(1e-9));
    CHECK(q.beta_a == doctest::Approx(o.beta_a).epsilon(1e-9));
  }
}

TEST_CASE("containment logic, symmetric-factor variant") {
  BoundQuantities q;
  q.alpha_u = 0.5;
  q.beta_u = 2.0;
  q.alpha_t = 0.6;
  q.beta_t = 0.7;
  q.alpha_a = 0.5;
  q.beta_a = 2.0;
  // real interval: [min(0.5, 2 * 0.36 / (2 + sqrt(4 - 1.44))), 2] = [0.2, 2]
  SUBCASE("real eigenvalues against the interval") {
    std::vector<std::complex<double>> spec{{0.25, 0.0}, {1.9, 0.0}};
    SpectralReport r = check_bounds(spec, q, SpectralVariant::racp_m);
    CHECK(r.all_contained);
    CHECK(r.real_lower == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(r.real_upper == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_FALSE(r.lower_branch_skipped);
    CHECK(r.n_complex == 0);

    spec.push_back({0.15, 0.0});
    r = check_bounds(spec, q, SpectralVariant::racp_m);
    CHECK_FALSE(r.all_contained);
    CHECK_FALSE(r.contained.back());
  }
  SUBCASE("complex eigenvalues against the half-plane box") {
    // Re in [0.25, 1], |Im| <= sqrt(0.49 - 0.0625)
    std::vector<std::complex<double>> spec{{0.5, 0.3}, {0.9, -0.5}};
    SpectralReport r = check_bounds(spec, q, SpectralVariant::racp_m);
    CHECK(r.all_contained);
    CHECK(r.n_complex == 2);
    CHECK_FALSE(r.complex_forbidden);  // 2 beta_t = 1.4 >= alpha_u

    spec.push_back({0.2, 0.1});  // real part below alpha_u / 2
    r = check_bounds(spec, q, SpectralVariant::racp_m);
    CHECK_FALSE(r.all_contained);
    spec.back() = {0.5, 0.7};  // imaginary part above the box
    r = check_bounds(spec, q, SpectralVariant::racp_m);
    CHECK_FALSE(r.all_contained);
  }
  SUBCASE("slack absorbs harmless rounding") {
    std::vector<std::complex<double>> spec{{2.0 + 1e-9 * 3.0, 0.0}};
    SpectralReport r = check_bounds(spec, q, SpectralVariant::racp_m);
    CHECK(r.all_contained);
  }
  SUBCASE("lower branch is skipped when the discriminant goes negative") {
    BoundQuantities ql = q;
    ql.beta_u = 1.0;
    ql.alpha_t = 0.9;  // beta_u^2 < 4 alpha_t^2
    std::vector<std::complex<double>> spec{{0.6, 0.0}};
    SpectralReport r = check_bounds(spec, ql, SpectralVariant::racp_m);
    CHECK(r.lower_branch_skipped);
    CHECK(r.real_lower == doctest::Approx(ql.alpha_u).epsilon(1e-12));
  }
  SUBCASE("complex eigenvalues are flagged when the bounds forbid them") {
    BoundQuantities qf = q;
    qf.alpha_u = 1.6;  // 2 beta_t = 1.4 < 1.6
    std::vector<std::complex<double>> spec{{1.7, 0.2}};
    SpectralReport r = check_bounds(spec, qf, SpectralVariant::racp_m);
    CHECK(r.complex_forbidden);
    CHECK(r.complex_found_when_forbidden);
    CHECK_FALSE(r.all_contained);
  }
}

TEST_CASE("containment logic, sign-flipped variant") {
  BoundQuantities q;
  q.alpha_a = 0.5;
  q.beta_a = 2.0;
  q.alpha_t = 0.6;
  q.beta_t = 0.7;
  q.alpha_u = 0.5;
  q.beta_u = 2.0;
  // negative interval: [(0.5 - sqrt(0.25 + 1.96)) / 2, (2 - sqrt(4 + 1.44)) / 2]
  // positive interval: [0.5, (2 + sqrt(4 + 1.96)) / 2]
  const double neg_lo = (0.5 - std::sqrt(0.25 + 4.0 * 0.49)) / 2.0;
  const double neg_hi = (2.0 - std::sqrt(4.0 + 4.0 * 0.36)) / 2.0;
  const double pos_hi = (2.0 + std::sqrt(4.0 + 4.0 * 0.49)) / 2.0;

  std::vector<std::complex<double>> spec{{neg_lo + 0.01, 0.0},
                                         {neg_hi - 0.01, 0.0},
                                         {0.6, 0.0},
                                         {pos_hi - 0.01, 0.0}};
  SpectralReport r = check_bounds(spec, q, SpectralVariant::racp_ma);
  CHECK(r.all_contained);
  CHECK_FALSE(r.degenerate_leading_block);

  SUBCASE("the gap between the intervals is excluded") {
    spec.push_back({0.5 * (neg_hi + 0.5), 0.0});  // strictly inside the gap
    r = check_bounds(spec, q, SpectralVariant::racp_ma);
    CHECK_FALSE(r.all_contained);
  }
  SUBCASE("outside either end is excluded") {
    spec.push_back({neg_lo - 0.05, 0.0});
    r = check_bounds(spec, q, SpectralVariant::racp_ma);
    CHECK_FALSE(r.all_contained);
    spec.back() = {pos_hi + 0.05, 0.0};
    r = check_bounds(spec, q, SpectralVariant::racp_ma);
    CHECK_FALSE(r.all_contained);
  }
  SUBCASE("complex eigenvalues are never contained here") {
    spec.push_back({0.6, 0.05});
    r = check_bounds(spec, q, SpectralVariant::racp_ma);
    CHECK_FALSE(r.all_contained);
    CHECK(r.n_complex == 1);
    CHECK(r.max_imag == doctest::Approx(0.05));
  }
  SUBCASE("vanishing alpha_a marks the degenerate leading block") {
    BoundQuantities qd = q;
    qd.alpha_a = 1e-14;
    r = check_bounds(spec, qd, SpectralVariant::racp_ma);
    CHECK(r.degenerate_leading_block);
  }
}

TEST_CASE("spectrum of the applied preconditioner matches its containment report") {
  SaddleSystem sys = random_spd_saddle(26, 6, 53);
  AugmentationDiag c = compute_c_local_solve(sys);
  for (RacpVariant v : {RacpVariant::m, RacpVariant::ma}) {
    for (InnerKind k : {InnerKind::exact_factor, InnerKind::jacobi, InnerKind::ic0}) {
      RacpPreconditioner pre = build_racp(sys, c, k, v);
      auto eigs = preconditioned_spectrum(sys, pre.op());
      REQUIRE(static_cast<index_t>(eigs.size()) == sys.size());
      BoundQuantities q = bound_quantities(sys, c, pre.inner);
      SpectralReport r = check_bounds(
          eigs, q, v == RacpVariant::m ? SpectralVariant::racp_m : SpectralVariant::racp_ma);
      CHECK(r.all_contained);
      if (v == RacpVariant::ma) CHECK(r.max_imag <= 1e-8 * r.spectral_radius);
      if (r.complex_forbidden) CHECK_FALSE(r.complex_found_when_forbidden);
    }
  }
}

TEST_CASE("dense cap guards the spectrum computations") {
  SaddleSystem sys = random_spd_saddle(20, 4, 59);
  CHECK_THROWS_AS(ideal_spectrum(sys, RacpVariant::m, 10), std::length_error);
  AugmentationDiag c = compute_c_global(sys);
  RacpPreconditioner pre = build_racp(sys, c, InnerKind::exact_factor, RacpVariant::m);
  CHECK_THROWS_AS(preconditioned_spectrum(sys, pre.op(), 10), std::length_error);
}

TEST_CASE("two-point clustering counts outliers") {
  std::vector<std::complex<double>> spec{{1.0, 0.0}, {0.5 + 1e-10, 0.0}, {0.7, 0.0}};
  ClusterCounts cc = cluster_two_point(spec, 0.5);
  CHECK(cc.at_one == 1);
  CHECK(cc.at_other == 1);
  CHECK(cc.outliers == 1);
  CHECK(cc.max_deviation == doctest::Approx(1e-10).epsilon(1e-3));
}

TEST_CASE("variant names") {
  CHECK(std::string(spectral_variant_name(SpectralVariant::racp_m)) == "racp-m");
  CHECK(std::string(spectral_variant_name(SpectralVariant::racp_ma)) == "racp-ma");
  CHECK(std::string(spectral_variant_name(SpectralVariant::ideal_m)) == "ideal-m");
  CHECK(std::string(spectral_variant_name(SpectralVariant::ideal_ma)) == "ideal-ma");
  CHECK(std::string(spectral_variant_name(SpectralVariant::mcp)) == "mcp");
  CHECK(std::string(racp_variant_name(RacpVariant::m)) == "racp-m");
  CHECK(std::string(racp_variant_name(RacpVariant::ma)) == "racp-ma");
  CHECK(std::string(inner_kind_name(InnerKind::exact_factor)) == "exact");
  CHECK(std::string(inner_kind_name(InnerKind::jacobi)) == "jacobi");
  CHECK(std::string(inner_kind_name(InnerKind::ic0)) == "ic0");
}

}  // TEST_SUITE
