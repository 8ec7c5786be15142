#include "doctest.h"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "racp/generators.hpp"
#include "racp/gmres.hpp"
#include "test_support.hpp"

using namespace racp;

namespace {

LinearOp matvec_of(const SparseMatrix& m) {
  return [&m](const double* x, double* y) { spmv_raw(m, x, y); };
}

}  // namespace

TEST_SUITE("krylov") {

TEST_CASE("identity operator converges in one step by lucky breakdown") {
  GmresConfig cfg;
  Vector rhs(std::vector<double>{3.0, -1.0, 2.0});
  SparseMatrix i3 = identity(3);
  auto [x, hist] = gmres(3, matvec_of(i3), {}, rhs, cfg);
  CHECK(hist.converged);
  CHECK(hist.iterations == 1);
  CHECK(hist.lucky_breakdown);
  for (index_t k = 0; k < 3; ++k) CHECK(x[k] == doctest::Approx(rhs[k]).epsilon(1e-14));
}

TEST_CASE("an exact inverse preconditioner gives a one-step solve") {
  SparseMatrix a = from_diag({1.0, 2.0, 5.0});
  std::vector<double> dinv{1.0, 0.5, 0.2};
  LinearOp pre = [&dinv](const double* v, double* w) {
    for (std::size_t i = 0; i < dinv.size(); ++i) w[i] = dinv[i] * v[i];
  };
  Vector rhs(std::vector<double>{2.0, 4.0, 10.0});
  auto [x, hist] = gmres(3, matvec_of(a), pre, rhs, GmresConfig{});
  CHECK(hist.converged);
  CHECK(hist.iterations == 1);
  CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(x[2] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("unpreconditioned solve matches the dense solution") {
  SaddleSystem sys = random_spd_saddle(20, 4, 17);
  GmresConfig cfg;
  cfg.rel_tol = 1e-10;
  auto [x, hist] = gmres(20, matvec_of(sys.a), {}, Vector::zeros(20), cfg);
  CHECK(hist.converged);
  CHECK(hist.iterations == 0);  // zero right-hand side short-circuits

  std::vector<double> b(20);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::sin(static_cast<double>(i));
  auto [x2, hist2] = gmres(20, matvec_of(sys.a), {}, Vector(b), cfg);
  CHECK(hist2.converged);
  std::vector<double> want = DenseLuSolver(to_dense(sys.a)).solve(b);
  for (std::size_t i = 0; i < b.size(); ++i)
    CHECK(std::abs(x2[static_cast<index_t>(i)] - want[i]) <= 1e-7 * (1.0 + std::abs(want[i])));
}

TEST_CASE("iteration count is invariant under right-hand side scaling") {
  SaddleSystem sys = random_spd_saddle(30, 6, 23);
  std::vector<double> b(30);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : b) v = dist(rng);
  std::vector<double> b10(b);
  for (double& v : b10) v *= 10.0;

  auto [x1, h1] = gmres(30, matvec_of(sys.a), {}, Vector(b), GmresConfig{});
  auto [x2, h2] = gmres(30, matvec_of(sys.a), {}, Vector(b10), GmresConfig{});
  CHECK(h1.converged);
  CHECK(h2.converged);
  CHECK(h1.iterations == h2.iterations);
  for (index_t i = 0; i < 30; ++i)
    CHECK(x2[i] == doctest::Approx(10.0 * x1[i]).epsilon(1e-10));
}

TEST_CASE("history bookkeeping: one estimate per step plus the seed entry") {
  SaddleSystem sys = random_spd_saddle(25, 5, 29);
  std::vector<double> b(25, 1.0);
  auto [x, hist] = gmres(25, matvec_of(sys.a), {}, Vector(b), GmresConfig{});
  (void)x;
  CHECK(hist.converged);
  CHECK(static_cast<index_t>(hist.residual_norms.size()) == hist.iterations + 1);
  CHECK(hist.residual_norms.front() == doctest::Approx(5.0));  // ||ones(25)||
  CHECK(hist.final_relative_residual ==
        doctest::Approx(hist.residual_norms.back() / hist.residual_norms.front())
            .epsilon(1e-12));
  CHECK(hist.final_relative_residual <= 1e-8);
}

TEST_CASE("restart cycles still reach the solution") {
  SaddleSystem sys = random_spd_saddle(40, 8, 37);
  std::vector<double> b(40);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::cos(static_cast<double>(i));
  GmresConfig tight;
  tight.restart = 5;
  tight.rel_tol = 1e-8;
  tight.max_iters = 1000;
  auto [x, hist] = gmres(40, matvec_of(sys.a), {}, Vector(b), tight);
  CHECK(hist.converged);
  CHECK(hist.iterations > 5);  // actually restarted
  std::vector<double> want = DenseLuSolver(to_dense(sys.a)).solve(b);
  for (std::size_t i = 0; i < b.size(); ++i)
    CHECK(std::abs(x[static_cast<index_t>(i)] - want[i]) <= 1e-5 * (1.0 + std::abs(want[i])));
}

TEST_CASE("iteration cap reports honest failure") {
  SaddleSystem sys = random_spd_saddle(40, 8, 41);
  std::vector<double> b(40, 1.0);
  GmresConfig cfg;
  cfg.max_iters = 2;
  cfg.rel_tol = 1e-14;
  auto [x, hist] = gmres(40, matvec_of(sys.a), {}, Vector(b), cfg);
  (void)x;
  CHECK_FALSE(hist.converged);
  CHECK(hist.iterations == 2);
  CHECK(hist.final_relative_residual > 1e-14);
}

TEST_CASE("configuration validation") {
  SparseMatrix i2 = identity(2);
  Vector rhs(std::vector<double>{1.0, 1.0});
  GmresConfig bad;
  bad.restart = 0;
  CHECK_THROWS_AS(gmres(2, matvec_of(i2), {}, rhs, bad), std::invalid_argument);
  bad = {};
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(gmres(2, matvec_of(i2), {}, rhs, bad), std::invalid_argument);
  bad = {};
  bad.max_iters = 0;
  CHECK_THROWS_AS(gmres(2, matvec_of(i2), {}, rhs, bad), std::invalid_argument);
  CHECK_THROWS_AS(gmres(3, matvec_of(i2), {}, rhs, GmresConfig{}), std::invalid_argument);
}

TEST_CASE("saddle solve fills the cost fields and hits the true solution") {
  SaddleSystem sys = generate_fracture_cube({});
  AugmentationDiag c = compute_c_local_solve(sys);
  RacpPreconditioner pre = build_racp(sys, c, InnerKind::exact_factor, RacpVariant::m);
  auto [x, hist] = solve_saddle(sys, pre.op(), GmresConfig{});
  CHECK(hist.converged);
  CHECK(hist.c_app > 0.0);
  CHECK(hist.solve_cost ==
        doctest::Approx(static_cast<double>(hist.iterations) * (hist.c_app + 1.0)));

  std::vector<double> want = DenseLuSolver(saddle_dense(sys)).solve(sys.rhs.values());
  double err = 0.0, ref = 0.0;
  for (index_t i = 0; i < sys.size(); ++i) {
    err += (x[i] - want[static_cast<std::size_t>(i)]) * (x[i] - want[static_cast<std::size_t>(i)]);
    ref += want[static_cast<std::size_t>(i)] * want[static_cast<std::size_t>(i)];
  }
  CHECK(std::sqrt(err) <= 1e-6 * std::sqrt(ref));
}

TEST_CASE("history csv round trip") {
  testsup::ScratchDir dir;
  SaddleSystem sys = random_spd_saddle(20, 4, 43);
  std::vector<double> b(20, 1.0);
  auto [x, hist] = gmres(20, matvec_of(sys.a), {}, Vector(b), GmresConfig{});
  (void)x;
  std::string path = dir.file("hist.csv");
  write_history_csv(hist, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  CHECK(line == "iter,relative_residual");
  index_t rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == static_cast<index_t>(hist.residual_norms.size()));
}

}  // TEST_SUITE
