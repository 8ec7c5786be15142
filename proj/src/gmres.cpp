#include "racp/gmres.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace racp {

std::pair<Vector, ConvergenceHistory> gmres(index_t n, const LinearOp& op, const LinearOp& precond,
                                            const Vector& rhs, const GmresConfig& cfg) {
  if (cfg.restart < 1) throw std::invalid_argument("gmres: restart must be at least 1");
  if (!(cfg.rel_tol > 0.0) || cfg.rel_tol >= 1.0)
    throw std::invalid_argument("gmres: rel_tol must lie in (0, 1)");
  if (cfg.max_iters < 1) throw std::invalid_argument("gmres: max_iters must be at least 1");
  if (rhs.size() != n) throw std::invalid_argument("gmres: rhs size mismatch");

  ConvergenceHistory h;
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);

  auto apply_precond = [&](const double* in, double* out) {
    if (precond)
      precond(in, out);
    else
      std::copy(in, in + n, out);
  };

  const double bnorm = norm2(rhs.values());
  if (bnorm == 0.0) {
    h.converged = true;
    h.residual_norms = {0.0};
    return {Vector::zeros(n), h};
  }
  const double tol_abs = cfg.rel_tol * bnorm;  // x_0 = 0, so ||r_0|| = ||b||

  std::vector<double> r = rhs.values();
  double rnorm = bnorm;
  if (cfg.record_history) h.residual_norms.push_back(rnorm);

  std::vector<std::vector<double>> v;      // Arnoldi basis
  std::vector<std::vector<double>> hcols;  // Hessenberg columns after rotations
  std::vector<double> cs, sn, g;
  std::vector<double> z(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));

  while (h.iterations < cfg.max_iters && rnorm > tol_abs) {
    const index_t m = std::min<index_t>(cfg.restart, cfg.max_iters - h.iterations);
    v.clear();
    v.push_back(r);
    for (double& e : v[0]) e /= rnorm;
    hcols.clear();
    cs.assign(static_cast<std::size_t>(m), 1.0);
    sn.assign(static_cast<std::size_t>(m), 0.0);
    g.assign(static_cast<std::size_t>(m) + 1, 0.0);
    g[0] = rnorm;
    index_t k = 0;
    bool breakdown = false;

    for (index_t j = 0; j < m; ++j) {
      apply_precond(v[static_cast<std::size_t>(j)].data(), z.data());
      op(z.data(), w.data());
      const double wnorm0 = norm2(w);

      std::vector<double> hcol(static_cast<std::size_t>(j) + 2, 0.0);
      for (index_t i = 0; i <= j; ++i) {
        const double hij = dot(w, v[static_cast<std::size_t>(i)]);
        hcol[static_cast<std::size_t>(i)] = hij;
        const std::vector<double>& vi = v[static_cast<std::size_t>(i)];
        for (index_t q = 0; q < n; ++q) w[static_cast<std::size_t>(q)] -= hij * vi[static_cast<std::size_t>(q)];
      }
      if (wnorm0 > 0.0) {
        double defect = 0.0;
        for (index_t i = 0; i <= j; ++i)
          defect = std::max(defect, std::abs(dot(w, v[static_cast<std::size_t>(i)])));
        if (defect > 1e-8 * wnorm0) {
          for (index_t i = 0; i <= j; ++i) {
            const double hij = dot(w, v[static_cast<std::size_t>(i)]);
            hcol[static_cast<std::size_t>(i)] += hij;
            const std::vector<double>& vi = v[static_cast<std::size_t>(i)];
            for (index_t q = 0; q < n; ++q) w[static_cast<std::size_t>(q)] -= hij * vi[static_cast<std::size_t>(q)];
          }
        }
      }

      const double hj1 = norm2(w);
      hcol[static_cast<std::size_t>(j) + 1] = hj1;
      const bool lucky = hj1 <= 1e-14 * std::max(wnorm0, 1e-300);
      if (!lucky) {
        v.push_back(w);
        for (double& e : v.back()) e /= hj1;
      }

      for (index_t i = 0; i < j; ++i) {
        const double t = cs[static_cast<std::size_t>(i)] * hcol[static_cast<std::size_t>(i)] +
                         sn[static_cast<std::size_t>(i)] * hcol[static_cast<std::size_t>(i) + 1];
        hcol[static_cast<std::size_t>(i) + 1] =
            -sn[static_cast<std::size_t>(i)] * hcol[static_cast<std::size_t>(i)] +
            cs[static_cast<std::size_t>(i)] * hcol[static_cast<std::size_t>(i) + 1];
        hcol[static_cast<std::size_t>(i)] = t;
      }
      const double ha = hcol[static_cast<std::size_t>(j)];
      const double hb = hcol[static_cast<std::size_t>(j) + 1];
      const double rr = std::hypot(ha, hb);
      const double c = rr > 0.0 ? ha / rr : 1.0;
      const double s = rr > 0.0 ? hb / rr : 0.0;
      cs[static_cast<std::size_t>(j)] = c;
      sn[static_cast<std::size_t>(j)] = s;
      hcol[static_cast<std::size_t>(j)] = rr;
      hcol[static_cast<std::size_t>(j) + 1] = 0.0;
      g[static_cast<std::size_t>(j) + 1] = -s * g[static_cast<std::size_t>(j)];
      g[static_cast<std::size_t>(j)] = c * g[static_cast<std::size_t>(j)];

      hcols.push_back(std::move(hcol));
      ++k;
      ++h.iterations;
      const double est = std::abs(g[static_cast<std::size_t>(j) + 1]);
      if (cfg.record_history) h.residual_norms.push_back(est);
      if (lucky) {
        breakdown = true;
        break;
      }
      if (est <= tol_abs) break;
    }

    std::vector<double> y(static_cast<std::size_t>(k), 0.0);
    for (index_t i = k - 1; i >= 0; --i) {
      double acc = g[static_cast<std::size_t>(i)];
      for (index_t j2 = i + 1; j2 < k; ++j2)
        acc -= hcols[static_cast<std::size_t>(j2)][static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j2)];
      const double diag = hcols[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
      y[static_cast<std::size_t>(i)] = diag != 0.0 ? acc / diag : 0.0;
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (index_t j2 = 0; j2 < k; ++j2) {
      const std::vector<double>& vj = v[static_cast<std::size_t>(j2)];
      const double yj = y[static_cast<std::size_t>(j2)];
      for (index_t q = 0; q < n; ++q) w[static_cast<std::size_t>(q)] += yj * vj[static_cast<std::size_t>(q)];
    }
    apply_precond(w.data(), z.data());
    for (index_t q = 0; q < n; ++q) x[static_cast<std::size_t>(q)] += z[static_cast<std::size_t>(q)];

    // True residual at the restart point; it overwrites the last estimate.
    op(x.data(), w.data());
    for (index_t q = 0; q < n; ++q)
      r[static_cast<std::size_t>(q)] = rhs[q] - w[static_cast<std::size_t>(q)];
    rnorm = norm2(r);
    if (cfg.record_history) h.residual_norms.back() = rnorm;
    if (breakdown) {
      h.lucky_breakdown = true;
      break;
    }
  }

  h.converged = rnorm <= tol_abs;
  h.final_relative_residual = rnorm / bnorm;
  return {Vector(std::move(x)), h};
}

std::pair<Vector, ConvergenceHistory> solve_saddle(const SaddleSystem& sys, const PrecondOp& p,
                                                   const GmresConfig& cfg) {
  if (p.apply && p.n != sys.size())
    throw std::invalid_argument("solve_saddle: preconditioner size mismatch");
  LinearOp op = [&sys](const double* in, double* out) { saddle_apply(sys, in, out); };
  LinearOp pre;
  if (p.apply) pre = p.apply;
  auto [x, h] = gmres(sys.size(), op, pre, sys.rhs, cfg);
  CostModel cm = cost_model(p.flops_per_apply, sys);
  h.c_app = cm.c_app;
  h.solve_cost = static_cast<double>(h.iterations) * (cm.c_app + 1.0);
  return {std::move(x), std::move(h)};
}

void write_history_csv(const ConvergenceHistory& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("history csv: cannot write " + path);
  out << "iter,relative_residual\n" << std::setprecision(17);
  if (h.residual_norms.empty()) return;
  const double r0 = h.residual_norms.front();
  for (std::size_t i = 0; i < h.residual_norms.size(); ++i)
    out << i << "," << (r0 > 0.0 ? h.residual_norms[i] / r0 : 0.0) << "\n";
}

}  // namespace racp
