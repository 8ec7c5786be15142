#include "racp/dense.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace racp {

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
  Eigen::MatrixXd e(m.n_rows, m.n_cols);
  for (index_t i = 0; i < m.n_rows; ++i)
    for (index_t j = 0; j < m.n_cols; ++j) e(i, j) = m.at(i, j);
  return e;
}

DenseMatrix from_eigen(const Eigen::MatrixXd& e) {
  DenseMatrix m(e.rows(), e.cols());
  for (index_t i = 0; i < m.n_rows; ++i)
    for (index_t j = 0; j < m.n_cols; ++j) m.at(i, j) = e(i, j);
  return m;
}

}  // namespace

DenseMatrix dense_identity(index_t n) {
  DenseMatrix m(n, n);
  for (index_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

DenseMatrix dense_matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.n_cols != b.n_rows) throw std::invalid_argument("dense_matmul: dimension mismatch");
  return from_eigen(to_eigen(a) * to_eigen(b));
}

DenseMatrix dense_transpose(const DenseMatrix& a) { return from_eigen(to_eigen(a).transpose()); }

DenseMatrix dense_add(const DenseMatrix& a, const DenseMatrix& b, double b_scale) {
  if (a.n_rows != b.n_rows || a.n_cols != b.n_cols)
    throw std::invalid_argument("dense_add: dimension mismatch");
  return from_eigen(to_eigen(a) + b_scale * to_eigen(b));
}

double spectral_norm_2(const DenseMatrix& m) {
  if (m.n_rows == 0 || m.n_cols == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(to_eigen(m));
  return svd.singularValues()(0);
}

std::vector<double> singular_values(const DenseMatrix& m) {
  if (m.n_rows == 0 || m.n_cols == 0) return {};
  Eigen::BDCSVD<Eigen::MatrixXd> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

std::vector<std::complex<double>> dense_eigensolve(const DenseMatrix& m, bool symmetric,
                                                   index_t cap) {
  if (m.n_rows != m.n_cols) throw std::invalid_argument("dense_eigensolve: matrix not square");
  if (m.n_rows > cap) throw std::length_error("dense_eigensolve: size exceeds cap");
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(m.n_rows));
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("dense_eigensolve: symmetric solver failed to converge");
    for (index_t i = 0; i < m.n_rows; ++i) out.emplace_back(es.eigenvalues()(i), 0.0);
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(m), /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("dense_eigensolve: QR iteration failed to converge");
    for (index_t i = 0; i < m.n_rows; ++i) out.push_back(es.eigenvalues()(i));
  }
  return out;
}

std::vector<double> sym_eigenvalues(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("sym_eigenvalues: solver failed to converge");
  const auto& v = es.eigenvalues();
  return std::vector<double>(v.data(), v.data() + v.size());
}

SymEigenDecomposition sym_eigendecompose(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("sym_eigendecompose: solver failed to converge");
  SymEigenDecomposition d;
  const auto& v = es.eigenvalues();
  d.values.assign(v.data(), v.data() + v.size());
  d.vectors = from_eigen(es.eigenvectors());
  return d;
}

DenseMatrix sym_inverse_sqrt(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("sym_inverse_sqrt: solver failed to converge");
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.size() == 0 || ev(0) <= 0.0)
    throw SingularBlockError("sym_inverse_sqrt: matrix not positive definite");
  Eigen::VectorXd inv_sqrt = ev.array().rsqrt();
  return from_eigen(es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose());
}

index_t dense_rank(const DenseMatrix& m, double rel_tol) {
  if (m.n_rows == 0 || m.n_cols == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  index_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

double spd_quadratic_form_inverse(const DenseMatrix& m, const std::vector<double>& r,
                                  double pivot_rel_tol, index_t block_label) {
  if (m.n_rows != m.n_cols || static_cast<index_t>(r.size()) != m.n_rows)
    throw std::invalid_argument("spd_quadratic_form_inverse: dimension mismatch");
  Eigen::MatrixXd e = to_eigen(m);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(e);
  const double norm = spectral_norm_2(m);
  const double min_pivot = ldlt.vectorD().minCoeff();
  if (!(min_pivot > pivot_rel_tol * norm))
    throw SingularBlockError("local block singular or not positive definite", block_label);
  Eigen::Map<const Eigen::VectorXd> rv(r.data(), static_cast<Eigen::Index>(r.size()));
  return rv.dot(ldlt.solve(rv));
}

struct DenseLuSolver::Impl {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

DenseLuSolver::DenseLuSolver(const DenseMatrix& m) : n_(m.n_rows) {
  if (m.n_rows != m.n_cols) throw std::invalid_argument("DenseLuSolver: matrix not square");
  auto impl = std::make_shared<Impl>();
  impl->lu.compute(to_eigen(m));
  impl_ = std::move(impl);
}

std::vector<double> DenseLuSolver::solve(const std::vector<double>& rhs) const {
  if (static_cast<index_t>(rhs.size()) != n_)
    throw std::invalid_argument("DenseLuSolver: rhs size mismatch");
  std::vector<double> x(rhs.size());
  solve_raw(rhs.data(), x.data());
  return x;
}

void DenseLuSolver::solve_raw(const double* rhs, double* x) const {
  Eigen::Map<const Eigen::VectorXd> b(rhs, n_);
  Eigen::Map<Eigen::VectorXd> out(x, n_);
  out = impl_->lu.solve(b);
}

}  // namespace racp
