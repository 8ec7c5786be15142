#include "racp/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace racp {

Vector::Vector(std::vector<double> v) : values_(std::move(v)) {
  for (double x : values_) {
    if (!std::isfinite(x)) throw std::invalid_argument("Vector: non-finite entry");
  }
}

Vector Vector::zeros(index_t n) {
  return Vector(std::vector<double>(static_cast<std::size_t>(n), 0.0));
}

void SparseMatrix::validate() const {
  if (n_rows < 0 || n_cols < 0) throw std::invalid_argument("SparseMatrix: negative dimension");
  if (static_cast<index_t>(row_offsets.size()) != n_rows + 1)
    throw std::invalid_argument("SparseMatrix: row_offsets size mismatch");
  if (row_offsets.front() != 0 || row_offsets.back() != nnz())
    throw std::invalid_argument("SparseMatrix: bad offset bounds");
  if (col_indices.size() != values.size())
    throw std::invalid_argument("SparseMatrix: col/value size mismatch");
  for (index_t i = 0; i < n_rows; ++i) {
    if (row_offsets[i] > row_offsets[i + 1])
      throw std::invalid_argument("SparseMatrix: non-monotone row_offsets");
    for (index_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
      index_t j = col_indices[static_cast<std::size_t>(k)];
      if (j < 0 || j >= n_cols) throw std::invalid_argument("SparseMatrix: column index out of range");
      if (k > row_offsets[i] && col_indices[static_cast<std::size_t>(k - 1)] >= j)
        throw std::invalid_argument("SparseMatrix: columns not sorted unique within row");
      if (!std::isfinite(values[static_cast<std::size_t>(k)]))
        throw std::invalid_argument("SparseMatrix: non-finite value");
    }
  }
}

SparseMatrix identity(index_t n) {
  SparseMatrix m;
  m.n_rows = m.n_cols = n;
  m.row_offsets.resize(static_cast<std::size_t>(n) + 1);
  m.col_indices.resize(static_cast<std::size_t>(n));
  m.values.assign(static_cast<std::size_t>(n), 1.0);
  for (index_t i = 0; i <= n; ++i) m.row_offsets[static_cast<std::size_t>(i)] = i;
  for (index_t i = 0; i < n; ++i) m.col_indices[static_cast<std::size_t>(i)] = i;
  return m;
}

SparseMatrix from_diag(const std::vector<double>& d) {
  SparseMatrix m = identity(static_cast<index_t>(d.size()));
  m.values = d;
  return m;
}

SparseMatrix from_triplets(index_t n_rows, index_t n_cols, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  SparseMatrix m;
  m.n_rows = n_rows;
  m.n_cols = n_cols;
  m.row_offsets.assign(static_cast<std::size_t>(n_rows) + 1, 0);
  for (std::size_t k = 0; k < triplets.size();) {
    auto [i, j, v] = triplets[k];
    if (i < 0 || i >= n_rows || j < 0 || j >= n_cols)
      throw std::invalid_argument("from_triplets: index out of range");
    double sum = v;
    std::size_t k2 = k + 1;
    while (k2 < triplets.size() && std::get<0>(triplets[k2]) == i && std::get<1>(triplets[k2]) == j) {
      sum += std::get<2>(triplets[k2]);
      ++k2;
    }
    m.col_indices.push_back(j);
    m.values.push_back(sum);
    ++m.row_offsets[static_cast<std::size_t>(i) + 1];
    k = k2;
  }
  for (index_t i = 0; i < n_rows; ++i)
    m.row_offsets[static_cast<std::size_t>(i) + 1] += m.row_offsets[static_cast<std::size_t>(i)];
  m.validate();
  return m;
}

SparseMatrix from_dense(const DenseMatrix& d) {
  std::vector<Triplet> t;
  for (index_t i = 0; i < d.n_rows; ++i)
    for (index_t j = 0; j < d.n_cols; ++j)
      if (d.at(i, j) != 0.0) t.emplace_back(i, j, d.at(i, j));
  return from_triplets(d.n_rows, d.n_cols, std::move(t));
}

DenseMatrix to_dense(const SparseMatrix& m) {
  DenseMatrix d(m.n_rows, m.n_cols);
  for (index_t i = 0; i < m.n_rows; ++i)
    for (index_t k = m.row_offsets[static_cast<std::size_t>(i)];
         k < m.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
      d.at(i, m.col_indices[static_cast<std::size_t>(k)]) = m.values[static_cast<std::size_t>(k)];
  return d;
}

void spmv_raw(const SparseMatrix& m, const double* x, double* y) {
  for (index_t i = 0; i < m.n_rows; ++i) {
    double acc = 0.0;
    for (index_t k = m.row_offsets[static_cast<std::size_t>(i)];
         k < m.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
      acc += m.values[static_cast<std::size_t>(k)] * x[m.col_indices[static_cast<std::size_t>(k)]];
    y[i] = acc;
  }
}

Vector spmv(const SparseMatrix& m, const Vector& x) {
  if (x.size() != m.n_cols) throw std::invalid_argument("spmv: dimension mismatch");
  std::vector<double> y(static_cast<std::size_t>(m.n_rows));
  spmv_raw(m, x.data(), y.data());
  return Vector(std::move(y));
}

SparseMatrix spmm(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.n_cols != b.n_rows) throw std::invalid_argument("spmm: dimension mismatch");
  SparseMatrix c;
  c.n_rows = a.n_rows;
  c.n_cols = b.n_cols;
  c.row_offsets.assign(static_cast<std::size_t>(a.n_rows) + 1, 0);
  // Gustavson row-merge with a dense accumulator; the symbolic pattern is
  // kept even where values cancel exactly.
  std::vector<double> acc(static_cast<std::size_t>(b.n_cols), 0.0);
  std::vector<index_t> marker(static_cast<std::size_t>(b.n_cols), -1);
  std::vector<index_t> row_cols;
  for (index_t i = 0; i < a.n_rows; ++i) {
    row_cols.clear();
    for (index_t ka = a.row_offsets[static_cast<std::size_t>(i)];
         ka < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++ka) {
      index_t j = a.col_indices[static_cast<std::size_t>(ka)];
      double av = a.values[static_cast<std::size_t>(ka)];
      for (index_t kb = b.row_offsets[static_cast<std::size_t>(j)];
           kb < b.row_offsets[static_cast<std::size_t>(j) + 1]; ++kb) {
        index_t col = b.col_indices[static_cast<std::size_t>(kb)];
        if (marker[static_cast<std::size_t>(col)] != i) {
          marker[static_cast<std::size_t>(col)] = i;
          acc[static_cast<std::size_t>(col)] = 0.0;
          row_cols.push_back(col);
        }
        acc[static_cast<std::size_t>(col)] += av * b.values[static_cast<std::size_t>(kb)];
      }
    }
    std::sort(row_cols.begin(), row_cols.end());
    for (index_t col : row_cols) {
      c.col_indices.push_back(col);
      c.values.push_back(acc[static_cast<std::size_t>(col)]);
    }
    c.row_offsets[static_cast<std::size_t>(i) + 1] = static_cast<index_t>(c.col_indices.size());
  }
  return c;
}

SparseMatrix transpose(const SparseMatrix& m) {
  SparseMatrix t;
  t.n_rows = m.n_cols;
  t.n_cols = m.n_rows;
  t.row_offsets.assign(static_cast<std::size_t>(m.n_cols) + 1, 0);
  t.col_indices.resize(static_cast<std::size_t>(m.nnz()));
  t.values.resize(static_cast<std::size_t>(m.nnz()));
  for (index_t k = 0; k < m.nnz(); ++k)
    ++t.row_offsets[static_cast<std::size_t>(m.col_indices[static_cast<std::size_t>(k)]) + 1];
  for (index_t j = 0; j < m.n_cols; ++j)
    t.row_offsets[static_cast<std::size_t>(j) + 1] += t.row_offsets[static_cast<std::size_t>(j)];
  std::vector<index_t> next(t.row_offsets.begin(), t.row_offsets.end() - 1);
  for (index_t i = 0; i < m.n_rows; ++i)
    for (index_t k = m.row_offsets[static_cast<std::size_t>(i)];
         k < m.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
      index_t j = m.col_indices[static_cast<std::size_t>(k)];
      index_t pos = next[static_cast<std::size_t>(j)]++;
      t.col_indices[static_cast<std::size_t>(pos)] = i;
      t.values[static_cast<std::size_t>(pos)] = m.values[static_cast<std::size_t>(k)];
    }
  return t;
}

SparseMatrix sparse_add(const SparseMatrix& a, const SparseMatrix& b, double scale) {
  if (a.n_rows != b.n_rows || a.n_cols != b.n_cols)
    throw std::invalid_argument("sparse_add: dimension mismatch");
  SparseMatrix c;
  c.n_rows = a.n_rows;
  c.n_cols = a.n_cols;
  c.row_offsets.assign(static_cast<std::size_t>(a.n_rows) + 1, 0);
  for (index_t i = 0; i < a.n_rows; ++i) {
    index_t ka = a.row_offsets[static_cast<std::size_t>(i)];
    index_t ea = a.row_offsets[static_cast<std::size_t>(i) + 1];
    index_t kb = b.row_offsets[static_cast<std::size_t>(i)];
    index_t eb = b.row_offsets[static_cast<std::size_t>(i) + 1];
    while (ka < ea || kb < eb) {
      index_t ja = ka < ea ? a.col_indices[static_cast<std::size_t>(ka)] : a.n_cols;
      index_t jb = kb < eb ? b.col_indices[static_cast<std::size_t>(kb)] : a.n_cols;
      if (ja < jb) {
        c.col_indices.push_back(ja);
        c.values.push_back(a.values[static_cast<std::size_t>(ka++)]);
      } else if (jb < ja) {
        c.col_indices.push_back(jb);
        c.values.push_back(scale * b.values[static_cast<std::size_t>(kb++)]);
      } else {
        c.col_indices.push_back(ja);
        c.values.push_back(a.values[static_cast<std::size_t>(ka++)] +
                           scale * b.values[static_cast<std::size_t>(kb++)]);
      }
    }
    c.row_offsets[static_cast<std::size_t>(i) + 1] = static_cast<index_t>(c.col_indices.size());
  }
  return c;
}

SparseMatrix scale_columns(const SparseMatrix& m, const std::vector<double>& s) {
  if (static_cast<index_t>(s.size()) != m.n_cols)
    throw std::invalid_argument("scale_columns: size mismatch");
  SparseMatrix r = m;
  for (index_t k = 0; k < r.nnz(); ++k)
    r.values[static_cast<std::size_t>(k)] *= s[static_cast<std::size_t>(r.col_indices[static_cast<std::size_t>(k)])];
  return r;
}

SparseMatrix scale_rows(const SparseMatrix& m, const std::vector<double>& s) {
  if (static_cast<index_t>(s.size()) != m.n_rows)
    throw std::invalid_argument("scale_rows: size mismatch");
  SparseMatrix r = m;
  for (index_t i = 0; i < r.n_rows; ++i)
    for (index_t k = r.row_offsets[static_cast<std::size_t>(i)];
         k < r.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
      r.values[static_cast<std::size_t>(k)] *= s[static_cast<std::size_t>(i)];
  return r;
}

DenseMatrix gather_submatrix(const SparseMatrix& m, const std::vector<index_t>& idx) {
  for (std::size_t p = 0; p < idx.size(); ++p) {
    if (idx[p] < 0 || idx[p] >= m.n_rows || idx[p] >= m.n_cols)
      throw std::invalid_argument("gather_submatrix: index out of range");
    if (p > 0 && idx[p] <= idx[p - 1])
      throw std::invalid_argument("gather_submatrix: indices must be strictly increasing");
  }
  const index_t k = static_cast<index_t>(idx.size());
  DenseMatrix d(k, k);
  for (index_t p = 0; p < k; ++p) {
    index_t row = idx[static_cast<std::size_t>(p)];
    index_t ka = m.row_offsets[static_cast<std::size_t>(row)];
    index_t ea = m.row_offsets[static_cast<std::size_t>(row) + 1];
    index_t q = 0;
    while (ka < ea && q < k) {
      index_t j = m.col_indices[static_cast<std::size_t>(ka)];
      index_t jq = idx[static_cast<std::size_t>(q)];
      if (j < jq) {
        ++ka;
      } else if (j > jq) {
        ++q;
      } else {
        d.at(p, q) = m.values[static_cast<std::size_t>(ka)];
        ++ka;
        ++q;
      }
    }
  }
  return d;
}

SparseMatrix symmetrize(const SparseMatrix& m) {
  if (m.n_rows != m.n_cols) throw std::invalid_argument("symmetrize: matrix not square");
  SparseMatrix t = transpose(m);
  if (t.row_offsets != m.row_offsets || t.col_indices != m.col_indices)
    throw std::invalid_argument("symmetrize: pattern not symmetric");
  SparseMatrix r = m;
  // 0.5*(v_ij + v_ji) commutes, so the stored result is bitwise symmetric.
  for (std::size_t k = 0; k < r.values.size(); ++k)
    r.values[k] = 0.5 * (m.values[k] + t.values[k]);
  return r;
}

std::vector<double> extract_diagonal(const SparseMatrix& m) {
  index_t n = std::min(m.n_rows, m.n_cols);
  std::vector<double> d(static_cast<std::size_t>(n), 0.0);
  for (index_t i = 0; i < n; ++i)
    for (index_t k = m.row_offsets[static_cast<std::size_t>(i)];
         k < m.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
      if (m.col_indices[static_cast<std::size_t>(k)] == i)
        d[static_cast<std::size_t>(i)] = m.values[static_cast<std::size_t>(k)];
  return d;
}

bool identical(const SparseMatrix& a, const SparseMatrix& b) {
  return a.n_rows == b.n_rows && a.n_cols == b.n_cols && a.row_offsets == b.row_offsets &&
         a.col_indices == b.col_indices && a.values == b.values;
}

bool same_pattern(const SparseMatrix& a, const SparseMatrix& b) {
  return a.n_rows == b.n_rows && a.n_cols == b.n_cols && a.row_offsets == b.row_offsets &&
         a.col_indices == b.col_indices;
}

double frobenius_norm(const SparseMatrix& m) {
  double s = 0.0;
  for (double v : m.values) s += v * v;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace racp
