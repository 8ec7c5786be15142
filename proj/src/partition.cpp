#include "racp/partition.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace racp {

namespace {

std::vector<index_t> owners_from_bounds(index_t n_rows, const std::vector<index_t>& start) {
  std::vector<index_t> owner(static_cast<std::size_t>(n_rows));
  const index_t p = static_cast<index_t>(start.size()) - 1;
  for (index_t k = 0; k < p; ++k)
    for (index_t i = start[static_cast<std::size_t>(k)]; i < start[static_cast<std::size_t>(k) + 1]; ++i)
      owner[static_cast<std::size_t>(i)] = k;
  return owner;
}

std::int64_t cut_of_owner(const SparseMatrix& a, const std::vector<index_t>& owner) {
  std::int64_t cut = 0;
  for (index_t i = 0; i < a.n_rows; ++i)
    for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
         k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
      index_t j = a.col_indices[static_cast<std::size_t>(k)];
      if (j != i && owner[static_cast<std::size_t>(i)] != owner[static_cast<std::size_t>(j)]) ++cut;
    }
  return cut;
}

// Candidate processes of one multiplier: owners of the rows its column
// touches, sorted unique. b_t row `l` lists the rows of column l.
void candidates_of(const SparseMatrix& b_t, const RowPartition& rp, index_t l,
                   std::vector<index_t>& cand) {
  cand.clear();
  for (index_t k = b_t.row_offsets[static_cast<std::size_t>(l)];
       k < b_t.row_offsets[static_cast<std::size_t>(l) + 1]; ++k)
    cand.push_back(rp.owner_of_row[static_cast<std::size_t>(b_t.col_indices[static_cast<std::size_t>(k)])]);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
}

}  // namespace

RowPartition partition_rows(const SparseMatrix& a, index_t n_procs, bool refine) {
  if (a.n_rows != a.n_cols) throw std::invalid_argument("partition: matrix not square");
  if (n_procs < 1) throw std::invalid_argument("partition: need at least one process");
  if (n_procs > a.n_rows)
    throw std::invalid_argument("partition: more processes than rows");

  const index_t n = a.n_rows;
  std::vector<index_t> start(static_cast<std::size_t>(n_procs) + 1, 0);
  const index_t base = n / n_procs;
  const index_t rem = n % n_procs;
  for (index_t k = 0; k < n_procs; ++k)
    start[static_cast<std::size_t>(k) + 1] =
        start[static_cast<std::size_t>(k)] + base + (k < rem ? 1 : 0);

  RowPartition rp;
  rp.n_procs = n_procs;
  rp.strategy = "contiguous";

  if (refine && n_procs > 1) {
    // One greedy sweep over the p-1 boundaries; each may move within a
    // small window as long as every block keeps at least one row.
    const index_t window = std::max<index_t>(1, base / 4);
    for (index_t bidx = 1; bidx < n_procs; ++bidx) {
      index_t lo = std::max(start[static_cast<std::size_t>(bidx) - 1] + 1,
                            start[static_cast<std::size_t>(bidx)] - window);
      index_t hi = std::min(start[static_cast<std::size_t>(bidx) + 1] - 1,
                            start[static_cast<std::size_t>(bidx)] + window);
      const index_t orig = start[static_cast<std::size_t>(bidx)];
      index_t best = orig;
      std::int64_t best_cut = cut_of_owner(a, owners_from_bounds(n, start));
      for (index_t pos = lo; pos <= hi; ++pos) {
        if (pos == orig) continue;
        start[static_cast<std::size_t>(bidx)] = pos;
        std::int64_t cut = cut_of_owner(a, owners_from_bounds(n, start));
        if (cut < best_cut) {  // strict, so ties keep the original boundary
          best_cut = cut;
          best = pos;
        }
      }
      start[static_cast<std::size_t>(bidx)] = best;
    }
    rp.strategy = "contiguous+refined";
  }

  rp.owner_of_row = owners_from_bounds(n, start);
  rp.contiguous = true;
  return rp;
}

std::int64_t edge_cut(const SparseMatrix& a, const RowPartition& rp) {
  if (static_cast<index_t>(rp.owner_of_row.size()) != a.n_rows)
    throw std::invalid_argument("edge_cut: partition size mismatch");
  return cut_of_owner(a, rp.owner_of_row);
}

MultiplierAssignment assign_multipliers(const SparseMatrix& b, const RowPartition& rp,
                                        SweepMode mode) {
  if (static_cast<index_t>(rp.owner_of_row.size()) != b.n_rows)
    throw std::invalid_argument("assign_multipliers: partition does not match B");
  const index_t n_t = b.n_cols;
  const SparseMatrix b_t = transpose(b);

  MultiplierAssignment ma;
  ma.owner_of_multiplier.assign(static_cast<std::size_t>(n_t), -1);
  ma.counts.assign(static_cast<std::size_t>(rp.n_procs), 0);
  ma.normative = mode == SweepMode::sequential;

  std::vector<index_t> cand;
  auto sweep = [&](index_t lo, index_t hi, std::vector<index_t>& counts) {
    for (index_t l = lo; l < hi; ++l) {
      candidates_of(b_t, rp, l, cand);
      if (cand.empty())
        throw std::invalid_argument("assign_multipliers: zero column " + std::to_string(l));
      index_t pick = cand.front();
      for (index_t p : cand)
        if (counts[static_cast<std::size_t>(p)] < counts[static_cast<std::size_t>(pick)]) pick = p;
      ma.owner_of_multiplier[static_cast<std::size_t>(l)] = pick;
      ++counts[static_cast<std::size_t>(pick)];
    }
  };

  if (mode == SweepMode::sequential) {
    sweep(0, n_t, ma.counts);
  } else {
    const index_t base = n_t / rp.n_procs;
    const index_t rem = n_t % rp.n_procs;
    index_t lo = 0;
    for (index_t k = 0; k < rp.n_procs; ++k) {
      index_t hi = lo + base + (k < rem ? 1 : 0);
      std::vector<index_t> local(static_cast<std::size_t>(rp.n_procs), 0);
      sweep(lo, hi, local);
      for (index_t p = 0; p < rp.n_procs; ++p)
        ma.counts[static_cast<std::size_t>(p)] += local[static_cast<std::size_t>(p)];
      lo = hi;
    }
  }
  return ma;
}

CommVolume comm_volume(const SparseMatrix& b, const RowPartition& rp,
                       const MultiplierAssignment& ma) {
  const SparseMatrix b_t = transpose(b);
  std::set<std::pair<index_t, index_t>> pairs;  // (row, destination proc)
  std::set<index_t> candidate_procs;
  std::vector<index_t> cand;
  for (index_t l = 0; l < b.n_cols; ++l) {
    candidates_of(b_t, rp, l, cand);
    for (index_t p : cand) candidate_procs.insert(p);
    const index_t dest = ma.owner_of_multiplier[static_cast<std::size_t>(l)];
    for (index_t k = b_t.row_offsets[static_cast<std::size_t>(l)];
         k < b_t.row_offsets[static_cast<std::size_t>(l) + 1]; ++k) {
      index_t row = b_t.col_indices[static_cast<std::size_t>(k)];
      if (rp.owner_of_row[static_cast<std::size_t>(row)] != dest) pairs.insert({row, dest});
    }
  }
  CommVolume cv;
  cv.rows_exchanged = static_cast<std::int64_t>(pairs.size());
  if (!candidate_procs.empty()) {
    index_t mx = 0, mn = ma.counts[static_cast<std::size_t>(*candidate_procs.begin())];
    for (index_t c : ma.counts) mx = std::max(mx, c);
    for (index_t p : candidate_procs)
      mn = std::min(mn, ma.counts[static_cast<std::size_t>(p)]);
    cv.balance_ratio = static_cast<double>(mx) / static_cast<double>(std::max<index_t>(1, mn));
  }
  return cv;
}

}  // namespace racp
