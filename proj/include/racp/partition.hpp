#pragma once

#include <string>

#include "racp/sparse.hpp"

namespace racp {

struct RowPartition {
  index_t n_procs = 1;
  std::vector<index_t> owner_of_row;
  bool contiguous = true;
  std::string strategy;  // "contiguous" or "contiguous+refined"
};

/// Contiguous row blocks, near-equal sizes (the first n % p blocks get one
/// extra row). The optional refinement pass greedily shifts block
/// boundaries to reduce the edge cut of A while keeping contiguity and
/// nonempty blocks. Requires 1 <= n_procs <= n_rows.
RowPartition partition_rows(const SparseMatrix& a, index_t n_procs, bool refine = false);

/// Stored off-diagonal entries of A crossing block boundaries.
std::int64_t edge_cut(const SparseMatrix& a, const RowPartition& rp);

enum class SweepMode {
  sequential,  // single greedy sweep over all multipliers (normative)
  chunked      // per-process concurrent emulation; results are non-normative
};

struct MultiplierAssignment {
  std::vector<index_t> owner_of_multiplier;
  std::vector<index_t> counts;  // multipliers per process
  bool normative = true;
};

/// Greedy balanced assignment: multipliers are visited in index order;
/// each goes to the candidate process (owners of the rows its column
/// touches) with the fewest multipliers so far, ties to the lowest rank.
/// The chunked mode splits the sweep into contiguous chunks, one per
/// process, each balancing against its own local counts only.
MultiplierAssignment assign_multipliers(const SparseMatrix& b, const RowPartition& rp,
                                        SweepMode mode = SweepMode::sequential);

struct CommVolume {
  std::int64_t rows_exchanged = 0;  // distinct (row, destination) pairs
  double balance_ratio = 1.0;       // max count over min count among candidate procs
};

CommVolume comm_volume(const SparseMatrix& b, const RowPartition& rp,
                       const MultiplierAssignment& ma);

}  // namespace racp
