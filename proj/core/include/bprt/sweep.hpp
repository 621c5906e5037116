#pragma once

// Truncation sweep: how the criteria and operators evolve as the number of
// retained family members grows.

#include <vector>

#include "bprt/criteria.hpp"

namespace bprt {

struct SweepReport {
  std::vector<Index> levels;
  std::vector<double> partial_S;
  std::vector<double> partial_banach;
  /// sigma_min of the leading n x n block of A_n.
  std::vector<double> sigma_min_per_level;
  /// sigma_max(K_N - K_n); zero at n = N.
  std::vector<double> gap_to_full;
  std::vector<bool> plateau_S;
  std::vector<bool> plateau_banach;
};

/// 1, 2, 4, ... below N, then N.
std::vector<Index> default_levels(Index count);

/// Throws BadRange unless levels are strictly ascending within [1, N].
/// Levels are evaluated on up to `threads` workers (0 = hardware
/// concurrency); results do not depend on the thread count.
SweepReport sweep(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family,
                  const std::vector<Index>& levels, double plateau_tol = kDefaultPlateauTol, unsigned threads = 1);

}  // namespace bprt
