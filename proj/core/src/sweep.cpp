#include "bprt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>

#include "bprt/operators.hpp"

namespace bprt {

std::vector<Index> default_levels(Index count) {
  std::vector<Index> levels;
  for (Index n = 1; n < count; n *= 2) levels.push_back(n);
  levels.push_back(count);
  return levels;
}

SweepReport sweep(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family,
                  const std::vector<Index>& levels, double plateau_tol, unsigned threads) {
  require_consistent(basis, dual, family);
  const Index count = basis.count();
  if (levels.empty()) throw BadRange("at least one sweep level is required");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] < 1 || levels[k] > count || (k > 0 && levels[k] <= levels[k - 1])) {
      throw BadRange("sweep levels must be strictly ascending within [1, " + std::to_string(count) + "]");
    }
  }

  const std::vector<double> partial = generalized_partial_sums(gram(basis), family.delta_norms());
  const std::vector<double> banach = banach_partial_sums(basis, family);

  SweepReport report;
  report.levels = levels;
  const std::size_t m = levels.size();
  report.sigma_min_per_level.assign(m, 0.0);
  report.gap_to_full.assign(m, 0.0);
  for (const Index n : levels) {
    const auto u = static_cast<std::size_t>(n);
    report.partial_S.push_back(partial[u - 1]);
    report.partial_banach.push_back(banach[u - 1]);
    report.plateau_S.push_back(plateau_reached(partial, u, plateau_tol));
    report.plateau_banach.push_back(plateau_reached(banach, u, plateau_tol));
  }

  auto evaluate = [&](std::size_t k) {
    const Index n = levels[k];
    const Matrix block = basis.matrix().topLeftCorner(n, n) * family.matrix().topLeftCorner(n, n).transpose();
    report.sigma_min_per_level[k] = singular_values(block)(n - 1);
    report.gap_to_full[k] = n == count ? 0.0 : operator_gap(basis, dual, family, n, count);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, m));
  if (threads <= 1) {
    for (std::size_t k = 0; k < m; ++k) evaluate(k);
    return report;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t k = next++; k < m; k = next++) evaluate(k);
    });
  }
  workers.clear();
  return report;
}

}  // namespace bprt
