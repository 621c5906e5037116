#pragma once

// Closeness criteria between a perturbed family and the biorthogonal system
// of a basis: the Gram-weighted double series, its orthonormal quadratic
// special case, the single-sum Banach variant, and the Cauchy tail bound.

#include <optional>
#include <vector>

#include "bprt/hilbert.hpp"

namespace bprt {

inline constexpr double kDefaultPlateauTol = 1e-6;

/// Above this many terms, sums use compensated accumulation.
inline constexpr Index kCompensationThreshold = 256;

struct ClosenessReport {
  double generalized_sum = 0.0;
  std::optional<double> quadratic_sum;
  double banach_sum = 0.0;
  /// partial_sums[n-1] = S_n, both indices restricted to 1..n.
  std::vector<double> partial_sums;
};

/// S_n for n = 1..N of sum_{i,j} |G_ij| * w_i * w_j.
///
/// Shell n holds the pairs with max(i, j) = n, visited row-major: the column
/// entries (i, n) for i < n, then the row entries (n, j) for j <= n. Shells are
/// added to the running total in ascending n with plain addition, so the
/// sequence is nondecreasing.
std::vector<double> generalized_partial_sums(const Matrix& gram_matrix, const Vector& weights);

ClosenessReport generalized_sum(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family);

/// Sum ||f_i - e_i||^2; throws NotOrthonormal unless max|E^T E - I| <= 1e-8.
double quadratic_sum(const BasisFamily& basis, const PerturbedFamily& family);

/// Sum ||e_i|| * ||f_i - e'_i||.
double banach_sum(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family);

/// Partial sums of banach_sum, n = 1..N.
std::vector<double> banach_partial_sums(const BasisFamily& basis, const PerturbedFamily& family);

/// sum_{i,k = l+1..j} |(e_i, e_k)| ||d_i|| ||d_k||, 0-based exclusive lower
/// level l and inclusive upper level j (0 <= l < j <= N). Throws BadRange.
double tail_bound(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family, Index l, Index j);
double tail_bound(const Matrix& gram_matrix, const Vector& weights, Index l, Index j);

/// Plateau heuristic at level n (1-based): S_n - S_{floor(n/2)} <= tol * (1 + S_n),
/// with S_0 = 0.
bool plateau_reached(const std::vector<double>& partial_sums, std::size_t n, double tol = kDefaultPlateauTol);

/// Throws DimensionMismatch unless all three families share dim and count.
void require_consistent(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family);

/// Running sum with optional Kahan compensation.
class Accumulator {
 public:
  explicit Accumulator(bool compensated) : compensated_(compensated) {}

  void add(double x) {
    if (!compensated_) {
      sum_ += x;
      return;
    }
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }

  double value() const noexcept { return sum_; }

 private:
  bool compensated_;
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace bprt
