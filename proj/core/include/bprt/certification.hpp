#pragma once

// Verdict at truncation: omega-independence of {f_i}, invertibility of
// A = sum (f_i, .) e_i, and the kernel/range identities of an index-zero
// Fredholm operator checked as numerical residuals.

#include <cstdint>
#include <string>

#include "bprt/criteria.hpp"
#include "bprt/operators.hpp"

namespace bprt {

inline constexpr double kDefaultInvTol = 1e-8;

namespace reasons {
inline constexpr const char* kOmegaIndependence = "omega-independence fails";
inline constexpr const char* kSingularOperator = "operator numerically singular";
inline constexpr const char* kDimensionMismatch = "dimension mismatch";
}  // namespace reasons

struct CertifyOptions {
  double rank_tol = kDefaultRankTol;
  double inv_tol = kDefaultInvTol;
  double plateau_tol = kDefaultPlateauTol;
  /// Seed for the random probes of the range/kernel orthogonality check.
  std::uint64_t probe_seed = 0x5eed;
};

struct InvertibilityReport {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  /// sigma_max / sigma_min; +inf when sigma_min == 0.
  double cond = 0.0;
  Index kernel_dim_A = 0;
  Index kernel_dim_A_star = 0;
};

struct FredholmDefects {
  Index kernel_dim_A = 0;
  Index kernel_dim_A_star = 0;
  double range_perp_residual = 0.0;
};

enum class Verdict { Certified, NotCertified };

struct Certificate {
  Index dim = 0;
  Index count = 0;
  ClosenessReport closeness;
  /// Heuristic only: plateau test on the closeness partial sums.
  bool closeness_plateau = false;
  double sigma_min_A = 0.0;
  double sigma_max_A = 0.0;
  double cond_A = 0.0;
  Index omega_rank = 0;
  FredholmDefects fredholm_defects;
  double identity_defect = 0.0;
  Verdict verdict = Verdict::NotCertified;
  /// Empty when Certified; otherwise one of the `reasons` strings.
  std::string reason;

  bool certified() const noexcept { return verdict == Verdict::Certified; }
};

/// Numerical rank of F at rank_tol (relative). For N = 1 the test is
/// ||f_1|| > rank_tol.
Index omega_independence(const PerturbedFamily& family, double rank_tol = kDefaultRankTol);

/// Singular-value diagnostics of the full-level bundle. Kernel dimensions
/// count sigma_k <= inv_tol * sigma_max, computed separately for A and A*.
/// When N < D the active subspace has dimension N and sigma_min is sigma_N.
/// Throws BadLevel when the bundle is not at level N.
InvertibilityReport invertibility(const OperatorBundle& bundle, double inv_tol = kDefaultInvTol);

/// max over numerical-kernel vectors v of A* and random probes x of
/// |(Ax, v)| / (||Ax|| ||v||). Zero when the kernel is empty.
double fredholm_residuals(const OperatorBundle& bundle, double inv_tol = kDefaultInvTol, int probes = 50,
                          std::uint64_t seed = 0x5eed);

/// Composite verdict: Certified iff omega_rank == N and sigma_min_A > inv_tol * sigma_max_A.
/// Mismatched shapes yield NotCertified with reason "dimension mismatch".
Certificate certify(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family,
                    const CertifyOptions& options = {});

}  // namespace bprt
