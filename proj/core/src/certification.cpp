#include "bprt/certification.hpp"

#include <cmath>
#include <limits>

#include "bprt/random.hpp"

namespace bprt {

namespace {

Index count_at_or_below(const Vector& s, double cutoff) {
  Index count = 0;
  for (Index k = 0; k < s.size(); ++k) {
    if (s(k) <= cutoff) ++count;
  }
  return count;
}

void require_full_level(const OperatorBundle& bundle) {
  if (!bundle.full_level()) throw BadLevel("bundle is not built at full level");
}

}  // namespace

Index omega_independence(const PerturbedFamily& family, double rank_tol) {
  if (family.count() == 1) return family.vector(0).norm() > rank_tol ? 1 : 0;
  return numerical_rank(family.matrix(), rank_tol);
}

InvertibilityReport invertibility(const OperatorBundle& bundle, double inv_tol) {
  require_full_level(bundle);
  const Index active = bundle.level;
  const Vector s = singular_values(bundle.A);
  const Vector s_star = singular_values(bundle.A_star);

  InvertibilityReport report;
  report.sigma_max = s(0);
  report.sigma_min = s(active - 1);
  report.cond = report.sigma_min > 0.0 ? report.sigma_max / report.sigma_min
                                       : std::numeric_limits<double>::infinity();
  report.kernel_dim_A = count_at_or_below(s, inv_tol * s(0));
  report.kernel_dim_A_star = count_at_or_below(s_star, inv_tol * s_star(0));
  return report;
}

double fredholm_residuals(const OperatorBundle& bundle, double inv_tol, int probes, std::uint64_t seed) {
  require_full_level(bundle);
  Eigen::BDCSVD<Matrix> svd(bundle.A_star, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cutoff = inv_tol * s(0);
  std::vector<Index> kernel;
  for (Index k = 0; k < s.size(); ++k) {
    if (s(k) <= cutoff) kernel.push_back(k);
  }
  if (kernel.empty()) return 0.0;

  Rng rng(seed);
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const Vector x = rng.gaussian_vector(bundle.dim());
    const Vector ax = bundle.A * x;
    const double ax_norm = ax.norm();
    if (ax_norm == 0.0) continue;
    for (const Index k : kernel) {
      const auto v = svd.matrixV().col(k);
      worst = std::max(worst, std::abs(ax.dot(v)) / (ax_norm * v.norm()));
    }
  }
  return worst;
}

Certificate certify(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family,
                    const CertifyOptions& options) {
  Certificate cert;
  cert.dim = family.dim();
  cert.count = family.count();
  try {
    require_consistent(basis, dual, family);
  } catch (const DimensionMismatch&) {
    cert.verdict = Verdict::NotCertified;
    cert.reason = reasons::kDimensionMismatch;
    return cert;
  }

  cert.closeness = generalized_sum(basis, dual, family);
  cert.closeness_plateau =
      plateau_reached(cert.closeness.partial_sums, cert.closeness.partial_sums.size(), options.plateau_tol);
  cert.omega_rank = omega_independence(family, options.rank_tol);

  const OperatorBundle bundle = build_bundle(basis, dual, family, basis.count());
  const InvertibilityReport inv = invertibility(bundle, options.inv_tol);
  cert.sigma_min_A = inv.sigma_min;
  cert.sigma_max_A = inv.sigma_max;
  cert.cond_A = inv.cond;
  cert.fredholm_defects.kernel_dim_A = inv.kernel_dim_A;
  cert.fredholm_defects.kernel_dim_A_star = inv.kernel_dim_A_star;
  cert.fredholm_defects.range_perp_residual =
      fredholm_residuals(bundle, options.inv_tol, 50, options.probe_seed);
  cert.identity_defect = bundle.identity_defect.value_or(0.0);

  if (cert.omega_rank < cert.count) {
    cert.verdict = Verdict::NotCertified;
    cert.reason = reasons::kOmegaIndependence;
  } else if (!(inv.sigma_min > options.inv_tol * inv.sigma_max)) {
    cert.verdict = Verdict::NotCertified;
    cert.reason = reasons::kSingularOperator;
  } else {
    cert.verdict = Verdict::Certified;
  }
  return cert;
}

}  // namespace bprt
