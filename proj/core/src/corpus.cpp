#include "bprt/corpus.hpp"

#include <cmath>
#include <numbers>

#include "bprt/random.hpp"

namespace bprt {

namespace {

// Stream offsets keep base and delta draws independent of each other.
constexpr std::uint64_t kBaseStream = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kDeltaStream = 0xbf58476d1ce4e5b9ULL;

// Column `index` of the real trigonometric system 1, cos t, sin t, cos 2t, ...
// sampled at t_k = 2 pi k / D, with its frequency moved by `shift`.
Vector trig_column(Index dim, Index index, double shift) {
  const Index harmonic = (index + 1) / 2;
  const bool is_sine = index % 2 == 0 && index > 0;
  const double freq = static_cast<double>(harmonic) + shift;
  Vector v(dim);
  for (Index k = 0; k < dim; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(dim);
    v(k) = is_sine ? std::sin(freq * t) : std::cos(freq * t);
  }
  const double norm = v.norm();
  if (norm == 0.0) throw BadSpec("trigonometric column " + std::to_string(index) + " vanishes on the sample grid");
  return v / norm;
}

}  // namespace

BaseKind default_base(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::Orthonormal: return BaseKind::Identity;
    case CorpusKind::FourierPerturbed: return BaseKind::Fourier;
    case CorpusKind::Triangular: return BaseKind::Triangular;
    case CorpusKind::RandomDecay: return BaseKind::RandomOrthonormal;
    case CorpusKind::Degenerate: return BaseKind::Identity;
  }
  return BaseKind::Identity;
}

BaseKind effective_base(const CorpusSpec& spec) {
  if (spec.kind == CorpusKind::FourierPerturbed) return BaseKind::Fourier;
  return spec.base.value_or(default_base(spec.kind));
}

void validate(const CorpusSpec& spec) {
  if (spec.dim < 1 || spec.count < 1) throw BadSpec("dim and count must be positive");
  if (spec.count > spec.dim) throw BadSpec("count must not exceed dim");
  if (!(spec.scale >= 0.0) || !std::isfinite(spec.scale)) throw BadSpec("scale must be finite and nonnegative");
  if (!std::isfinite(spec.decay)) throw BadSpec("decay must be finite");
  for (const double s : spec.frequency_shifts) {
    if (!std::isfinite(s)) throw BadSpec("frequency shifts must be finite");
  }
  if (spec.kind != CorpusKind::FourierPerturbed && !spec.frequency_shifts.empty()) {
    throw BadSpec("frequency shifts apply to FourierPerturbed only");
  }
  if (spec.kind == CorpusKind::FourierPerturbed && spec.frequency_shifts.size() > static_cast<std::size_t>(spec.count)) {
    throw BadSpec("more frequency shifts than family members");
  }
}

Matrix generate_base(BaseKind base, Index dim, Index count, std::uint64_t seed) {
  switch (base) {
    case BaseKind::Identity:
      return Matrix::Identity(dim, dim).leftCols(count);
    case BaseKind::RandomOrthonormal: {
      Rng rng(seed ^ kBaseStream);
      const Eigen::HouseholderQR<Matrix> qr(rng.gaussian_matrix(dim, dim));
      return (qr.householderQ() * Matrix::Identity(dim, count)).eval();
    }
    case BaseKind::Triangular: {
      Matrix e = Matrix::Zero(dim, count);
      for (Index i = 0; i < count; ++i) e.col(i).head(i + 1).setConstant(1.0 / std::sqrt(static_cast<double>(i + 1)));
      return e;
    }
    case BaseKind::Fourier: {
      Matrix e(dim, count);
      for (Index i = 0; i < count; ++i) e.col(i) = trig_column(dim, i, 0.0);
      return e;
    }
    case BaseKind::RandomGeneral: {
      Rng rng(seed ^ kBaseStream);
      Matrix e = Matrix::Identity(dim, dim) + (0.5 / std::sqrt(static_cast<double>(dim))) * rng.gaussian_matrix(dim, dim);
      e = e.leftCols(count).eval();
      e.colwise().normalize();
      return e;
    }
  }
  throw BadSpec("unknown base kind");
}

CorpusFamily generate(const CorpusSpec& spec) {
  validate(spec);
  BasisFamily basis(generate_base(effective_base(spec), spec.dim, spec.count, spec.seed));
  DualFamily dual = biorthogonal(basis);

  if (spec.kind == CorpusKind::FourierPerturbed) {
    Matrix f(spec.dim, spec.count);
    for (Index i = 0; i < spec.count; ++i) {
      const std::size_t u = static_cast<std::size_t>(i);
      const double shift = u < spec.frequency_shifts.size() ? spec.frequency_shifts[u] : 0.0;
      f.col(i) = shift == 0.0 ? Vector(basis.vector(i)) : trig_column(spec.dim, i, shift);
    }
    PerturbedFamily family = PerturbedFamily::from_vectors(std::move(f), dual);
    return {std::move(basis), std::move(dual), std::move(family)};
  }

  Matrix deltas = Matrix::Zero(spec.dim, spec.count);
  if (spec.scale > 0.0) {
    Rng rng(spec.seed ^ kDeltaStream);
    for (Index i = 0; i < spec.count; ++i) {
      const double norm = spec.scale * std::pow(static_cast<double>(i + 1), -spec.decay);
      deltas.col(i) = norm * rng.unit_vector(spec.dim);
    }
  }
  PerturbedFamily family = PerturbedFamily::from_deltas(dual, std::move(deltas));

  if (spec.kind == CorpusKind::Degenerate) {
    Matrix f = family.matrix();
    if (spec.count == 1) {
      f.col(0).setZero();
    } else {
      f.col(1) = f.col(0);
    }
    family = PerturbedFamily::from_vectors(std::move(f), dual);
  }
  return {std::move(basis), std::move(dual), std::move(family)};
}

bool quadratic_regime(const CorpusSpec& spec) { return spec.decay > 0.5; }

std::string to_string(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::Orthonormal: return "orthonormal";
    case CorpusKind::FourierPerturbed: return "fourier";
    case CorpusKind::Triangular: return "triangular";
    case CorpusKind::RandomDecay: return "random-decay";
    case CorpusKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

std::string to_string(BaseKind base) {
  switch (base) {
    case BaseKind::Identity: return "identity";
    case BaseKind::RandomOrthonormal: return "random-orthonormal";
    case BaseKind::Triangular: return "triangular";
    case BaseKind::Fourier: return "fourier";
    case BaseKind::RandomGeneral: return "random-general";
  }
  return "unknown";
}

CorpusKind parse_corpus_kind(const std::string& text) {
  for (const auto kind : {CorpusKind::Orthonormal, CorpusKind::FourierPerturbed, CorpusKind::Triangular,
                          CorpusKind::RandomDecay, CorpusKind::Degenerate}) {
    if (to_string(kind) == text) return kind;
  }
  throw BadSpec("unknown corpus kind '" + text + "'");
}

BaseKind parse_base_kind(const std::string& text) {
  for (const auto base : {BaseKind::Identity, BaseKind::RandomOrthonormal, BaseKind::Triangular, BaseKind::Fourier,
                          BaseKind::RandomGeneral}) {
    if (to_string(base) == text) return base;
  }
  throw BadSpec("unknown base kind '" + text + "'");
}

}  // namespace bprt
