#pragma once

// Reference families for tests and truncation sweeps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bprt/hilbert.hpp"

namespace bprt {

enum class CorpusKind { Orthonormal, FourierPerturbed, Triangular, RandomDecay, Degenerate };

/// Coordinate presentation of the unperturbed basis.
enum class BaseKind {
  Identity,           ///< first N standard coordinate vectors
  RandomOrthonormal,  ///< Q factor of a seeded Gaussian matrix
  Triangular,         ///< e_i = (1, ..., 1, 0, ..., 0) / sqrt(i), i leading ones
  Fourier,            ///< sampled real trigonometric system, unit norm
  RandomGeneral,      ///< I + (0.5 / sqrt(D)) * Gaussian, columns unit norm
};

struct CorpusSpec {
  CorpusKind kind = CorpusKind::Orthonormal;
  Index dim = 4;
  Index count = 4;
  /// ||d_i|| = scale * i^(-decay), i 1-based.
  double decay = 1.0;
  double scale = 0.0;
  /// FourierPerturbed only: frequency shift per index (missing entries are 0).
  std::vector<double> frequency_shifts;
  std::uint64_t seed = 0;
  /// Overrides the kind's default base. Ignored for FourierPerturbed.
  std::optional<BaseKind> base;
};

struct CorpusFamily {
  BasisFamily basis;
  DualFamily dual;
  PerturbedFamily family;
};

/// Default base per kind: Orthonormal -> Identity, FourierPerturbed -> Fourier,
/// Triangular -> Triangular, RandomDecay -> RandomOrthonormal, Degenerate -> Identity.
BaseKind default_base(CorpusKind kind);
BaseKind effective_base(const CorpusSpec& spec);

/// Throws BadSpec on invalid dimensions, negative scale, or a non-finite decay.
void validate(const CorpusSpec& spec);

/// Base matrix (D x N) alone.
Matrix generate_base(BaseKind base, Index dim, Index count, std::uint64_t seed);

/// Deterministic in the spec. Deltas along seeded sphere-uniform directions
/// with ||d_i|| = scale * i^(-decay); FourierPerturbed instead shifts the
/// i-th frequency; Degenerate finally sets f_2 := f_1 (f_1 := 0 when N = 1).
CorpusFamily generate(const CorpusSpec& spec);

/// True when decay > 1/2, i.e. sum ||d_i||^2 converges in the limit.
bool quadratic_regime(const CorpusSpec& spec);

std::string to_string(CorpusKind kind);
std::string to_string(BaseKind base);
CorpusKind parse_corpus_kind(const std::string& text);
BaseKind parse_base_kind(const std::string& text);

}  // namespace bprt
