#include <doctest.h>

#include "bprt/expansion.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bprt;
using namespace bprt::testing;

TEST_CASE("dual_system") {
  SUBCASE("A = I gives f'_i = e_i") {
    const auto fam = random_family(5, 5, 1);
    const PerturbedFamily p = PerturbedFamily::from_vectors(fam.dual.matrix(), fam.dual);
    const DualPerturbedFamily d = dual_system(build_bundle(fam.basis, fam.dual, p, 5), fam.basis);
    CHECK(max_abs(d.vectors - fam.basis.matrix()) <= 1e-12);
  }
  SUBCASE("running example") {
    const auto fam = running_example();
    const DualPerturbedFamily d = dual_system(build_bundle(fam.basis, fam.dual, fam.family, 2), fam.basis);
    CHECK(max_abs(d.vectors.col(0) - vec2(1, 0)) <= 1e-15);
    CHECK(max_abs(d.vectors.col(1) - vec2(-0.5, 1)) <= 1e-15);
    CHECK(d.vectors.col(1).dot(fam.family.vector(0)) == doctest::Approx(0.0));
    CHECK(d.bio_residual <= 1e-15);
  }
  SUBCASE("repeated member is singular") {
    const auto fam = random_family(4, 4, 2);
    const PerturbedFamily p = with_repeated_member(fam.family, fam.dual);
    CHECK_THROWS_AS(dual_system(build_bundle(fam.basis, fam.dual, p, 4), fam.basis), SingularOperator);
  }
  SUBCASE("matches the inverse-transpose oracle") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Index n = 2 + static_cast<Index>(seed % 7);
      const auto fam = random_family(n, n, seed, 0.5);
      const DualPerturbedFamily d = dual_system(build_bundle(fam.basis, fam.dual, fam.family, n), fam.basis);
      const auto expected = oracle::transpose(oracle::inverse(oracle::from_eigen(fam.family.matrix())));
      CHECK(oracle::max_abs_diff(oracle::from_eigen(d.vectors), expected) <= 1e-12 * (1.0 + oracle::max_abs(expected)));
      CHECK(d.bio_residual <= 1e-8);
    }
  }
  SUBCASE("not at full level") {
    const auto fam = running_example();
    CHECK_THROWS_AS(dual_system(build_bundle(fam.basis, fam.dual, fam.family, 1), fam.basis), BadLevel);
  }
}

TEST_CASE("expand") {
  SUBCASE("y = f_k gives the k-th unit vector") {
    const auto fam = random_family(7, 7, 3);
    const ExpansionSolver solver(build_bundle(fam.basis, fam.dual, fam.family, 7));
    for (Index k = 0; k < 7; ++k) {
      const Expansion ex = expand(solver, fam.basis, fam.family.vector(k));
      CHECK(max_abs(ex.coefficients - Vector::Unit(7, k)) <= 1e-8);
    }
  }
  SUBCASE("running example, y = (1, 1)") {
    const auto fam = running_example();
    const OperatorBundle b = build_bundle(fam.basis, fam.dual, fam.family, 2);
    const ExpansionSolver solver(b);
    const Vector x = solver.solve_adjoint(vec2(1, 1));
    CHECK(max_abs(x - vec2(1, 0.5)) <= 1e-15);
    const Expansion ex = expand(b, fam.basis, vec2(1, 1));
    CHECK(max_abs(ex.coefficients - vec2(1, 0.5)) <= 1e-15);
    CHECK(max_abs(reconstruct(fam.family, ex.coefficients) - vec2(1, 1)) <= 1e-15);
  }
  SUBCASE("y = 0") {
    const auto fam = random_family(4, 4, 5);
    const Expansion ex = expand(build_bundle(fam.basis, fam.dual, fam.family, 4), fam.basis, Vector::Zero(4));
    CHECK(ex.coefficients.isZero(0.0));
    CHECK(ex.residual == 0.0);
  }
  SUBCASE("wrong dimension") {
    const auto fam = running_example();
    CHECK_THROWS_AS(expand(build_bundle(fam.basis, fam.dual, fam.family, 2), fam.basis, Vector::Zero(3)),
                    DimensionMismatch);
  }
}

TEST_CASE("expansion properties") {
  Rng rng(11);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto fam = random_family(16, 16, seed, 0.4);
    const OperatorBundle b = build_bundle(fam.basis, fam.dual, fam.family, 16);
    const ExpansionSolver solver(b);
    const DualPerturbedFamily dual = dual_system(solver, fam.basis);

    for (int trial = 0; trial < 100; ++trial) {
      const Vector y = rng.gaussian_vector(16);
      const Expansion ex = expand(solver, fam.basis, y);
      CHECK((reconstruct(fam.family, ex.coefficients) - y).norm() <= 1e-8 * solver.cond() * y.norm());
      CHECK(ex.residual <= kDefaultExpansionTol * solver.cond() * y.norm());
      CHECK(uniqueness_check(fam.family, y, ex.coefficients));
    }
    for (int trial = 0; trial < 50; ++trial) {
      const Vector y = rng.gaussian_vector(16);
      const Vector via_adjoint = fam.basis.matrix().transpose() * solver.solve_adjoint(y);
      const Vector via_dual = dual.vectors.transpose() * y;
      CHECK((via_adjoint - via_dual).norm() <= 1e-10 * via_dual.norm());
    }
    for (int trial = 0; trial < 10; ++trial) {
      const double alpha = rng.uniform(-2, 2), beta = rng.uniform(-2, 2);
      const Vector y = rng.gaussian_vector(16), z = rng.gaussian_vector(16);
      const Vector lhs = expand(solver, fam.basis, alpha * y + beta * z).coefficients;
      const Vector rhs = alpha * expand(solver, fam.basis, y).coefficients + beta * expand(solver, fam.basis, z).coefficients;
      CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, rhs.norm()));
    }
  }
}

TEST_CASE("reconstruct") {
  const auto fam = random_family(5, 5, 8);
  CHECK(reconstruct(fam.family, Vector::Zero(5)).isZero(0.0));
  for (Index k = 0; k < 5; ++k) CHECK(reconstruct(fam.family, Vector::Unit(5, k)) == fam.family.vector(k));
  const auto ex = running_example();
  CHECK(reconstruct(ex.family, vec2(1, 0.5)) == vec2(1, 1));
  CHECK_THROWS_AS(reconstruct(fam.family, Vector::Zero(4)), DimensionMismatch);
}

TEST_CASE("uniqueness_check") {
  const auto fam = random_family(6, 6, 13);
  const OperatorBundle b = build_bundle(fam.basis, fam.dual, fam.family, 6);
  Rng rng(2);
  const Vector y = rng.gaussian_vector(6);
  const Vector c = expand(b, fam.basis, y).coefficients;
  CHECK(uniqueness_check(fam.family, y, c));
  CHECK_FALSE(uniqueness_check(fam.family, y, c + 1e-3 * Vector::Unit(6, 2)));
  CHECK(uniqueness_check(fam.family, Vector::Zero(6), Vector::Zero(6)));
  CHECK_FALSE(uniqueness_check(fam.family, y, Vector::Zero(5)));
}

TEST_CASE("N < D: minimum-norm duals and least-squares coefficients") {
  const auto fam = random_family(9, 5, 21);
  const OperatorBundle b = build_bundle(fam.basis, fam.dual, fam.family, 5);
  const ExpansionSolver solver(b);
  const DualPerturbedFamily dual = dual_system(solver, fam.basis);
  CHECK(dual.bio_residual <= 1e-10);
  CHECK(max_abs(b.A * dual.vectors - fam.basis.matrix()) <= 1e-10);

  Rng rng(4);
  const Vector inside = fam.family.matrix() * rng.gaussian_vector(5);
  const Expansion ex = expand(solver, fam.basis, inside);
  CHECK(ex.residual <= 1e-10 * inside.norm());
  CHECK(uniqueness_check(fam.family, inside, ex.coefficients));

  const Vector outside = rng.gaussian_vector(9);
  const Expansion ls = expand(solver, fam.basis, outside);
  CHECK(ls.residual > 1e-3);
  CHECK(uniqueness_check(fam.family, outside, ls.coefficients));
}
