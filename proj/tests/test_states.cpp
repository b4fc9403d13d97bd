#include <gtest/gtest.h>

#include <cmath>

#include "skewq/correlation.hpp"
#include "skewq/errors.hpp"
#include "skewq/rng.hpp"
#include "skewq/states.hpp"

using namespace skewq;

namespace {

ComplexMatrix swap_op() {
  ComplexMatrix v = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v(i * 2 + j, j * 2 + i) = 1.0;
  return v;
}

RealVector sorted_eigs(const ComplexMatrix& m) { return herm_eig(m).eigenvalues; }

}  // namespace

TEST(Werner, SwapFamilyEndpoints) {
  EXPECT_LT(max_abs(werner_swap(0.5).matrix() - ComplexMatrix::Identity(4, 4) / 4.0), 1e-15);

  ComplexMatrix singlet = (ComplexMatrix::Identity(4, 4) - swap_op()) / 2.0;
  EXPECT_LT(max_abs(werner_swap(-1.0).matrix() - singlet), 1e-15);
  RealVector e = sorted_eigs(werner_swap(-1.0).matrix());
  EXPECT_NEAR(e(3), 1.0, 1e-15);
  EXPECT_NEAR(e(2), 0.0, 1e-15);

  ComplexMatrix sym = (ComplexMatrix::Identity(4, 4) + swap_op()) / 6.0;
  EXPECT_LT(max_abs(werner_swap(1.0).matrix() - sym), 1e-15);
  e = sorted_eigs(sym);
  EXPECT_NEAR(e(0), 0.0, 1e-15);
  EXPECT_NEAR(e(1), 1.0 / 3.0, 1e-15);
}

TEST(Werner, IsotropicFamily) {
  EXPECT_LT(max_abs(werner_isotropic(0.0).matrix() - ComplexMatrix::Identity(4, 4) / 4.0), 1e-15);
  RealVector e = sorted_eigs(werner_isotropic(1.0).matrix());
  EXPECT_NEAR(e(3), 1.0, 1e-15);
  EXPECT_NEAR(e(2), 0.0, 1e-15);

  e = sorted_eigs(werner_isotropic(1.0 / 3.0).matrix());
  EXPECT_NEAR(e(0), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(e(1), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(e(2), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(e(3), 0.5, 1e-15);
  EXPECT_TRUE(werner_isotropic_separable(1.0 / 3.0));
  EXPECT_FALSE(werner_isotropic_separable(0.34));
}

TEST(Werner, OutOfRangeParameters) {
  EXPECT_THROW(werner_swap(1.01), DomainError);
  EXPECT_THROW(werner_swap(-1.01), DomainError);
  EXPECT_THROW(werner_isotropic(-0.01), DomainError);
  EXPECT_THROW(werner_isotropic(1.01), DomainError);
}

TEST(Werner, DefiningSymmetries) {
  Rng rng(3);
  for (double p : {-1.0, -0.3, 0.5, 0.9}) {
    ComplexMatrix u = random_unitary(2, rng);
    ComplexMatrix uu = kron(u, u);
    ComplexMatrix w = werner_swap(p).matrix();
    EXPECT_LT(max_abs(uu * w * uu.adjoint() - w), 1e-10);
  }
  for (double p : {0.0, 0.2, 0.7, 1.0}) {
    ComplexMatrix u = random_unitary(2, rng);
    ComplexMatrix uu = kron(u, u.conjugate());
    ComplexMatrix w = werner_isotropic(p).matrix();
    EXPECT_LT(max_abs(uu * w * uu.adjoint() - w), 1e-10);
  }
}

TEST(Example2, ReducedStatesAndZeroDeficit) {
  BipartiteDensityMatrix rho = example2_state();
  EXPECT_LT(max_abs(partial_trace(rho, Subsystem::A).matrix() - ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_LT(max_abs(partial_trace(rho, Subsystem::B).matrix() - ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);
  for (double a : {0.2, 0.5, 0.8})
    EXPECT_LT(correlation_deficit(rho, pauli_basis(PauliAxis::x), a), 1e-15);
}

TEST(PauliBases, EigenvectorsAndOverlap) {
  EXPECT_LT(max_abs(pauli_basis(PauliAxis::z).vectors() - ComplexMatrix::Identity(2, 2)), 1e-15);
  ComplexMatrix x = pauli_basis(PauliAxis::x).vectors();
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(x(0, 0).real(), s, 1e-15);
  EXPECT_NEAR(x(1, 0).real(), s, 1e-15);
  EXPECT_NEAR(x(0, 1).real(), s, 1e-15);
  EXPECT_NEAR(x(1, 1).real(), -s, 1e-15);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::norm(x.col(i).dot(ComplexMatrix::Identity(2, 2).col(j))), 0.5, 1e-15);
  for (PauliAxis ax : {PauliAxis::x, PauliAxis::y, PauliAxis::z}) {
    ProjectiveBasis b = pauli_basis(ax);
    ComplexMatrix p = pauli_matrix(ax);
    EXPECT_LT(max_abs(p * b.vector(0) - b.vector(0)), 1e-15);
    EXPECT_LT(max_abs(p * b.vector(1) + b.vector(1)), 1e-15);
  }
}

TEST(RandomDensity, PureDrawIsRankOne) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto rho = random_density({EnsembleKind::pure, 2, 2, 1, seed});
    RealVector e = rho.state().spectrum().eigenvalues;
    EXPECT_LT(e(e.size() - 2), 1e-10);
  }
}

TEST(RandomDensity, FullRankIsPositiveDefinite) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto rho = random_density({EnsembleKind::full_rank, 4, 1, 1, seed});
    EXPECT_GT(rho.state().spectrum().eigenvalues.minCoeff(), 0.0);
  }
}

TEST(RandomDensity, FixedRankHasRequestedRank) {
  auto rho = random_density({EnsembleKind::fixed_rank, 2, 3, 2, 11});
  RealVector e = rho.state().spectrum().eigenvalues;
  EXPECT_LT(e(3), 1e-12);
  EXPECT_GT(e(4), 1e-6);
}

TEST(RandomDensity, ProductAndClassicalQuantumStructure) {
  auto prod = random_density({EnsembleKind::product, 2, 3, 1, 4});
  ComplexMatrix ra = partial_trace(prod, Subsystem::A).matrix();
  ComplexMatrix rb = partial_trace(prod, Subsystem::B).matrix();
  EXPECT_LT(max_abs(kron(ra, rb) - prod.matrix()), 1e-12);

  auto cq = random_density({EnsembleKind::classical_quantum, 2, 3, 1, 4});
  EXPECT_EQ(max_abs(cq.matrix().block(0, 3, 3, 3)), 0.0);
}

TEST(RandomDensity, SameSeedIsBitIdentical) {
  for (auto kind : {EnsembleKind::pure, EnsembleKind::full_rank, EnsembleKind::fixed_rank, EnsembleKind::product,
                    EnsembleKind::classical_quantum, EnsembleKind::separable_mixture}) {
    EnsembleSpec spec{kind, 2, 2, 2, 1234};
    ComplexMatrix a = random_density(spec).matrix();
    ComplexMatrix b = random_density(spec).matrix();
    EXPECT_EQ(a, b) << to_string(kind);
  }
}

TEST(RandomDensity, InvalidSpecThrows) {
  EXPECT_THROW(random_density({EnsembleKind::full_rank, 0, 2, 1, 0}), DomainError);
  EXPECT_THROW(random_density({EnsembleKind::fixed_rank, 2, 2, 5, 0}), DomainError);
  EXPECT_THROW(ensemble_kind_from_string("gibbs"), DomainError);
}

TEST(RandomUnitary, UnitaryAndDeterministic) {
  for (int d : {2, 3, 4}) {
    ComplexMatrix u = random_unitary(d, 77);
    EXPECT_LT(max_abs(u.adjoint() * u - ComplexMatrix::Identity(d, d)), 1e-10);
    EXPECT_EQ(u, random_unitary(d, 77));
    EXPECT_NO_THROW(basis_from_unitary(u));
  }
}

TEST(Rng, ChildSeedsDiffer) {
  EXPECT_NE(child_seed(42, 0), child_seed(42, 1));
  EXPECT_NE(child_seed(42, 0), child_seed(43, 0));
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.normal(), b.normal());
  Rng c(9);
  for (int i = 0; i < 1000; ++i) {
    double u = c.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
