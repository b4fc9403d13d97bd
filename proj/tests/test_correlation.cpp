#include <gtest/gtest.h>

#include <cmath>

#include "skewq/bounds.hpp"
#include "skewq/correlation.hpp"
#include "skewq/errors.hpp"
#include "skewq/rng.hpp"
#include "skewq/states.hpp"

using namespace skewq;

namespace {

// Deficit of a qubit-A basis from the operator definitions, no shortcuts.
double direct_deficit(const BipartiteDensityMatrix& rho, const ProjectiveBasis& basis, double alpha) {
  const DensityMatrix rho_a = partial_trace(rho, Subsystem::A);
  const ComplexMatrix id_b = ComplexMatrix::Identity(rho.d_b(), rho.d_b());
  double total = 0.0;
  for (Eigen::Index k = 0; k < basis.dim(); ++k) {
    HermitianOperator p = basis.projector(k);
    total += skew_information_I(rho.state(), HermitianOperator(kron(p.matrix(), id_b)), alpha) -
             skew_information_I(rho_a, p, alpha);
  }
  return total;
}

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

}  // namespace

TEST(BasisFromUnitary, IdentityAndHadamard) {
  EXPECT_EQ(basis_from_unitary(ComplexMatrix::Identity(3, 3)).vectors(), ComplexMatrix::Identity(3, 3));
  EXPECT_LT(max_abs(basis_from_unitary(hadamard()).vectors() - pauli_basis(PauliAxis::x).vectors()), 1e-15);
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 0) = 2.0;
  EXPECT_THROW(basis_from_unitary(bad), DomainError);
}

TEST(BasisFromUnitary, ParameterizationIsUnitary) {
  Rng rng(2);
  for (int d : {2, 3}) {
    std::vector<double> params(static_cast<std::size_t>(d * d));
    for (auto& x : params) x = rng.normal();
    ComplexMatrix u = unitary_from_parameters(params, d);
    EXPECT_LT(max_abs(u.adjoint() * u - ComplexMatrix::Identity(d, d)), 1e-12);
  }
}

TEST(Deficit, ProductStatesVanish) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rho = random_density({EnsembleKind::product, 2, 3, 1, seed});
    ProjectiveBasis b = basis_from_unitary(random_unitary(2, seed + 100));
    for (double a : {0.2, 0.5, 0.9}) EXPECT_LT(std::abs(correlation_deficit(rho, b, a)), 1e-12);
  }
}

TEST(Deficit, ClassicalQuantumInItsBasis) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rho = random_density({EnsembleKind::classical_quantum, 3, 2, 1, seed});
    EXPECT_LT(correlation_deficit(rho, computational_basis(3), 0.5), 1e-12);
  }
}

TEST(Deficit, BellStateComputationalBasis) {
  // Pure global state: I(|k><k| (x) I) is the variance 1/2 - 1/4 for each k,
  // while rho_A = I/2 commutes with everything. Total 1/2, the Bell value of D.
  BipartiteDensityMatrix bell = werner_isotropic(1.0);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  double by_variance = 0.0;
  for (Eigen::Index k = 0; k < 2; ++k)
    by_variance += variance(bell.state(), HermitianOperator(kron(computational_basis(2).projector(k).matrix(), id)));
  EXPECT_NEAR(by_variance, 0.5, 1e-15);
  EXPECT_NEAR(correlation_deficit(bell, computational_basis(2), 0.5), 0.5, 1e-12);
  EXPECT_NEAR(direct_deficit(bell, computational_basis(2), 0.5), 0.5, 1e-12);
  EXPECT_NEAR(correlation_deficit(bell, computational_basis(2), 0.5), example_closed_form_D(3, 1.0, 0.5), 1e-12);
}

TEST(Deficit, FastEvaluatorMatchesDefinition) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto rho = random_density({EnsembleKind::full_rank, 2, 3, 1, seed});
    ProjectiveBasis b = basis_from_unitary(random_unitary(2, seed + 7));
    EXPECT_NEAR(correlation_deficit(rho, b, 0.3), direct_deficit(rho, b, 0.3), 1e-12);
  }
}

TEST(Deficit, RelabelingInvariance) {
  auto rho = random_density({EnsembleKind::full_rank, 3, 2, 1, 17});
  ComplexMatrix u = random_unitary(3, 4);
  ComplexMatrix perm(3, 3);
  perm.col(0) = u.col(2);
  perm.col(1) = u.col(0);
  perm.col(2) = u.col(1);
  EXPECT_NEAR(correlation_deficit(rho, basis_from_unitary(u), 0.6),
              correlation_deficit(rho, basis_from_unitary(perm), 0.6), 1e-12);
}

TEST(Deficit, ShapeMismatch) {
  EXPECT_THROW(correlation_deficit(werner_swap(0.0), computational_basis(3), 0.5), ShapeError);
}

TEST(QuantumCorrelation, ClassicalQuantumIsZero) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto rho = random_density({EnsembleKind::classical_quantum, 2, 2, 1, seed});
    EXPECT_LT(quantum_correlation_D(rho, 0.5).value, 1e-6);
  }
  EXPECT_LT(quantum_correlation_D(example2_state(), 0.3).value, 1e-6);
}

TEST(QuantumCorrelation, QutritClassicalQuantum) {
  auto rho = random_density({EnsembleKind::classical_quantum, 3, 2, 1, 3});
  CorrelationResult res = quantum_correlation_D(rho, 0.5);
  EXPECT_LT(res.value, 1e-6);
  EXPECT_EQ(res.optimizer_trace.size(), 20u);
  EXPECT_GE(res.restarts_at_best, 1);
}

TEST(QuantumCorrelation, WernerClosedForm) {
  for (double p : {-1.0, -0.4, 0.2, 0.5, 0.8}) {
    for (double a : {0.2, 0.5}) {
      double expected = example_closed_form_D(1, p, a);
      EXPECT_NEAR(quantum_correlation_D(werner_swap(p), a).value, expected, 1e-6) << p;
      EXPECT_NEAR(brute_force_D_qubit(werner_swap(p), a), expected, 1e-6) << p;
    }
  }
}

TEST(QuantumCorrelation, BellStateIsOneHalf) {
  for (double a : {0.2, 0.5, 0.7}) {
    EXPECT_NEAR(brute_force_D_qubit(werner_isotropic(1.0), a), 0.5, 1e-9);
    EXPECT_NEAR(example_closed_form_D(3, 1.0, a), 0.5, 1e-12);
  }
}

TEST(QuantumCorrelation, InvalidConfig) {
  OptimizerConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(quantum_correlation_D(werner_swap(0.0), 0.5, cfg), DomainError);
}

TEST(QubitGrid, WernerLandscapeIsFlat) {
  for (double p : {-0.7, 0.1, 0.9}) {
    QubitGridResult r = brute_force_D_qubit_scan(werner_swap(p), 0.5);
    EXPECT_LT(r.grid_max - r.grid_min, 1e-8);
  }
}

TEST(QubitGrid, ProductStateIsZero) {
  auto rho = random_density({EnsembleKind::product, 2, 3, 1, 12});
  EXPECT_LT(brute_force_D_qubit(rho, 0.5), 1e-12);
}

TEST(QubitGrid, RequiresQubitA) {
  auto rho = random_density({EnsembleKind::full_rank, 3, 2, 1, 1});
  EXPECT_THROW(brute_force_D_qubit(rho, 0.5), DomainError);
}

TEST(QubitGrid, AgreesWithOptimizerOnRandomStates) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto rho = random_density({EnsembleKind::full_rank, 2, 2, 1, child_seed(77, seed)});
    double grid = brute_force_D_qubit(rho, 0.5);
    double opt = quantum_correlation_D(rho, 0.5).value;
    EXPECT_LE(opt, grid + 1e-6);
    EXPECT_GE(opt, grid - 1e-4);
  }
}

TEST(QubitGrid, LocalUnitaryCovariance) {
  auto rho = random_density({EnsembleKind::full_rank, 2, 2, 1, 31});
  ComplexMatrix u = kron(random_unitary(2, 8), ComplexMatrix::Identity(2, 2));
  ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
  BipartiteDensityMatrix r2(ComplexMatrix(0.5 * (rotated + rotated.adjoint())), 2, 2);
  EXPECT_NEAR(brute_force_D_qubit(rho, 0.4), brute_force_D_qubit(r2, 0.4), 1e-6);
}
