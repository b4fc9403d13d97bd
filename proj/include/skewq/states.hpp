#pragma once

// State and observable families: the two-qubit Werner families, the
// separable example state, Pauli eigenbases and seeded random ensembles.

#include <cstdint>
#include <string>

#include "skewq/linalg.hpp"
#include "skewq/rng.hpp"
#include "skewq/skew.hpp"

namespace skewq {

enum class EnsembleKind { pure, full_rank, fixed_rank, product, classical_quantum, separable_mixture };

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);

// A random ensemble. Single-system ensembles use d_b = 1; the drawn state then
// has dimension d_a. `rank` is only read for fixed_rank.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::full_rank;
  int d_a = 2;
  int d_b = 2;
  int rank = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

// (2 - p)/6 I + (2p - 1)/6 V with V the swap operator, p in [-1, 1].
BipartiteDensityMatrix werner_swap(double p);

// (1 - p) I/4 + p |Phi+><Phi+|, p in [0, 1].
BipartiteDensityMatrix werner_isotropic(double p);

// Isotropic states are separable exactly for p <= 1/3.
inline constexpr double kIsotropicSeparableBound = 1.0 / 3.0;
inline bool werner_isotropic_separable(double p) { return p <= kIsotropicSeparableBound; }

// 1/2 (|+><+| (x) |0><0| + |-><-| (x) |1><1|).
BipartiteDensityMatrix example2_state();

enum class PauliAxis { x, y, z };

// Eigenbasis of a Pauli matrix, +1 eigenvector first: z -> {|0>, |1>},
// x -> {|+>, |->}, y -> {|+i>, |-i>}.
ProjectiveBasis pauli_basis(PauliAxis axis);
ComplexMatrix pauli_matrix(PauliAxis axis);

ProjectiveBasis computational_basis(int d);
ProjectiveBasis fourier_basis(int d);

// Haar unitary: QR of a Ginibre matrix with the triangular factor's diagonal
// made real positive.
ComplexMatrix random_unitary(int d, std::uint64_t seed);
ComplexMatrix random_unitary(int d, Rng& rng);

// Ginibre-symmetrized observable (G + G^dagger)/2.
HermitianOperator random_hermitian(int d, Rng& rng);

// Normalized complex Gaussian vector.
ComplexVector random_pure_vector(int d, Rng& rng);

// Draw from an ensemble; everything is determined by spec.seed.
BipartiteDensityMatrix random_density(const EnsembleSpec& spec);

}  // namespace skewq
