#pragma once

// Dense complex linear algebra shared by every other module: validated
// operator/state types, Hermitian eigendecomposition, fractional powers,
// tensor products and partial traces.
//
// Index convention for composite systems: |i>_A |j>_B  <->  i * d_B + j.

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace skewq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Numerical tolerances used when validating operators and states.
struct Tolerances {
  double herm = 1e-10;   // max |A - A^dagger|
  double trace = 1e-10;  // |Tr rho - 1|
  double psd = 1e-10;    // eigenvalues >= -psd are accepted (and clipped)
  // Eigenvalues with |lambda| <= support are treated as exactly zero before
  // fractional powers are taken. lambda^alpha is not Lipschitz at 0, so
  // round-off sized eigenvalues of rank-deficient states must not survive.
  double support = 1e-13;
};

struct SpectralDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors;  // columns, unitary

  ComplexMatrix reconstruct() const;
};

// Max-norm of the entries, |A|_max.
double max_abs(const ComplexMatrix& a);

// FNV-1a over the raw entries; used to identify inputs in diagnostics.
std::uint64_t matrix_hash(const ComplexMatrix& a);

class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix mat, double herm_tol = Tolerances{}.herm);

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
};

// Hermitian, positive semidefinite, unit trace. The spectrum is computed once
// on construction and cached; instances are immutable.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat, const Tolerances& tol = {});

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  const SpectralDecomposition& spectrum() const { return spectrum_; }

  // Eigenvalues with values in [-psd, support] set to exactly zero.
  const RealVector& clipped_eigenvalues() const { return clipped_; }

  HermitianOperator as_operator() const { return HermitianOperator(mat_, herm_tol_); }

 private:
  ComplexMatrix mat_;
  SpectralDecomposition spectrum_;
  RealVector clipped_;
  double herm_tol_;
};

enum class Subsystem { A, B };

class BipartiteDensityMatrix {
 public:
  BipartiteDensityMatrix(DensityMatrix state, int d_a, int d_b);
  BipartiteDensityMatrix(ComplexMatrix mat, int d_a, int d_b, const Tolerances& tol = {});

  const DensityMatrix& state() const { return state_; }
  const ComplexMatrix& matrix() const { return state_.matrix(); }
  int d_a() const { return d_a_; }
  int d_b() const { return d_b_; }

 private:
  DensityMatrix state_;
  int d_a_;
  int d_b_;
};

// Eigen-decomposition with deterministic eigenvectors: degenerate eigenspaces
// are re-orthonormalized in index order and each vector's largest-magnitude
// component is made real positive.
SpectralDecomposition herm_eig(const HermitianOperator& a);
SpectralDecomposition herm_eig(const ComplexMatrix& a);

// rho^alpha with 0^alpha := 0 for every alpha in [0, 1].
HermitianOperator fractional_power(const DensityMatrix& rho, double alpha);

// lambda^alpha elementwise, 0 -> 0.
RealVector power_of_clipped(const RealVector& clipped, double alpha);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

DensityMatrix partial_trace(const BipartiteDensityMatrix& rho, Subsystem keep);

// Raw partial trace of an arbitrary d_a*d_b square matrix.
ComplexMatrix partial_trace(const ComplexMatrix& m, int d_a, int d_b, Subsystem keep);

ComplexMatrix commutator(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator anticommutator(const HermitianOperator& a, const HermitianOperator& b);

}  // namespace skewq
