#pragma once

// Quantum correlation between a measured system A and a memory B: the
// smallest total skew-information deficit
//   sum_k [ I_alpha(rho_AB, phi_k (x) I_B) - I_alpha(rho_A, phi_k) ]
// over orthonormal bases {phi_k} of A.

#include <cstdint>
#include <span>
#include <vector>

#include "skewq/linalg.hpp"
#include "skewq/skew.hpp"

namespace skewq {

struct OptimizerConfig {
  int restarts = 20;
  // Restarts ending within tol of the best value count as agreeing with it.
  double tol = 1e-6;
  int max_iters = 5000;
  std::uint64_t seed = 42;
  // Simplex convergence threshold on the deficit value.
  double step_tol = 1e-10;

  void validate() const;
};

struct RestartRecord {
  int restart = 0;
  double value = 0.0;
  bool converged = false;
};

struct CorrelationResult {
  double value = 0.0;
  ProjectiveBasis argmin_basis;
  std::vector<double> deficit_per_k;
  std::vector<RestartRecord> optimizer_trace;
  int restarts_at_best = 0;
};

// Precomputes the spectra of rho_AB and rho_A so the deficit of a basis can
// be evaluated without rebuilding phi_k (x) I_B.
class DeficitEvaluator {
 public:
  DeficitEvaluator(const BipartiteDensityMatrix& rho, double alpha);

  int d_a() const { return d_a_; }

  // I(rho_AB, |v><v| (x) I) - I(rho_A, |v><v|) for a unit vector v of A.
  double term(const ComplexVector& v) const;

  // Per-vector terms for the columns of `vectors` (not clipped).
  std::vector<double> terms(const ComplexMatrix& vectors) const;
  double total(const ComplexMatrix& vectors) const;

 private:
  int d_a_;
  int d_b_;
  ComplexMatrix global_vectors_;
  Eigen::MatrixXd global_kernel_;
  ComplexMatrix local_vectors_;
  Eigen::MatrixXd local_kernel_;
};

ProjectiveBasis basis_from_unitary(const ComplexMatrix& u, double tol = 1e-9);

// exp(iG) for the Hermitian G whose d^2 real parameters are: the diagonal,
// then (re, im) of each upper-triangular entry in row-major order.
ComplexMatrix unitary_from_parameters(std::span<const double> params, int d);

double correlation_deficit(const BipartiteDensityMatrix& rho, const ProjectiveBasis& basis,
                           double alpha);

// Multi-start Nelder-Mead over U(d_A). The value is an upper bound on the
// true minimum; for d_A = 2 use brute_force_D_qubit when a certified value is
// needed. Throws OptimizerError if no restart converges.
CorrelationResult quantum_correlation_D(const BipartiteDensityMatrix& rho, double alpha,
                                        const OptimizerConfig& cfg = {});

struct QubitGridResult {
  double value = 0.0;  // refined minimum, clipped at 0
  double theta = 0.0;
  double phi = 0.0;
  double grid_min = 0.0;
  double grid_max = 0.0;
};

inline constexpr int kDefaultGridPoints = 181;

// Basis {cos t|0> + e^{ip} sin t|1>, sin t|0> - e^{ip} cos t|1>}.
ComplexMatrix qubit_basis_vectors(double theta, double phi);

// Exhaustive scan over theta in [0, pi/2] (n_theta points, endpoints included)
// and phi in [0, 2 pi) (n_phi points), then a compass-search refinement from
// the best grid cell. Requires d_A = 2.
QubitGridResult brute_force_D_qubit_scan(const BipartiteDensityMatrix& rho, double alpha,
                                         int n_theta = kDefaultGridPoints,
                                         int n_phi = kDefaultGridPoints);

double brute_force_D_qubit(const BipartiteDensityMatrix& rho, double alpha,
                           int n_theta = kDefaultGridPoints, int n_phi = kDefaultGridPoints);

}  // namespace skewq
