#pragma once

// Wigner-Yanase-Dyson skew information I_alpha, its anticommutator dual
// J_alpha, the uncertainty U_alpha = sqrt(I J), the measurement uncertainty
// UN_alpha of a rank-1 projective measurement and the compatibility term L.

#include <vector>

#include "skewq/linalg.hpp"

namespace skewq {

// Values in (-kClipTolerance, 0) are rounded to 0; anything more negative is
// reported as a NumericalConsistencyError.
inline constexpr double kClipTolerance = 1e-9;

// An ordered orthonormal basis; the projectors |v_k><v_k| are built on demand.
class ProjectiveBasis {
 public:
  // Columns of `vectors` are the basis vectors.
  explicit ProjectiveBasis(ComplexMatrix vectors, double tol = 1e-10);

  Eigen::Index dim() const { return vectors_.rows(); }
  const ComplexMatrix& vectors() const { return vectors_; }
  ComplexVector vector(Eigen::Index k) const { return vectors_.col(k); }
  HermitianOperator projector(Eigen::Index k) const;

 private:
  ComplexMatrix vectors_;
};

struct SkewPair {
  double i_alpha = 0.0;
  double j_alpha = 0.0;
  double u_alpha = 0.0;
  double alpha = 0.0;
};

// I_alpha(rho, H) = Tr(rho H^2) - Tr(rho^alpha H rho^(1-alpha) H).
//
// Evaluated in the eigenbasis of rho as
//   sum_{i<j} (a_i - a_j)(b_i - b_j) |H_ij|^2,   a = lambda^alpha, b = lambda^(1-alpha),
// i.e. -1/2 Tr([rho^alpha, H][rho^(1-alpha), H]). Every term is nonnegative, so
// no cancellation occurs and commuting pairs give exactly 0.
double skew_information_I(const DensityMatrix& rho, const HermitianOperator& h, double alpha);

// J_alpha(rho, H) = Tr(rho H0^2) + Tr(rho^alpha H0 rho^(1-alpha) H0), H0 = H - Tr(rho H).
double skew_information_J(const DensityMatrix& rho, const HermitianOperator& h, double alpha);

SkewPair uncertainty_U(const DensityMatrix& rho, const HermitianOperator& h, double alpha);

// V(rho, H) = Tr(rho H^2) - Tr(rho H)^2.
double variance(const DensityMatrix& rho, const HermitianOperator& h);

// U_alpha(rho, phi_k) for every projector of the basis.
std::vector<SkewPair> measurement_terms(const DensityMatrix& rho, const ProjectiveBasis& basis,
                                        double alpha);

// Same for the local measurement phi_k (x) I_B on a bipartite state.
std::vector<SkewPair> local_measurement_terms(const BipartiteDensityMatrix& rho,
                                              const ProjectiveBasis& basis, double alpha);

double measurement_uncertainty_UN(const DensityMatrix& rho, const ProjectiveBasis& basis,
                                  double alpha);
double measurement_uncertainty_UN(const BipartiteDensityMatrix& rho,
                                  const ProjectiveBasis& basis, double alpha);

// L = alpha(1-alpha) |Tr rho_A [phi, psi]|^2 / sqrt(J(rho_A, phi) J(rho_A, psi)).
// Returns 0 when the J product falls below denom_tol.
double compat_L(const DensityMatrix& rho_a, const HermitianOperator& phi,
                const HermitianOperator& psi, double alpha, double denom_tol = 1e-12);

// Pairwise weights (a_i - a_j)(b_i - b_j) used by the I_alpha sum above.
Eigen::MatrixXd skew_kernel(const RealVector& clipped_eigenvalues, double alpha);

// sum_{i<j} kernel_ij |h_ij|^2 for h expressed in the eigenbasis.
double skew_from_kernel(const Eigen::MatrixXd& kernel, const ComplexMatrix& h_eigenbasis);

// Applies the negative-value policy above to a computed I or J.
double clip_nonnegative(double value, const char* what);

void require_alpha(double alpha, const char* what);

}  // namespace skewq
