#include "skewq/skew.hpp"

#include <cmath>
#include <sstream>

#include "skewq/errors.hpp"

namespace skewq {

namespace {

constexpr double kProjectorTol = 1e-9;

void require_dims(const DensityMatrix& rho, const HermitianOperator& h, const char* what) {
  if (rho.dim() != h.dim()) {
    std::ostringstream os;
    os << what << ": state has dimension " << rho.dim() << ", observable " << h.dim();
    throw ShapeError(os.str());
  }
}

void require_rank_one_projector(const HermitianOperator& p, const char* what) {
  const ComplexMatrix& m = p.matrix();
  double idem = max_abs(m * m - m);
  double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (idem > kProjectorTol || tr_err > kProjectorTol) {
    std::ostringstream os;
    os << what << ": operator is not a rank-1 projector (|P^2 - P| = " << idem
       << ", |Tr P - 1| = " << tr_err << ")";
    throw DomainError(os.str());
  }
}

ComplexMatrix in_eigenbasis(const DensityMatrix& rho, const HermitianOperator& h) {
  const auto& u = rho.spectrum().eigenvectors;
  return u.adjoint() * h.matrix() * u;
}

}  // namespace

void require_alpha(double alpha, const char* what) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << what << ": alpha = " << alpha << " is outside [0, 1]";
    throw DomainError(os.str());
  }
}

double clip_nonnegative(double value, const char* what) {
  if (value >= 0.0) return value;
  if (value > -kClipTolerance) return 0.0;
  std::ostringstream os;
  os << what << ": value " << value << " is negative beyond round-off";
  throw NumericalConsistencyError(os.str());
}

ProjectiveBasis::ProjectiveBasis(ComplexMatrix vectors, double tol) : vectors_(std::move(vectors)) {
  if (vectors_.rows() != vectors_.cols() || vectors_.rows() == 0)
    throw ShapeError("ProjectiveBasis: need d vectors of dimension d");
  if (!vectors_.allFinite()) throw DomainError("ProjectiveBasis: non-finite entries");
  const Eigen::Index d = vectors_.rows();
  double gram = max_abs(vectors_.adjoint() * vectors_ - ComplexMatrix::Identity(d, d));
  double completeness = max_abs(vectors_ * vectors_.adjoint() - ComplexMatrix::Identity(d, d));
  if (gram > tol || completeness > tol) {
    std::ostringstream os;
    os << "ProjectiveBasis: vectors are not orthonormal and complete (Gram error " << gram
       << ", completeness error " << completeness << ")";
    throw DomainError(os.str());
  }
}

HermitianOperator ProjectiveBasis::projector(Eigen::Index k) const {
  ComplexVector v = vectors_.col(k);
  ComplexMatrix p = v * v.adjoint();
  return HermitianOperator(0.5 * (p + p.adjoint()));
}

Eigen::MatrixXd skew_kernel(const RealVector& clipped_eigenvalues, double alpha) {
  RealVector a = power_of_clipped(clipped_eigenvalues, alpha);
  RealVector b = power_of_clipped(clipped_eigenvalues, 1.0 - alpha);
  const Eigen::Index n = clipped_eigenvalues.size();
  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) kernel(i, j) = (a(i) - a(j)) * (b(i) - b(j));
  return kernel;
}

double skew_from_kernel(const Eigen::MatrixXd& kernel, const ComplexMatrix& h_eigenbasis) {
  double sum = 0.0;
  const Eigen::Index n = kernel.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) sum += kernel(i, j) * std::norm(h_eigenbasis(i, j));
  return sum;
}

double skew_information_I(const DensityMatrix& rho, const HermitianOperator& h, double alpha) {
  require_alpha(alpha, "skew_information_I");
  require_dims(rho, h, "skew_information_I");
  double value = skew_from_kernel(skew_kernel(rho.clipped_eigenvalues(), alpha), in_eigenbasis(rho, h));
  return clip_nonnegative(value, "skew_information_I");
}

double skew_information_J(const DensityMatrix& rho, const HermitianOperator& h, double alpha) {
  require_alpha(alpha, "skew_information_J");
  require_dims(rho, h, "skew_information_J");
  const RealVector& lam = rho.clipped_eigenvalues();
  ComplexMatrix hp = in_eigenbasis(rho, h);
  double mean = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) mean += lam(i) * hp(i, i).real();
  hp.diagonal().array() -= Complex(mean, 0.0);

  RealVector a = power_of_clipped(lam, alpha);
  RealVector b = power_of_clipped(lam, 1.0 - alpha);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    sum += 2.0 * a(i) * b(i) * std::norm(hp(i, i));
    for (Eigen::Index j = i + 1; j < lam.size(); ++j)
      sum += (a(i) + a(j)) * (b(i) + b(j)) * std::norm(hp(i, j));
  }
  return clip_nonnegative(sum, "skew_information_J");
}

SkewPair uncertainty_U(const DensityMatrix& rho, const HermitianOperator& h, double alpha) {
  SkewPair out;
  out.alpha = alpha;
  out.i_alpha = skew_information_I(rho, h, alpha);
  out.j_alpha = skew_information_J(rho, h, alpha);
  if (out.j_alpha < out.i_alpha - kClipTolerance) {
    std::ostringstream os;
    os << "uncertainty_U: J = " << out.j_alpha << " below I = " << out.i_alpha;
    throw NumericalConsistencyError(os.str());
  }
  out.u_alpha = std::sqrt(out.i_alpha * out.j_alpha);
  return out;
}

double variance(const DensityMatrix& rho, const HermitianOperator& h) {
  require_dims(rho, h, "variance");
  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix& m = h.matrix();
  double mean = (r * m).trace().real();
  return (r * m * m).trace().real() - mean * mean;
}

std::vector<SkewPair> measurement_terms(const DensityMatrix& rho, const ProjectiveBasis& basis,
                                        double alpha) {
  if (basis.dim() != rho.dim()) throw ShapeError("measurement_terms: basis and state dimensions differ");
  std::vector<SkewPair> out;
  out.reserve(static_cast<std::size_t>(basis.dim()));
  for (Eigen::Index k = 0; k < basis.dim(); ++k)
    out.push_back(uncertainty_U(rho, basis.projector(k), alpha));
  return out;
}

std::vector<SkewPair> local_measurement_terms(const BipartiteDensityMatrix& rho,
                                              const ProjectiveBasis& basis, double alpha) {
  if (basis.dim() != rho.d_a())
    throw ShapeError("local_measurement_terms: basis dimension differs from d_A");
  const ComplexMatrix id_b = ComplexMatrix::Identity(rho.d_b(), rho.d_b());
  std::vector<SkewPair> out;
  out.reserve(static_cast<std::size_t>(basis.dim()));
  for (Eigen::Index k = 0; k < basis.dim(); ++k) {
    HermitianOperator local(kron(basis.projector(k).matrix(), id_b));
    out.push_back(uncertainty_U(rho.state(), local, alpha));
  }
  return out;
}

double measurement_uncertainty_UN(const DensityMatrix& rho, const ProjectiveBasis& basis,
                                  double alpha) {
  double sum = 0.0;
  for (const auto& t : measurement_terms(rho, basis, alpha)) sum += t.u_alpha;
  return sum;
}

double measurement_uncertainty_UN(const BipartiteDensityMatrix& rho,
                                  const ProjectiveBasis& basis, double alpha) {
  double sum = 0.0;
  for (const auto& t : local_measurement_terms(rho, basis, alpha)) sum += t.u_alpha;
  return sum;
}

double compat_L(const DensityMatrix& rho_a, const HermitianOperator& phi,
                const HermitianOperator& psi, double alpha, double denom_tol) {
  require_alpha(alpha, "compat_L");
  require_dims(rho_a, phi, "compat_L");
  require_dims(rho_a, psi, "compat_L");
  require_rank_one_projector(phi, "compat_L");
  require_rank_one_projector(psi, "compat_L");
  double denom = skew_information_J(rho_a, phi, alpha) * skew_information_J(rho_a, psi, alpha);
  if (denom < denom_tol) return 0.0;
  Complex c = (rho_a.matrix() * commutator(phi, psi)).trace();
  return alpha * (1.0 - alpha) * std::norm(c) / std::sqrt(denom);
}

}  // namespace skewq
