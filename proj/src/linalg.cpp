#include "skewq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <vector>

#include "skewq/errors.hpp"

namespace skewq {

namespace {

// Relative gap below which neighbouring eigenvalues share an eigenspace.
constexpr double kDegeneracyGap = 1e-12;

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw ShapeError(os.str());
  }
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!a.allFinite()) throw DomainError(std::string(what) + ": matrix has non-finite entries");
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": dimension mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
       << "x" << b.cols();
    throw ShapeError(os.str());
  }
}

void fix_phase(Eigen::Ref<ComplexVector> v) {
  double largest = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) largest = std::max(largest, std::abs(v(k)));
  if (largest == 0.0) return;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    double mag = std::abs(v(k));
    if (mag >= largest * (1.0 - 1e-9)) {
      v *= std::conj(v(k)) / mag;
      v(k) = Complex(v(k).real(), 0.0);
      return;
    }
  }
}

// Replace the columns of a degenerate block by Gram-Schmidt on P e_0, P e_1, ...
// where P is the spectral projector of the block.
void canonicalize_block(Eigen::Ref<ComplexMatrix> block) {
  const Eigen::Index n = block.rows();
  const Eigen::Index g = block.cols();
  const ComplexMatrix projector = block * block.adjoint();
  std::vector<ComplexVector> chosen;
  for (Eigen::Index e = 0; e < n && static_cast<Eigen::Index>(chosen.size()) < g; ++e) {
    ComplexVector w = projector.col(e);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& c : chosen) w -= c * c.dot(w);
    }
    double nrm = w.norm();
    if (nrm > 1e-6) chosen.push_back(w / nrm);
  }
  if (static_cast<Eigen::Index>(chosen.size()) != g) return;
  for (Eigen::Index c = 0; c < g; ++c) block.col(c) = chosen[static_cast<std::size_t>(c)];
}

}  // namespace

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

std::uint64_t matrix_hash(const ComplexMatrix& a) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](double x) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &x, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  };
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      mix(a(i, j).real());
      mix(a(i, j).imag());
    }
  return h;
}

HermitianOperator::HermitianOperator(ComplexMatrix mat, double herm_tol) : mat_(std::move(mat)) {
  require_square(mat_, "HermitianOperator");
  require_finite(mat_, "HermitianOperator");
  double asym = max_abs(mat_ - mat_.adjoint());
  if (asym > herm_tol) {
    std::ostringstream os;
    os << "HermitianOperator: max|A - A^dagger| = " << asym << " exceeds " << herm_tol;
    throw DomainError(os.str());
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix mat, const Tolerances& tol)
    : mat_(std::move(mat)), herm_tol_(tol.herm) {
  require_square(mat_, "DensityMatrix");
  if (!mat_.allFinite()) throw InvalidStateError("DensityMatrix: non-finite entries");
  double asym = max_abs(mat_ - mat_.adjoint());
  if (asym > tol.herm) {
    std::ostringstream os;
    os << "DensityMatrix: not Hermitian (max|A - A^dagger| = " << asym << ")";
    throw InvalidStateError(os.str());
  }
  Complex tr = mat_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr.real() << " differs from 1";
    throw InvalidStateError(os.str());
  }
  spectrum_ = herm_eig(mat_);
  clipped_ = spectrum_.eigenvalues;
  for (Eigen::Index k = 0; k < clipped_.size(); ++k) {
    double lam = clipped_(k);
    if (lam < -tol.psd) {
      std::ostringstream os;
      os << "DensityMatrix: negative eigenvalue " << lam;
      throw InvalidStateError(os.str());
    }
    if (lam <= tol.support) clipped_(k) = 0.0;
  }
}

BipartiteDensityMatrix::BipartiteDensityMatrix(DensityMatrix state, int d_a, int d_b)
    : state_(std::move(state)), d_a_(d_a), d_b_(d_b) {
  if (d_a <= 0 || d_b <= 0 || static_cast<Eigen::Index>(d_a) * d_b != state_.dim()) {
    std::ostringstream os;
    os << "BipartiteDensityMatrix: factor dimensions " << d_a << "x" << d_b
       << " do not match state dimension " << state_.dim();
    throw ShapeError(os.str());
  }
}

BipartiteDensityMatrix::BipartiteDensityMatrix(ComplexMatrix mat, int d_a, int d_b,
                                               const Tolerances& tol)
    : BipartiteDensityMatrix(DensityMatrix(std::move(mat), tol), d_a, d_b) {}

SpectralDecomposition herm_eig(const HermitianOperator& a) { return herm_eig(a.matrix()); }

SpectralDecomposition herm_eig(const ComplexMatrix& a) {
  require_square(a, "herm_eig");
  require_finite(a, "herm_eig");
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "herm_eig: eigen-solver did not converge (input hash " << std::hex << matrix_hash(a)
       << ")";
    throw SolverError(os.str(), matrix_hash(a));
  }
  SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  const Eigen::Index n = out.eigenvalues.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && out.eigenvalues(end) - out.eigenvalues(end - 1) <=
                          kDegeneracyGap * std::max(1.0, std::abs(out.eigenvalues(end)))) {
      ++end;
    }
    if (end - start > 1) canonicalize_block(out.eigenvectors.middleCols(start, end - start));
    start = end;
  }
  for (Eigen::Index c = 0; c < n; ++c) fix_phase(out.eigenvectors.col(c));
  return out;
}

RealVector power_of_clipped(const RealVector& clipped, double alpha) {
  RealVector out(clipped.size());
  for (Eigen::Index k = 0; k < clipped.size(); ++k)
    out(k) = clipped(k) > 0.0 ? std::pow(clipped(k), alpha) : 0.0;
  return out;
}

HermitianOperator fractional_power(const DensityMatrix& rho, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("fractional_power: alpha must lie in [0, 1]");
  const auto& u = rho.spectrum().eigenvectors;
  RealVector p = power_of_clipped(rho.clipped_eigenvalues(), alpha);
  ComplexMatrix m = u * p.cast<Complex>().asDiagonal() * u.adjoint();
  return HermitianOperator(0.5 * (m + m.adjoint()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int d_a, int d_b, Subsystem keep) {
  if (d_a <= 0 || d_b <= 0 || m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(d_a) * d_b) {
    std::ostringstream os;
    os << "partial_trace: " << m.rows() << "x" << m.cols() << " matrix is not " << d_a << "*"
       << d_b << " square";
    throw ShapeError(os.str());
  }
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(d_a, d_a);
    for (int i = 0; i < d_a; ++i)
      for (int k = 0; k < d_a; ++k)
        for (int j = 0; j < d_b; ++j) out(i, k) += m(i * d_b + j, k * d_b + j);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_b, d_b);
  for (int j = 0; j < d_b; ++j)
    for (int l = 0; l < d_b; ++l)
      for (int i = 0; i < d_a; ++i) out(j, l) += m(i * d_b + j, i * d_b + l);
  return out;
}

DensityMatrix partial_trace(const BipartiteDensityMatrix& rho, Subsystem keep) {
  ComplexMatrix r = partial_trace(rho.matrix(), rho.d_a(), rho.d_b(), keep);
  // Summing Hermitian blocks keeps Hermiticity up to round-off; remove it.
  return DensityMatrix(0.5 * (r + r.adjoint()));
}

ComplexMatrix commutator(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.matrix(), b.matrix(), "commutator");
  return a.matrix() * b.matrix() - b.matrix() * a.matrix();
}

HermitianOperator anticommutator(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.matrix(), b.matrix(), "anticommutator");
  ComplexMatrix m = a.matrix() * b.matrix() + b.matrix() * a.matrix();
  return HermitianOperator(0.5 * (m + m.adjoint()));
}

}  // namespace skewq
