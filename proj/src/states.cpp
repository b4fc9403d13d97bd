#include "skewq/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "skewq/errors.hpp"

namespace skewq {

namespace {

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

ComplexMatrix normalized(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  return h / h.trace().real();
}

ComplexMatrix ginibre_density(int dim, int rank, Rng& rng) {
  ComplexMatrix g = ginibre(dim, rank, rng);
  return normalized(g * g.adjoint());
}

ComplexMatrix pure_density(int dim, Rng& rng) {
  ComplexVector v = random_pure_vector(dim, rng);
  return normalized(v * v.adjoint());
}

std::vector<double> dirichlet_uniform(int n, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& x : w) total += (x = rng.exponential());
  for (auto& x : w) x /= total;
  return w;
}

ComplexMatrix swap_operator(int d) {
  ComplexMatrix v = ComplexMatrix::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) v(k * d + l, l * d + k) = 1.0;
  return v;
}

}  // namespace

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::pure: return "pure";
    case EnsembleKind::full_rank: return "full_rank";
    case EnsembleKind::fixed_rank: return "fixed_rank";
    case EnsembleKind::product: return "product";
    case EnsembleKind::classical_quantum: return "classical_quantum";
    case EnsembleKind::separable_mixture: return "separable_mixture";
  }
  return "unknown";
}

EnsembleKind ensemble_kind_from_string(const std::string& name) {
  for (auto kind : {EnsembleKind::pure, EnsembleKind::full_rank, EnsembleKind::fixed_rank,
                    EnsembleKind::product, EnsembleKind::classical_quantum,
                    EnsembleKind::separable_mixture}) {
    if (to_string(kind) == name) return kind;
  }
  throw DomainError("unknown ensemble kind '" + name + "'");
}

void EnsembleSpec::validate() const {
  if (d_a < 1 || d_b < 1) throw DomainError("EnsembleSpec: dimensions must be positive");
  if (d_a * d_b > 64) throw DomainError("EnsembleSpec: total dimension above 64 is not supported");
  if (kind == EnsembleKind::fixed_rank && (rank < 1 || rank > d_a * d_b))
    throw DomainError("EnsembleSpec: fixed_rank needs 1 <= rank <= d_A*d_B");
}

BipartiteDensityMatrix werner_swap(double p) {
  if (!(p >= -1.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "werner_swap: p = " << p << " outside [-1, 1]";
    throw DomainError(os.str());
  }
  ComplexMatrix m = (2.0 - p) / 6.0 * ComplexMatrix::Identity(4, 4) +
                    (2.0 * p - 1.0) / 6.0 * swap_operator(2);
  return BipartiteDensityMatrix(std::move(m), 2, 2);
}

BipartiteDensityMatrix werner_isotropic(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "werner_isotropic: p = " << p << " outside [0, 1]";
    throw DomainError(os.str());
  }
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  ComplexMatrix m = (1.0 - p) / 4.0 * ComplexMatrix::Identity(4, 4) + p * bell * bell.adjoint();
  return BipartiteDensityMatrix(std::move(m), 2, 2);
}

BipartiteDensityMatrix example2_state() {
  const auto x = pauli_basis(PauliAxis::x);
  const auto z = pauli_basis(PauliAxis::z);
  ComplexMatrix m = 0.5 * (kron(x.projector(0).matrix(), z.projector(0).matrix()) +
                           kron(x.projector(1).matrix(), z.projector(1).matrix()));
  return BipartiteDensityMatrix(std::move(m), 2, 2);
}

ComplexMatrix pauli_matrix(PauliAxis axis) {
  ComplexMatrix s(2, 2);
  const Complex i(0.0, 1.0);
  switch (axis) {
    case PauliAxis::x: s << 0.0, 1.0, 1.0, 0.0; break;
    case PauliAxis::y: s << 0.0, -i, i, 0.0; break;
    case PauliAxis::z: s << 1.0, 0.0, 0.0, -1.0; break;
  }
  return s;
}

ProjectiveBasis pauli_basis(PauliAxis axis) {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  ComplexMatrix v(2, 2);
  switch (axis) {
    case PauliAxis::x: v << h, h, h, -h; break;
    case PauliAxis::y: v << h, h, h * i, -h * i; break;
    case PauliAxis::z: v << 1.0, 0.0, 0.0, 1.0; break;
  }
  return ProjectiveBasis(std::move(v));
}

ProjectiveBasis computational_basis(int d) { return ProjectiveBasis(ComplexMatrix::Identity(d, d)); }

ProjectiveBasis fourier_basis(int d) {
  ComplexMatrix v(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      v(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                           2.0 * std::numbers::pi * j * k / d);
  return ProjectiveBasis(std::move(v));
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(d, rng);
}

ComplexMatrix random_unitary(int d, Rng& rng) {
  ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix& r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    Complex diag = r(k, k);
    double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

HermitianOperator random_hermitian(int d, Rng& rng) {
  ComplexMatrix g = ginibre(d, d, rng);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

ComplexVector random_pure_vector(int d, Rng& rng) {
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

BipartiteDensityMatrix random_density(const EnsembleSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const int da = spec.d_a;
  const int db = spec.d_b;
  const int dim = da * db;
  ComplexMatrix m;
  switch (spec.kind) {
    case EnsembleKind::pure:
      m = pure_density(dim, rng);
      break;
    case EnsembleKind::full_rank:
      m = ginibre_density(dim, dim, rng);
      break;
    case EnsembleKind::fixed_rank:
      m = ginibre_density(dim, spec.rank, rng);
      break;
    case EnsembleKind::product: {
      ComplexMatrix a = ginibre_density(da, da, rng);
      ComplexMatrix b = ginibre_density(db, db, rng);
      m = normalized(kron(a, b));
      break;
    }
    case EnsembleKind::classical_quantum: {
      auto weights = dirichlet_uniform(da, rng);
      m = ComplexMatrix::Zero(dim, dim);
      for (int k = 0; k < da; ++k) {
        ComplexMatrix ket = ComplexMatrix::Zero(da, da);
        ket(k, k) = 1.0;
        m += weights[static_cast<std::size_t>(k)] * kron(ket, ginibre_density(db, db, rng));
      }
      m = normalized(m);
      break;
    }
    case EnsembleKind::separable_mixture: {
      auto weights = dirichlet_uniform(dim, rng);
      m = ComplexMatrix::Zero(dim, dim);
      for (int c = 0; c < dim; ++c) {
        ComplexMatrix a = pure_density(da, rng);
        ComplexMatrix b = pure_density(db, rng);
        m += weights[static_cast<std::size_t>(c)] * kron(a, b);
      }
      m = normalized(m);
      break;
    }
  }
  return BipartiteDensityMatrix(std::move(m), da, db);
}

}  // namespace skewq
