#include "skewq/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "skewq/errors.hpp"
#include "skewq/nelder_mead.hpp"
#include "skewq/rng.hpp"

namespace skewq {

void OptimizerConfig::validate() const {
  if (restarts < 1) throw DomainError("OptimizerConfig: restarts must be >= 1");
  if (max_iters < 1) throw DomainError("OptimizerConfig: max_iters must be >= 1");
  if (!(tol > 0.0)) throw DomainError("OptimizerConfig: tol must be > 0");
  if (!(step_tol > 0.0)) throw DomainError("OptimizerConfig: step_tol must be > 0");
}

DeficitEvaluator::DeficitEvaluator(const BipartiteDensityMatrix& rho, double alpha)
    : d_a_(rho.d_a()), d_b_(rho.d_b()) {
  require_alpha(alpha, "DeficitEvaluator");
  global_vectors_ = rho.state().spectrum().eigenvectors;
  global_kernel_ = skew_kernel(rho.state().clipped_eigenvalues(), alpha);
  DensityMatrix rho_a = partial_trace(rho, Subsystem::A);
  local_vectors_ = rho_a.spectrum().eigenvectors;
  local_kernel_ = skew_kernel(rho_a.clipped_eigenvalues(), alpha);
}

double DeficitEvaluator::term(const ComplexVector& v) const {
  const Eigen::Index dim = global_vectors_.cols();
  // m(b, j) = (<v| (x) <b|) |w_j>
  ComplexMatrix m = ComplexMatrix::Zero(d_b_, dim);
  for (int a = 0; a < d_a_; ++a) {
    Complex c = std::conj(v(a));
    if (c == Complex(0.0, 0.0)) continue;
    m += c * global_vectors_.middleRows(static_cast<Eigen::Index>(a) * d_b_, d_b_);
  }
  double global = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      double k = global_kernel_(i, j);
      if (k == 0.0) continue;
      global += k * std::norm(m.col(i).dot(m.col(j)));
    }

  ComplexVector u = local_vectors_.adjoint() * v;
  double local = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    for (Eigen::Index j = i + 1; j < u.size(); ++j)
      local += local_kernel_(i, j) * std::norm(u(i)) * std::norm(u(j));
  return global - local;
}

std::vector<double> DeficitEvaluator::terms(const ComplexMatrix& vectors) const {
  if (vectors.rows() != d_a_) throw ShapeError("DeficitEvaluator: basis dimension differs from d_A");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(vectors.cols()));
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) out.push_back(term(vectors.col(k)));
  return out;
}

double DeficitEvaluator::total(const ComplexMatrix& vectors) const {
  double sum = 0.0;
  for (double t : terms(vectors)) sum += t;
  return sum;
}

ProjectiveBasis basis_from_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) throw ShapeError("basis_from_unitary: U must be square");
  double err = max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
  if (err > tol) {
    std::ostringstream os;
    os << "basis_from_unitary: |U^dagger U - I| = " << err << " exceeds " << tol;
    throw DomainError(os.str());
  }
  return ProjectiveBasis(u, tol);
}

ComplexMatrix unitary_from_parameters(std::span<const double> params, int d) {
  if (static_cast<int>(params.size()) != d * d)
    throw ShapeError("unitary_from_parameters: need d^2 parameters");
  ComplexMatrix g = ComplexMatrix::Zero(d, d);
  std::size_t p = 0;
  for (int i = 0; i < d; ++i) g(i, i) = params[p++];
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      g(i, j) = Complex(params[p], params[p + 1]);
      g(j, i) = std::conj(g(i, j));
      p += 2;
    }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g);
  ComplexVector phases(d);
  for (int k = 0; k < d; ++k) phases(k) = std::polar(1.0, es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double correlation_deficit(const BipartiteDensityMatrix& rho, const ProjectiveBasis& basis,
                           double alpha) {
  if (basis.dim() != rho.d_a()) throw ShapeError("correlation_deficit: basis dimension differs from d_A");
  DeficitEvaluator eval(rho, alpha);
  return clip_nonnegative(eval.total(basis.vectors()), "correlation_deficit");
}

CorrelationResult quantum_correlation_D(const BipartiteDensityMatrix& rho, double alpha,
                                        const OptimizerConfig& cfg) {
  require_alpha(alpha, "quantum_correlation_D");
  cfg.validate();
  const int d = rho.d_a();
  const DeficitEvaluator eval(rho, alpha);
  Objective objective = [&eval, d](std::span<const double> x) {
    return eval.total(unitary_from_parameters(x, d));
  };

  NelderMeadOptions opts;
  opts.f_tol = cfg.step_tol;
  opts.max_iters = cfg.max_iters;

  std::vector<RestartRecord> trace;
  std::vector<double> best_x;
  double best = std::numeric_limits<double>::infinity();
  bool any_converged = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> x0(static_cast<std::size_t>(d * d), 0.0);
    if (r > 0) {
      Rng rng(child_seed(cfg.seed, static_cast<std::uint64_t>(r)));
      for (auto& x : x0) x = std::numbers::pi * rng.normal();
    }
    NelderMeadResult res = nelder_mead(objective, std::move(x0), opts);
    trace.push_back({r, res.value, res.converged});
    any_converged = any_converged || res.converged;
    if (std::isfinite(res.value) && res.value < best) {
      best = res.value;
      best_x = res.x;
    }
  }
  if (!any_converged || best_x.empty()) {
    std::ostringstream os;
    os << "quantum_correlation_D: no restart converged; best value " << best;
    throw OptimizerError(os.str(), best);
  }

  ComplexMatrix u = unitary_from_parameters(best_x, d);
  std::vector<double> per_k = eval.terms(u);
  double value = 0.0;
  for (double t : per_k) value += t;
  int agreeing = 0;
  for (const auto& rec : trace)
    if (rec.value <= best + cfg.tol) ++agreeing;
  return CorrelationResult{clip_nonnegative(value, "quantum_correlation_D"),
                           basis_from_unitary(u), std::move(per_k), std::move(trace), agreeing};
}

ComplexMatrix qubit_basis_vectors(double theta, double phi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex e = std::polar(1.0, phi);
  ComplexMatrix v(2, 2);
  v << c, s, e * s, -e * c;
  return v;
}

QubitGridResult brute_force_D_qubit_scan(const BipartiteDensityMatrix& rho, double alpha,
                                         int n_theta, int n_phi) {
  if (rho.d_a() != 2) throw DomainError("brute_force_D_qubit: requires d_A = 2");
  if (n_theta < 2 || n_phi < 1) throw DomainError("brute_force_D_qubit: grid too small");
  const DeficitEvaluator eval(rho, alpha);
  const double dtheta = (std::numbers::pi / 2.0) / (n_theta - 1);
  const double dphi = 2.0 * std::numbers::pi / n_phi;

  QubitGridResult out;
  out.grid_min = std::numeric_limits<double>::infinity();
  out.grid_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_theta; ++i) {
    const double theta = i * dtheta;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = j * dphi;
      double value = eval.total(qubit_basis_vectors(theta, phi));
      out.grid_max = std::max(out.grid_max, value);
      if (value < out.grid_min) {
        out.grid_min = value;
        out.theta = theta;
        out.phi = phi;
      }
    }
  }

  // Compass search around the grid minimum.
  double best = out.grid_min;
  double t = out.theta;
  double p = out.phi;
  double st = dtheta;
  double sp = dphi;
  while (st > 1e-12 || sp > 1e-12) {
    bool moved = false;
    const double candidates[4][2] = {{t + st, p}, {t - st, p}, {t, p + sp}, {t, p - sp}};
    for (const auto& c : candidates) {
      double value = eval.total(qubit_basis_vectors(c[0], c[1]));
      if (value < best) {
        best = value;
        t = c[0];
        p = c[1];
        moved = true;
        break;
      }
    }
    if (!moved) {
      st *= 0.5;
      sp *= 0.5;
    }
  }
  out.theta = t;
  out.phi = p;
  out.value = clip_nonnegative(best, "brute_force_D_qubit");
  return out;
}

double brute_force_D_qubit(const BipartiteDensityMatrix& rho, double alpha, int n_theta, int n_phi) {
  return brute_force_D_qubit_scan(rho, alpha, n_theta, n_phi).value;
}

}  // namespace skewq
