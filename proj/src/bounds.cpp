#include "skewq/bounds.hpp"

#include <cmath>
#include <sstream>

#include "skewq/errors.hpp"

namespace skewq {

namespace {

BoundReport finish(BoundReport report, double tol) {
  report.slack = report.lhs - report.rhs;
  report.tolerance = tol;
  report.holds = report.slack >= -tol;
  return report;
}

// Quantities shared by the product and sum forms.
struct LocalMeasurementData {
  std::vector<double> u_phi, u_psi, l;
  double un_phi = 0.0, un_psi = 0.0, sum_l = 0.0, sum_l_sq = 0.0;
  double sum_i_ab_phi = 0.0, sum_i_ab_psi = 0.0;
  double sum_i_a_phi = 0.0, sum_i_a_psi = 0.0, sum_i_a_products = 0.0;
};

LocalMeasurementData collect(const BipartiteDensityMatrix& rho, const ProjectiveBasis& phi,
                             const ProjectiveBasis& psi, double alpha, double d_tilde) {
  require_alpha(alpha, "bound check");
  if (phi.dim() != rho.d_a() || psi.dim() != rho.d_a())
    throw ShapeError("bound check: measurement bases must act on subsystem A");
  if (!std::isfinite(d_tilde) || d_tilde < -kClipTolerance) {
    std::ostringstream os;
    os << "bound check: D_tilde = " << d_tilde << " must be a finite nonnegative value";
    throw DomainError(os.str());
  }

  LocalMeasurementData out;
  const DensityMatrix rho_a = partial_trace(rho, Subsystem::A);
  const auto t_phi = local_measurement_terms(rho, phi, alpha);
  const auto t_psi = local_measurement_terms(rho, psi, alpha);
  for (Eigen::Index k = 0; k < phi.dim(); ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const HermitianOperator p = phi.projector(k);
    const HermitianOperator q = psi.projector(k);
    out.u_phi.push_back(t_phi[uk].u_alpha);
    out.u_psi.push_back(t_psi[uk].u_alpha);
    out.un_phi += t_phi[uk].u_alpha;
    out.un_psi += t_psi[uk].u_alpha;
    out.sum_i_ab_phi += t_phi[uk].i_alpha;
    out.sum_i_ab_psi += t_psi[uk].i_alpha;
    double ia_phi = skew_information_I(rho_a, p, alpha);
    double ia_psi = skew_information_I(rho_a, q, alpha);
    out.sum_i_a_phi += ia_phi;
    out.sum_i_a_psi += ia_psi;
    out.sum_i_a_products += ia_phi * ia_psi;
    double l = compat_L(rho_a, p, q, alpha);
    out.l.push_back(l);
    out.sum_l += l;
    out.sum_l_sq += l * l;
  }
  return out;
}

BoundReport base_report(const char* name, const LocalMeasurementData& data, double d_tilde) {
  BoundReport r;
  r.name = name;
  r.per_k_L = data.l;
  r.per_k_UN_phi = data.u_phi;
  r.per_k_UN_psi = data.u_psi;
  r.terms = {{"UN_phi", data.un_phi},
             {"UN_psi", data.un_psi},
             {"sum_L", data.sum_l},
             {"sum_L_sq", data.sum_l_sq},
             {"D_tilde", d_tilde},
             {"sum_I_AB_phi", data.sum_i_ab_phi},
             {"sum_I_AB_psi", data.sum_i_ab_psi},
             {"sum_I_A_phi", data.sum_i_a_phi},
             {"sum_I_A_psi", data.sum_i_a_psi},
             {"sum_I_A_products", data.sum_i_a_products}};
  return r;
}

// x^a with 0^a := 0, matching the fractional-power convention for states.
double pw(double x, double a) { return x > 0.0 ? std::pow(x, a) : 0.0; }

void require_example(int example_id, double p, double alpha) {
  require_alpha(alpha, "example_closed_forms");
  std::ostringstream os;
  if (example_id == 1) {
    if (p >= -1.0 && p <= 1.0) return;
    os << "example 1: p = " << p << " outside [-1, 1]";
  } else if (example_id == 3) {
    if (p >= 0.0 && p <= 1.0) return;
    os << "example 3: p = " << p << " outside [0, 1]";
  } else {
    os << "closed forms exist for examples 1 and 3 only, got " << example_id;
  }
  throw DomainError(os.str());
}

// Two eigenvalue weights (x, y) and the denominators of the displayed forms.
struct WernerParams {
  double x, y, scale;
  double a_const, b_const;  // (2-p)/12, (4+p)/12 or (1+p)/8, (3-p)/8
};

WernerParams werner_params(int example_id, double p) {
  if (example_id == 1) return {3.0 - 3.0 * p, 1.0 + p, 24.0, (2.0 - p) / 12.0, (4.0 + p) / 12.0};
  return {1.0 - p, 1.0 + 3.0 * p, 16.0, (1.0 + p) / 8.0, (3.0 - p) / 8.0};
}

SidePair sides_from(double a, double b, BoundSide side) {
  if (side == BoundSide::product) return {4.0 * a * b, 4.0 * a * a};
  return {4.0 * std::sqrt(a) * std::sqrt(b), 4.0 * a};
}

}  // namespace

BoundReport heisenberg_type_check(const DensityMatrix& rho, const HermitianOperator& r,
                                  const HermitianOperator& s, double alpha, double tol) {
  const SkewPair ur = uncertainty_U(rho, r, alpha);
  const SkewPair us = uncertainty_U(rho, s, alpha);
  const double comm = std::norm((rho.matrix() * commutator(r, s)).trace());
  BoundReport report;
  report.name = "heisenberg";
  report.lhs = ur.u_alpha * us.u_alpha;
  report.rhs = alpha * (1.0 - alpha) * comm;
  report.terms = {{"U_R", ur.u_alpha}, {"U_S", us.u_alpha}, {"I_R", ur.i_alpha},
                  {"J_R", ur.j_alpha}, {"I_S", us.i_alpha}, {"J_S", us.j_alpha},
                  {"abs_tr_rho_comm_sq", comm}};
  return finish(std::move(report), tol);
}

BoundReport product_bound_check(const BipartiteDensityMatrix& rho, const ProjectiveBasis& phi,
                                const ProjectiveBasis& psi, double alpha, double d_tilde,
                                double tol) {
  const auto data = collect(rho, phi, psi, alpha, d_tilde);
  BoundReport report = base_report("product", data, d_tilde);
  report.lhs = data.un_phi * data.un_psi;
  report.rhs = data.sum_l_sq + d_tilde * d_tilde;
  return finish(std::move(report), tol);
}

BoundReport sum_bound_check(const BipartiteDensityMatrix& rho, const ProjectiveBasis& phi,
                            const ProjectiveBasis& psi, double alpha, double d_tilde, double tol) {
  const auto data = collect(rho, phi, psi, alpha, d_tilde);
  BoundReport report = base_report("sum", data, d_tilde);
  report.lhs = data.un_phi + data.un_psi;
  report.rhs = 2.0 * data.sum_l + 2.0 * d_tilde;
  return finish(std::move(report), tol);
}

SidePair example_closed_forms(int example_id, BoundSide side, double p, double alpha) {
  require_example(example_id, p, alpha);
  const auto w = werner_params(example_id, p);
  const double t = pw(w.x, alpha) * pw(w.y, 1.0 - alpha) + pw(w.y, alpha) * pw(w.x, 1.0 - alpha);
  // a_const - T/scale == (x^a - y^a)(x^(1-a) - y^(1-a)) / scale, since x + y = scale * a_const.
  const double a = (pw(w.x, alpha) - pw(w.y, alpha)) * (pw(w.x, 1.0 - alpha) - pw(w.y, 1.0 - alpha)) / w.scale;
  const double b = w.b_const + t / w.scale;
  return sides_from(a, b, side);
}

SidePair example_closed_forms_literal(int example_id, BoundSide side, double p, double alpha) {
  require_example(example_id, p, alpha);
  const auto w = werner_params(example_id, p);
  const double t = pw(w.x, alpha) * pw(w.y, 1.0 - alpha) + pw(w.y, alpha) * pw(w.x, 1.0 - alpha);
  if (example_id == 1) {
    const double a = (2.0 - p) / 12.0 - t / 24.0;
    const double b = (4.0 + p) / 12.0 + t / 24.0;
    if (side == BoundSide::product) {
      const double r = (2.0 - p) / 6.0 - t / 12.0;
      return {4.0 * a * b, r * r};
    }
    return {4.0 * std::sqrt(a) * std::sqrt(b), (2.0 - p) / 3.0 - t / 6.0};
  }
  const double a = (1.0 + p) / 8.0 - t / 16.0;
  const double b = (3.0 - p) / 8.0 + t / 16.0;
  if (side == BoundSide::product) return {4.0 * a * b, 4.0 * a * a};
  return {4.0 * std::sqrt(a) * std::sqrt(b), (1.0 + p) / 2.0 - t / 4.0};
}

double example_closed_form_D(int example_id, double p, double alpha) {
  return std::sqrt(example_closed_forms(example_id, BoundSide::product, p, alpha).rhs);
}

}  // namespace skewq
