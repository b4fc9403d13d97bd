#include <iostream>

#include "cli_common.hpp"
#include "skewq/errors.hpp"

namespace skewq::cli {

namespace {

std::pair<std::string, std::string> split_basis(const std::string& spec) {
  auto comma = spec.find(',');
  if (comma == std::string::npos || spec.find(',', comma + 1) != std::string::npos)
    throw ConfigError("basis must look like 'phi,psi', got '" + spec + "'");
  return {spec.substr(0, comma), spec.substr(comma + 1)};
}

}  // namespace

ProjectiveBasis named_basis(const std::string& name, int d) {
  if (name == "comp") return computational_basis(d);
  if (name == "fourier") return fourier_basis(d);
  if (name == "x" || name == "y" || name == "z") {
    if (d != 2) throw ConfigError("basis '" + name + "' needs d_A = 2");
    return pauli_basis(name == "x" ? PauliAxis::x : name == "y" ? PauliAxis::y : PauliAxis::z);
  }
  throw ConfigError("unknown basis '" + name + "' (x, y, z, comp, fourier)");
}

HermitianOperator observable_from_basis(const ProjectiveBasis& basis) {
  const Eigen::Index d = basis.dim();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    m += static_cast<double>(d - 1 - 2 * k) * basis.projector(k).matrix();
  return HermitianOperator(0.5 * (m + m.adjoint()));
}

EvalRequest eval_request_from_json(const Json& j) {
  using namespace detail;
  check_keys(j, {"state", "basis", "alpha", "oracle", "grid_points", "restarts", "max_iters", "seed"},
             "eval config");
  EvalRequest req;
  if (j.contains("state")) req.state_file = get_string(j, "state");
  if (j.contains("basis")) req.basis = get_string(j, "basis");
  if (j.contains("alpha")) req.alpha = get_number(j, "alpha");
  if (j.contains("oracle")) req.oracle = oracle_from_string(get_string(j, "oracle"));
  if (j.contains("grid_points")) req.grid_points = get_int(j, "grid_points");
  if (j.contains("restarts")) req.optimizer.restarts = get_int(j, "restarts");
  if (j.contains("max_iters")) req.optimizer.max_iters = get_int(j, "max_iters");
  if (j.contains("seed")) req.optimizer.seed = get_u64(j, "seed");
  return req;
}

Json run_eval(const EvalRequest& req) {
  if (req.state_file.empty()) throw ConfigError("eval: --state is required");
  detail::validate_alphas({req.alpha});
  if (req.grid_points < 2) throw ConfigError("grid_points must be >= 2");
  try {
    req.optimizer.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  const BipartiteDensityMatrix rho = load_state_file(req.state_file);
  const auto [phi_name, psi_name] = split_basis(req.basis);
  const ProjectiveBasis phi = named_basis(phi_name, rho.d_a());
  const ProjectiveBasis psi = named_basis(psi_name, rho.d_a());
  const double alpha = req.alpha;

  const double d = detail::compute_d_tilde(rho, alpha, req.oracle, req.grid_points, req.optimizer);
  const double tol = kOracleBoundTol;
  BoundReport heis = heisenberg_type_check(partial_trace(rho, Subsystem::A), observable_from_basis(phi),
                                           observable_from_basis(psi), alpha, kExactBoundTol);
  BoundReport prod = product_bound_check(rho, phi, psi, alpha, d, tol);
  BoundReport sum = sum_bound_check(rho, phi, psi, alpha, d, tol);

  return Json{{"d_A", rho.d_a()},
              {"d_B", rho.d_b()},
              {"alpha", alpha},
              {"basis", {{"phi", phi_name}, {"psi", psi_name}}},
              {"oracle", to_string(req.oracle)},
              {"D_tilde", d},
              {"lhs_product", prod.lhs},
              {"rhs_product", prod.rhs},
              {"lhs_sum", sum.lhs},
              {"rhs_sum", sum.rhs},
              {"heisenberg", report_to_json(heis)},
              {"product", report_to_json(prod)},
              {"sum", report_to_json(sum)}};
}

int cmd_eval(const EvalRequest& req, std::ostream& out, std::ostream& err) {
  return detail::guarded(
      [&]() {
        Json result = run_eval(req);
        out << result.dump(2) << "\n";
        bool holds = result["heisenberg"]["holds"].get<bool>() && result["product"]["holds"].get<bool>() &&
                     result["sum"]["holds"].get<bool>();
        if (!holds) err << "a bound is violated for this state\n";
        return static_cast<int>(holds ? kSuccess : kPropertyViolation);
      },
      err);
}

}  // namespace skewq::cli
