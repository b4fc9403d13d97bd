#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "cli_common.hpp"
#include "skewq/errors.hpp"

namespace skewq::cli {

namespace {

std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Independent auxiliary randomness per (sample, property).
Rng aux_rng(const Sample& s, const char* property) { return Rng(child_seed(s.seed, name_hash(property))); }

double sample_alpha(const Sample& s, const CheckConfig& cfg) {
  return cfg.alphas[static_cast<std::size_t>(s.index) % cfg.alphas.size()];
}

bool is_bipartite(const Sample& s) { return s.rho.d_b() > 1; }

bool oracle_eligible(const Sample& s, const CheckConfig& cfg) {
  return s.rho.d_a() == 2 && is_bipartite(s) && s.index < cfg.oracle_samples;
}

Evaluation within(double err, double tol, Json details) {
  details["error"] = err;
  details["tolerance"] = tol;
  return {err < tol, tol - err, std::move(details)};
}

Evaluation at_least(double slack, double tol, Json details) {
  details["slack"] = slack;
  details["tolerance"] = tol;
  return {slack >= -tol, slack, std::move(details)};
}

Json observable_json(const HermitianOperator& h) { return matrix_to_json(h.matrix()); }

double trace_form_I(const DensityMatrix& rho, const HermitianOperator& h, double alpha, double* imag) {
  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix& m = h.matrix();
  Complex t = (r * m * m).trace() -
              (fractional_power(rho, alpha).matrix() * m * fractional_power(rho, 1.0 - alpha).matrix() * m).trace();
  if (imag) *imag = std::abs(t.imag());
  return t.real();
}

}  // namespace

std::vector<Property> default_properties() {
  std::vector<Property> props;

  // ---- linalg
  props.push_back({"herm_eig_reconstruction", "linalg", [](const Sample& s, const CheckConfig&) {
    Rng rng = aux_rng(s, "herm_eig_reconstruction");
    const int d = static_cast<int>(s.rho.state().dim());
    HermitianOperator h = random_hermitian(d, rng);
    SpectralDecomposition sd = herm_eig(h);
    double err = std::max(max_abs(sd.reconstruct() - h.matrix()),
                          max_abs(sd.eigenvectors.adjoint() * sd.eigenvectors - ComplexMatrix::Identity(d, d)));
    return std::optional(within(err, 1e-10, {{"observable", observable_json(h)}}));
  }});

  props.push_back({"fractional_power_product", "linalg", [](const Sample& s, const CheckConfig& cfg) {
    const double alpha = sample_alpha(s, cfg);
    const DensityMatrix& rho = s.rho.state();
    ComplexMatrix prod = fractional_power(rho, alpha).matrix() * fractional_power(rho, 1.0 - alpha).matrix();
    const auto& u = rho.spectrum().eigenvectors;
    ComplexMatrix restricted = u * rho.clipped_eigenvalues().cast<Complex>().asDiagonal() * u.adjoint();
    return std::optional(within(max_abs(prod - restricted), 1e-9, {{"alpha", alpha}}));
  }});

  props.push_back({"partial_trace_trace_psd", "linalg", [](const Sample& s, const CheckConfig&) -> std::optional<Evaluation> {
    if (!is_bipartite(s)) return std::nullopt;
    double worst = 0.0;
    for (Subsystem keep : {Subsystem::A, Subsystem::B}) {
      ComplexMatrix r = partial_trace(s.rho.matrix(), s.rho.d_a(), s.rho.d_b(), keep);
      worst = std::max(worst, std::abs(r.trace().real() - 1.0));
      double min_eig = herm_eig(r).eigenvalues.minCoeff();
      worst = std::max(worst, -min_eig);
    }
    return within(worst, 1e-9, Json::object());
  }});

  props.push_back({"kron_partial_trace", "linalg", [](const Sample& s, const CheckConfig&) -> std::optional<Evaluation> {
    if (!is_bipartite(s)) return std::nullopt;
    EnsembleSpec a{EnsembleKind::full_rank, s.rho.d_a(), 1, 1, child_seed(s.seed, 11)};
    EnsembleSpec b{EnsembleKind::full_rank, s.rho.d_b(), 1, 1, child_seed(s.seed, 12)};
    ComplexMatrix ra = random_density(a).matrix();
    ComplexMatrix rb = random_density(b).matrix();
    ComplexMatrix joint = kron(ra, rb);
    double err = std::max(max_abs(partial_trace(joint, a.d_a, b.d_a, Subsystem::A) - ra),
                          max_abs(partial_trace(joint, a.d_a, b.d_a, Subsystem::B) - rb));
    return within(err, 1e-12, Json::object());
  }});

  // ---- skew
  props.push_back({"j_ge_i_ge_0", "skew", [](const Sample& s, const CheckConfig& cfg) {
    Rng rng = aux_rng(s, "j_ge_i_ge_0");
    const double alpha = sample_alpha(s, cfg);
    HermitianOperator h = random_hermitian(static_cast<int>(s.rho.state().dim()), rng);
    SkewPair u = uncertainty_U(s.rho.state(), h, alpha);
    double slack = std::min(u.i_alpha, u.j_alpha - u.i_alpha);
    return std::optional(at_least(slack, 1e-9, {{"alpha", alpha}, {"observable", observable_json(h)}}));
  }});

  props.push_back({"pure_state_reduction", "skew", [](const Sample& s, const CheckConfig& cfg) -> std::optional<Evaluation> {
    if (s.entry->spec.kind != EnsembleKind::pure) return std::nullopt;
    Rng rng = aux_rng(s, "pure_state_reduction");
    HermitianOperator h = random_hermitian(static_cast<int>(s.rho.state().dim()), rng);
    double v = variance(s.rho.state(), h);
    double worst = 0.0;
    for (double alpha : cfg.alphas)
      worst = std::max(worst, std::abs(skew_information_I(s.rho.state(), h, alpha) - v));
    return within(worst, 1e-9, {{"observable", observable_json(h)}});
  }});

  props.push_back({"alpha_symmetry", "skew", [](const Sample& s, const CheckConfig& cfg) {
    Rng rng = aux_rng(s, "alpha_symmetry");
    const double alpha = sample_alpha(s, cfg);
    const DensityMatrix& rho = s.rho.state();
    HermitianOperator h = random_hermitian(static_cast<int>(rho.dim()), rng);
    double err = std::max(
        std::abs(skew_information_I(rho, h, alpha) - skew_information_I(rho, h, 1.0 - alpha)),
        std::abs(skew_information_J(rho, h, alpha) - skew_information_J(rho, h, 1.0 - alpha)));
    return std::optional(within(err, 1e-10, {{"alpha", alpha}, {"observable", observable_json(h)}}));
  }});

  props.push_back({"trace_form_agreement", "skew", [](const Sample& s, const CheckConfig& cfg) {
    Rng rng = aux_rng(s, "trace_form_agreement");
    const double alpha = sample_alpha(s, cfg);
    const DensityMatrix& rho = s.rho.state();
    HermitianOperator h = random_hermitian(static_cast<int>(rho.dim()), rng);
    double imag = 0.0;
    double err = std::abs(skew_information_I(rho, h, alpha) - trace_form_I(rho, h, alpha, &imag));
    err = std::max(err, imag);
    return std::optional(within(err, 1e-9, {{"alpha", alpha}, {"observable", observable_json(h)}}));
  }});

  props.push_back({"local_monotonicity", "skew", [](const Sample& s, const CheckConfig& cfg) -> std::optional<Evaluation> {
    if (!is_bipartite(s)) return std::nullopt;
    Rng rng = aux_rng(s, "local_monotonicity");
    const double alpha = sample_alpha(s, cfg);
    HermitianOperator x = random_hermitian(s.rho.d_a(), rng);
    HermitianOperator xi(kron(x.matrix(), ComplexMatrix::Identity(s.rho.d_b(), s.rho.d_b())));
    double slack = skew_information_I(s.rho.state(), xi, alpha) -
                   skew_information_I(partial_trace(s.rho, Subsystem::A), x, alpha);
    return at_least(slack, 1e-9, {{"alpha", alpha}, {"observable", observable_json(x)}});
  }});

  // ---- correlation
  props.push_back({"deficit_nonnegative", "correlation", [](const Sample& s, const CheckConfig& cfg) -> std::optional<Evaluation> {
    if (!is_bipartite(s)) return std::nullopt;
    Rng rng = aux_rng(s, "deficit_nonnegative");
    const double alpha = sample_alpha(s, cfg);
    ComplexMatrix u = random_unitary(s.rho.d_a(), rng);
    double value = DeficitEvaluator(s.rho, alpha).total(u);
    return at_least(value, 1e-9, {{"alpha", alpha}, {"basis", basis_to_json(ProjectiveBasis(u, 1e-9))}});
  }});

  props.push_back({"basis_relabel_invariance", "correlation", [](const Sample& s, const CheckConfig& cfg) -> std::optional<Evaluation> {
    if (!is_bipartite(s)) return std::nullopt;
    Rng rng = aux_rng(s, "basis_relabel_invariance");
    const double alpha = sample_alpha(s, cfg);
    ComplexMatrix u = random_unitary(s.rho.d_a(), rng);
    ComplexMatrix reversed = u.rowwise().reverse();
    DeficitEvaluator eval(s.rho, alpha);
    double err = std::abs(eval.total(u) - eval.total(reversed));
    return within(err, 1e-12, {{"alpha", alpha}, {"basis", basis_to_json(ProjectiveBasis(u, 1e-9))}});
  }});

  props.push_back({"oracle_consistency", "correlation", [](const Sample& s, const CheckConfig& cfg) -> std::optional<Evaluation> {
    if (!oracle_eligible(s, cfg)) return std::nullopt;
    const double alpha = sample_alpha(s, cfg);
    double grid = brute_force_D_qubit(s.rho, alpha, cfg.grid_points, cfg.grid_points);
    double opt = quantum_correlation_D(s.rho, alpha, cfg.optimizer).value;
    // The optimizer may only overshoot the minimum, and only slightly.
    double margin = std::min(grid + 1e-6 - opt, opt - (grid - 1e-4));
    Json details{{"alpha", alpha}, {"grid", grid}, {"optimizer", opt}};
    return Evaluation{margin >= 0.0, margin, details};
  }});

  props.push_back({"local_unitary_covariance", "correlation", [](const Sample& s, const CheckConfig& cfg) -> std::optional<Evaluation> {
    if (!oracle_eligible(s, cfg)) return std::nullopt;
    Rng rng = aux_rng(s, "local_unitary_covariance");
    const double alpha = sample_alpha(s, cfg);
    ComplexMatrix u = kron(random_unitary(2, rng), ComplexMatrix::Identity(s.rho.d_b(), s.rho.d_b()));
    ComplexMatrix rotated = u * s.rho.matrix() * u.adjoint();
    BipartiteDensityMatrix r2(0.5 * (rotated + rotated.adjoint()), 2, s.rho.d_b());
    double err = std::abs(brute_force_D_qubit(s.rho, alpha, cfg.grid_points, cfg.grid_points) -
                          brute_force_D_qubit(r2, alpha, cfg.grid_points, cfg.grid_points));
    return within(err, 1e-6, {{"alpha", alpha}, {"local_unitary", matrix_to_json(u)}});
  }});

  props.push_back({"classical_quantum_nullity", "correlation", [](const Sample& s, const CheckConfig& cfg) -> std::optional<Evaluation> {
    if (s.entry->spec.kind != EnsembleKind::classical_quantum || s.index >= cfg.oracle_samples)
      return std::nullopt;
    const double alpha = sample_alpha(s, cfg);
    CorrelationResult res = quantum_correlation_D(s.rho, alpha, cfg.optimizer);
    return within(res.value, 1e-6, {{"alpha", alpha}, {"basis", basis_to_json(res.argmin_basis)}});
  }});

  // ---- bounds
  props.push_back({"heisenberg", "bounds", [](const Sample& s, const CheckConfig& cfg) {
    Rng rng = aux_rng(s, "heisenberg");
    const double alpha = sample_alpha(s, cfg);
    const int d = static_cast<int>(s.rho.state().dim());
    HermitianOperator r = random_hermitian(d, rng);
    HermitianOperator q = random_hermitian(d, rng);
    BoundReport rep = heisenberg_type_check(s.rho.state(), r, q, alpha, cfg.tolerances.bound);
    return std::optional(at_least(rep.slack, cfg.tolerances.bound,
                                  {{"alpha", alpha}, {"R", observable_json(r)}, {"S", observable_json(q)},
                                   {"report", report_to_json(rep)}}));
  }});

  props.push_back({"product_sum_bounds_oracle_D", "bounds", [](const Sample& s, const CheckConfig& cfg) -> std::optional<Evaluation> {
    if (!oracle_eligible(s, cfg)) return std::nullopt;
    Rng rng = aux_rng(s, "product_sum_bounds_oracle_D");
    const double alpha = sample_alpha(s, cfg);
    ProjectiveBasis phi(random_unitary(2, rng), 1e-9);
    ProjectiveBasis psi(random_unitary(2, rng), 1e-9);
    double d = brute_force_D_qubit(s.rho, alpha, cfg.grid_points, cfg.grid_points);
    BoundReport prod = product_bound_check(s.rho, phi, psi, alpha, d, kOracleBoundTol);
    BoundReport sum = sum_bound_check(s.rho, phi, psi, alpha, d, kOracleBoundTol);
    // Each link of the product-form derivation must hold on its own.
    const auto& t = prod.terms;
    double i_prod = t.at("sum_I_AB_phi") * t.at("sum_I_AB_psi");
    double split = (d + t.at("sum_I_A_phi")) * (d + t.at("sum_I_A_psi"));
    double diag = d * d + t.at("sum_I_A_products");
    double margin = std::min({prod.lhs - i_prod, i_prod - split, split - diag, diag - prod.rhs,
                              prod.slack, sum.slack});
    Json details{{"alpha", alpha},
                 {"phi", basis_to_json(phi)},
                 {"psi", basis_to_json(psi)},
                 {"product", report_to_json(prod)},
                 {"sum", report_to_json(sum)}};
    return at_least(margin, kOracleBoundTol, details);
  }});

  return props;
}

void CheckConfig::validate() const {
  if (ensembles.empty()) throw ConfigError("check: need at least one ensemble");
  for (const auto& e : ensembles) {
    if (e.n_samples < 1) throw ConfigError("check: n_samples must be >= 1");
    try {
      e.spec.validate();
    } catch (const DomainError& err) {
      throw ConfigError(err.what());
    }
  }
  detail::validate_alphas(alphas);
  if (!(tolerances.herm > 0.0)) throw ConfigError("herm_tol must be > 0");
  if (!(tolerances.psd >= 0.0)) throw ConfigError("psd_tol must be >= 0");
  if (!(tolerances.bound >= 0.0)) throw ConfigError("bound_tol must be >= 0");
  if (oracle_samples < 0) throw ConfigError("oracle_samples must be >= 0");
  if (grid_points < 2) throw ConfigError("grid_points must be >= 2");
  try {
    optimizer.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

CheckConfig CheckConfig::defaults() {
  CheckConfig cfg;
  auto add = [&cfg](EnsembleKind kind, int d_a, int d_b, int rank = 1) {
    cfg.ensembles.push_back({EnsembleSpec{kind, d_a, d_b, rank, 0}, 125});
  };
  add(EnsembleKind::full_rank, 2, 2);
  add(EnsembleKind::pure, 2, 2);
  add(EnsembleKind::fixed_rank, 2, 2, 2);
  add(EnsembleKind::product, 2, 2);
  add(EnsembleKind::classical_quantum, 2, 2);
  add(EnsembleKind::separable_mixture, 2, 2);
  add(EnsembleKind::full_rank, 2, 1);
  add(EnsembleKind::full_rank, 3, 1);
  return cfg;
}

CheckConfig check_config_from_json(const Json& j) {
  using namespace detail;
  check_keys(j,
             {"ensembles", "alphas", "tolerances", "seed", "oracle_samples", "grid_points",
              "restarts", "max_iters", "out", "format", "witness"},
             "check config");
  CheckConfig cfg = CheckConfig::defaults();
  if (j.contains("ensembles")) {
    if (!j["ensembles"].is_array()) throw ConfigError("'ensembles' must be a list");
    cfg.ensembles.clear();
    for (const auto& e : j["ensembles"]) {
      check_keys(e, {"kind", "d_A", "d_B", "rank", "n_samples"}, "ensemble");
      EnsembleEntry entry;
      try {
        entry.spec.kind = ensemble_kind_from_string(get_string(e, "kind"));
      } catch (const DomainError& err) {
        throw ConfigError(err.what());
      } catch (const Json::out_of_range&) {
        throw ConfigError("ensemble: missing 'kind'");
      }
      if (e.contains("d_A")) entry.spec.d_a = get_int(e, "d_A");
      if (e.contains("d_B")) entry.spec.d_b = get_int(e, "d_B");
      if (e.contains("rank")) entry.spec.rank = get_int(e, "rank");
      if (e.contains("n_samples")) entry.n_samples = get_int(e, "n_samples");
      cfg.ensembles.push_back(entry);
    }
  }
  if (j.contains("alphas")) cfg.alphas = get_number_list(j, "alphas");
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    check_keys(t, {"herm_tol", "psd_tol", "bound_tol"}, "tolerances");
    if (t.contains("herm_tol")) cfg.tolerances.herm = get_number(t, "herm_tol");
    if (t.contains("psd_tol")) cfg.tolerances.psd = get_number(t, "psd_tol");
    if (t.contains("bound_tol")) cfg.tolerances.bound = get_number(t, "bound_tol");
  }
  if (j.contains("seed")) cfg.seed = get_u64(j, "seed");
  if (j.contains("oracle_samples")) cfg.oracle_samples = get_int(j, "oracle_samples");
  if (j.contains("grid_points")) cfg.grid_points = get_int(j, "grid_points");
  if (j.contains("restarts")) cfg.optimizer.restarts = get_int(j, "restarts");
  if (j.contains("max_iters")) cfg.optimizer.max_iters = get_int(j, "max_iters");
  if (j.contains("out")) cfg.output_path = get_string(j, "out");
  if (j.contains("format")) cfg.format = format_from_string(get_string(j, "format"));
  if (j.contains("witness")) cfg.witness_path = get_string(j, "witness");
  return cfg;
}

bool CheckReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed(); });
}

Json CheckReport::to_json() const {
  Json props = Json::array();
  for (const auto& p : properties) {
    props.push_back({{"name", p.name},
                     {"module", p.module},
                     {"samples", p.samples},
                     {"violations", p.violations},
                     {"worst_margin", p.samples > 0 ? Json(p.worst_margin) : Json(nullptr)},
                     {"passed", p.passed()}});
  }
  return Json{{"passed", all_passed()}, {"properties", props}};
}

std::string CheckReport::to_csv() const {
  std::string text = "name,module,samples,violations,worst_margin,passed\n";
  for (const auto& p : properties) {
    text += p.name + "," + p.module + "," + std::to_string(p.samples) + "," +
            std::to_string(p.violations) + "," + (p.samples > 0 ? format_number(p.worst_margin) : "") +
            "," + (p.passed() ? "true" : "false") + "\n";
  }
  return text;
}

CheckReport run_check(const CheckConfig& cfg, const std::vector<Property>& properties) {
  cfg.validate();
  CheckReport report;
  for (const auto& p : properties)
    report.properties.push_back({p.name, p.module, 0, 0, std::numeric_limits<double>::infinity(), nullptr});

  for (std::size_t e = 0; e < cfg.ensembles.size(); ++e) {
    const EnsembleEntry& entry = cfg.ensembles[e];
    const std::uint64_t ensemble_seed = child_seed(cfg.seed, e);
    for (int i = 0; i < entry.n_samples; ++i) {
      EnsembleSpec spec = entry.spec;
      spec.seed = child_seed(ensemble_seed, static_cast<std::uint64_t>(i));
      Sample sample{static_cast<int>(e), i, spec.seed, &entry, random_density(spec)};
      for (std::size_t k = 0; k < properties.size(); ++k) {
        auto outcome = properties[k].evaluate(sample, cfg);
        if (!outcome) continue;
        PropertyResult& res = report.properties[k];
        ++res.samples;
        res.worst_margin = std::min(res.worst_margin, outcome->margin);
        if (!outcome->ok) {
          if (res.violations == 0) {
            res.witness = Json{{"property", res.name},
                               {"module", res.module},
                               {"ensemble", {{"kind", to_string(spec.kind)},
                                             {"d_A", spec.d_a},
                                             {"d_B", spec.d_b},
                                             {"rank", spec.rank}}},
                               {"sample", i},
                               {"seed", spec.seed},
                               {"state", state_to_json(sample.rho)},
                               {"details", outcome->details}};
          }
          ++res.violations;
        }
      }
    }
  }
  return report;
}

int cmd_check(const CheckConfig& cfg, std::ostream& out, std::ostream& err,
              const std::vector<Property>& extra_properties) {
  return detail::guarded(
      [&]() {
        auto props = default_properties();
        props.insert(props.end(), extra_properties.begin(), extra_properties.end());
        CheckReport report = run_check(cfg, props);
        std::string text = cfg.format == OutputFormat::json ? report.to_json().dump(2) + "\n" : report.to_csv();
        detail::emit(text, cfg.output_path, out);
        if (report.all_passed()) return static_cast<int>(kSuccess);

        Json witnesses = Json::array();
        for (const auto& p : report.properties) {
          if (p.passed()) continue;
          err << "property " << p.name << " failed on " << p.violations << " of " << p.samples
              << " samples (worst margin " << format_number(p.worst_margin) << ")\n";
          witnesses.push_back(p.witness);
        }
        std::string witness_path = cfg.witness_path;
        if (witness_path.empty())
          witness_path = (cfg.output_path.empty() || cfg.output_path == "-")
                             ? "check_witness.json"
                             : cfg.output_path + ".witness.json";
        write_text_file(witness_path, witnesses.dump(2) + "\n");
        err << "witness written to " << witness_path << "\n";
        return static_cast<int>(kPropertyViolation);
      },
      err);
}

}  // namespace skewq::cli
