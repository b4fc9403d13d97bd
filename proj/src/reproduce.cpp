#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "cli_common.hpp"
#include "skewq/errors.hpp"

namespace skewq::cli {

namespace detail {

double compute_d_tilde(const BipartiteDensityMatrix& rho, double alpha, OracleKind oracle,
                       int grid_points, const OptimizerConfig& optimizer) {
  if (oracle == OracleKind::grid) {
    if (rho.d_a() != 2) throw ConfigError("the grid oracle requires d_A = 2; use --oracle optimizer");
    return brute_force_D_qubit(rho, alpha, grid_points, grid_points);
  }
  return quantum_correlation_D(rho, alpha, optimizer).value;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const ShapeError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const OptimizerError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + ": expected a JSON object");
  for (const auto& item : j.items()) {
    bool known = std::any_of(allowed.begin(), allowed.end(),
                             [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError(std::string(what) + ": unknown key '" + item.key() + "'");
  }
}

double get_number(const Json& j, const char* key) {
  if (!j.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

int get_int(const Json& j, const char* key) {
  if (!j.at(key).is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  return j.at(key).get<int>();
}

std::uint64_t get_u64(const Json& j, const char* key) {
  if (!j.at(key).is_number_unsigned())
    throw ConfigError(std::string("'") + key + "' must be a nonnegative integer");
  return j.at(key).get<std::uint64_t>();
}

std::string get_string(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ConfigError(std::string("'") + key + "' must be a string");
}

std::vector<double> get_number_list(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_array()) throw ConfigError(std::string("'") + key + "' must be a list of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(std::string("'") + key + "' must be a list of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void validate_alphas(const std::vector<double>& alphas) {
  if (alphas.empty()) throw ConfigError("alphas: need at least one value");
  for (double a : alphas)
    if (!(a >= 0.0 && a <= 1.0)) {
      std::ostringstream os;
      os << "alphas: " << a << " is outside [0, 1]";
      throw ConfigError(os.str());
    }
}

}  // namespace detail

OracleKind oracle_from_string(const std::string& s) {
  if (s == "grid") return OracleKind::grid;
  if (s == "optimizer") return OracleKind::optimizer;
  throw ConfigError("oracle must be 'grid' or 'optimizer', got '" + s + "'");
}

OutputFormat format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ConfigError("format must be 'csv' or 'json', got '" + s + "'");
}

std::string to_string(OracleKind k) { return k == OracleKind::grid ? "grid" : "optimizer"; }

namespace {

struct Range {
  double lo, hi;
};

std::optional<Range> example_range(const std::string& example) {
  if (example == "1") return Range{-1.0, 1.0};
  if (example == "3") return Range{0.0, 1.0};
  return std::nullopt;
}

}  // namespace

void SweepConfig::validate() const {
  if (example != "1" && example != "2" && example != "3" && example != "custom")
    throw ConfigError("example must be 1, 2, 3 or custom, got '" + example + "'");
  detail::validate_alphas(alphas);
  if (p_step && !(*p_step > 0.0)) throw ConfigError("p_step must be > 0");
  if (auto range = example_range(example)) {
    double start = p_start.value_or(range->lo);
    double stop = p_stop.value_or(range->hi);
    if (!(start >= range->lo && stop <= range->hi && start <= stop)) {
      std::ostringstream os;
      os << "p grid [" << start << ", " << stop << "] must lie within [" << range->lo << ", "
         << range->hi << "] for example " << example;
      throw ConfigError(os.str());
    }
  }
  if (example == "custom" && state_file.empty()) throw ConfigError("example 'custom' needs state_file");
  if (grid_points < 2) throw ConfigError("grid_points must be >= 2");
  try {
    optimizer.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<double> SweepConfig::p_values() const {
  auto range = example_range(example);
  if (!range) return {};
  const double start = p_start.value_or(range->lo);
  const double stop = p_stop.value_or(range->hi);
  const double step = p_step.value_or(0.01);
  const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) {
    double p = std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12;
    out.push_back(std::clamp(p, range->lo, range->hi));
  }
  if (std::abs(out.back() - stop) <= 1e-9 * step) out.back() = stop;
  return out;
}

SweepConfig sweep_config_from_json(const Json& j) {
  using namespace detail;
  check_keys(j,
             {"example", "p_start", "p_stop", "p_step", "alphas", "oracle", "seed", "out", "format",
              "state_file", "grid_points", "restarts", "max_iters"},
             "reproduce config");
  SweepConfig cfg;
  if (j.contains("example")) cfg.example = get_string(j, "example");
  if (j.contains("p_start")) cfg.p_start = get_number(j, "p_start");
  if (j.contains("p_stop")) cfg.p_stop = get_number(j, "p_stop");
  if (j.contains("p_step")) cfg.p_step = get_number(j, "p_step");
  if (j.contains("alphas")) cfg.alphas = get_number_list(j, "alphas");
  if (j.contains("oracle")) cfg.oracle = oracle_from_string(get_string(j, "oracle"));
  if (j.contains("seed")) cfg.optimizer.seed = get_u64(j, "seed");
  if (j.contains("out")) cfg.output_path = get_string(j, "out");
  if (j.contains("format")) cfg.format = format_from_string(get_string(j, "format"));
  if (j.contains("state_file")) cfg.state_file = get_string(j, "state_file");
  if (j.contains("grid_points")) cfg.grid_points = get_int(j, "grid_points");
  if (j.contains("restarts")) cfg.optimizer.restarts = get_int(j, "restarts");
  if (j.contains("max_iters")) cfg.optimizer.max_iters = get_int(j, "max_iters");
  return cfg;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> columns{
      "p",        "alpha",   "lhs_product",           "rhs_product",           "lhs_sum",
      "rhs_sum",  "sum_L",   "D_tilde",               "closed_form_lhs_product",
      "closed_form_rhs_product", "closed_form_lhs_sum", "closed_form_rhs_sum", "abs_err_max"};
  return columns;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<SweepRow> rows;

  std::optional<BipartiteDensityMatrix> fixed_state;
  if (cfg.example == "2") fixed_state = example2_state();
  if (cfg.example == "custom") fixed_state = load_state_file(cfg.state_file);

  const int d_a = fixed_state ? fixed_state->d_a() : 2;
  const ProjectiveBasis phi = d_a == 2 ? pauli_basis(PauliAxis::z) : computational_basis(d_a);
  const ProjectiveBasis psi = d_a == 2 ? pauli_basis(PauliAxis::x) : fourier_basis(d_a);
  const int example_id = cfg.example == "1" ? 1 : cfg.example == "3" ? 3 : 0;

  auto evaluate = [&](const BipartiteDensityMatrix& rho, std::optional<double> p, double alpha) {
    const double d = detail::compute_d_tilde(rho, alpha, cfg.oracle, cfg.grid_points, cfg.optimizer);
    SweepRow row{p, alpha, product_bound_check(rho, phi, psi, alpha, d, kOracleBoundTol),
                 sum_bound_check(rho, phi, psi, alpha, d, kOracleBoundTol), std::nullopt,
                 std::nullopt, std::nullopt};
    if (example_id != 0) {
      row.closed_product = example_closed_forms(example_id, BoundSide::product, *p, alpha);
      row.closed_sum = example_closed_forms(example_id, BoundSide::sum, *p, alpha);
      row.abs_err_max = std::max({std::abs(row.product.lhs - row.closed_product->lhs),
                                  std::abs(row.product.rhs - row.closed_product->rhs),
                                  std::abs(row.sum.lhs - row.closed_sum->lhs),
                                  std::abs(row.sum.rhs - row.closed_sum->rhs)});
    }
    return row;
  };

  if (fixed_state) {
    for (double alpha : cfg.alphas) rows.push_back(evaluate(*fixed_state, std::nullopt, alpha));
    return rows;
  }
  for (double p : cfg.p_values()) {
    const BipartiteDensityMatrix rho = example_id == 1 ? werner_swap(p) : werner_isotropic(p);
    for (double alpha : cfg.alphas) rows.push_back(evaluate(rho, p, alpha));
  }
  return rows;
}

namespace {

std::vector<std::optional<double>> row_values(const SweepRow& r) {
  auto opt_lhs = [](const std::optional<SidePair>& s) { return s ? std::optional(s->lhs) : std::nullopt; };
  auto opt_rhs = [](const std::optional<SidePair>& s) { return s ? std::optional(s->rhs) : std::nullopt; };
  return {r.p,
          r.alpha,
          r.product.lhs,
          r.product.rhs,
          r.sum.lhs,
          r.sum.rhs,
          r.sum.terms.at("sum_L"),
          r.sum.terms.at("D_tilde"),
          opt_lhs(r.closed_product),
          opt_rhs(r.closed_product),
          opt_lhs(r.closed_sum),
          opt_rhs(r.closed_sum),
          r.abs_err_max};
}

}  // namespace

std::string example2_note(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "Example 2: commonly quoted left-hand sides for this state are 1/2 (product form) and 0 "
        "(sum form). Both are built from the same two factors UN_z and UN_x; computed here:";
  for (const auto& r : rows) {
    os << " [alpha=" << format_number(r.alpha) << ": UN_z=" << format_number(r.product.terms.at("UN_phi"))
       << ", UN_x=" << format_number(r.product.terms.at("UN_psi"))
       << ", product=" << format_number(r.product.lhs) << ", sum=" << format_number(r.sum.lhs)
       << "]";
  }
  os << ". The quoted pair corresponds to the product and sum left sides exchanged; "
        "both right-hand sides are 0.";
  return os.str();
}

std::string render_sweep(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  const auto& columns = sweep_columns();
  if (cfg.format == OutputFormat::csv) {
    std::string text;
    for (std::size_t c = 0; c < columns.size(); ++c) text += (c ? "," : "") + columns[c];
    text += "\n";
    for (const auto& r : rows) {
      auto values = row_values(r);
      for (std::size_t c = 0; c < values.size(); ++c) {
        if (c) text += ",";
        if (values[c]) text += format_number(*values[c]);
      }
      text += "\n";
    }
    return text;
  }
  Json out{{"example", cfg.example}, {"oracle", to_string(cfg.oracle)}, {"columns", columns}};
  Json jrows = Json::array();
  for (const auto& r : rows) {
    auto values = row_values(r);
    Json jr = Json::object();
    for (std::size_t c = 0; c < values.size(); ++c)
      jr[columns[c]] = values[c] ? Json(*values[c]) : Json(nullptr);
    jr["holds_product"] = r.product.holds;
    jr["holds_sum"] = r.sum.holds;
    jrows.push_back(std::move(jr));
  }
  out["rows"] = std::move(jrows);
  out["notes"] = Json::array();
  if (cfg.example == "2") out["notes"].push_back(example2_note(rows));
  return out.dump(2) + "\n";
}

int cmd_reproduce(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(
      [&]() {
        const auto rows = run_sweep(cfg);
        detail::emit(render_sweep(cfg, rows), cfg.output_path, out);
        if (cfg.example == "2") err << example2_note(rows) << "\n";
        int failures = 0;
        for (const auto& r : rows) {
          bool closed_ok = !r.abs_err_max || *r.abs_err_max < kReproduceTolerance;
          if (!closed_ok || !r.product.holds || !r.sum.holds) ++failures;
        }
        if (failures > 0) {
          err << failures << " row(s) failed the closed-form comparison or a bound check\n";
          return static_cast<int>(kPropertyViolation);
        }
        return static_cast<int>(kSuccess);
      },
      err);
}

}  // namespace skewq::cli
