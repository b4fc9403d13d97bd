#pragma once

// Library side of the `skewq` command line tool. Each subcommand is a plain
// function so the integration tests can drive it without a subprocess.
//
// Exit codes: 0 success, 1 property violation, 2 config/parse error,
// 3 internal numerical-consistency error.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skewq/bounds.hpp"
#include "skewq/correlation.hpp"
#include "skewq/io.hpp"
#include "skewq/states.hpp"

namespace skewq::cli {

enum ExitCode : int {
  kSuccess = 0,
  kPropertyViolation = 1,
  kConfigError = 2,
  kNumericalError = 3,
};

enum class OracleKind { grid, optimizer };
enum class OutputFormat { csv, json };

OracleKind oracle_from_string(const std::string& s);
OutputFormat format_from_string(const std::string& s);
std::string to_string(OracleKind k);

// Pipeline rows must agree with the closed forms to this absolute error.
inline constexpr double kReproduceTolerance = 1e-8;

// ---------------------------------------------------------------- reproduce

struct SweepConfig {
  std::string example = "1";  // "1", "2", "3" or "custom"
  std::optional<double> p_start;
  std::optional<double> p_stop;
  std::optional<double> p_step;
  std::vector<double> alphas{0.2, 0.5};
  OracleKind oracle = OracleKind::grid;
  std::string output_path;  // empty: standard output
  OutputFormat format = OutputFormat::csv;
  std::string state_file;  // example "custom" only
  int grid_points = kDefaultGridPoints;
  OptimizerConfig optimizer;

  void validate() const;
  // Grid points start + i*step up to stop; the last point snaps onto stop.
  std::vector<double> p_values() const;
};

// Reads the keys: example, p_start, p_stop, p_step, alphas, oracle, seed,
// out, format, state_file, grid_points, restarts, max_iters.
SweepConfig sweep_config_from_json(const Json& j);

struct SweepRow {
  std::optional<double> p;
  double alpha = 0.0;
  BoundReport product;
  BoundReport sum;
  std::optional<SidePair> closed_product;
  std::optional<SidePair> closed_sum;
  std::optional<double> abs_err_max;
};

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);
std::string render_sweep(const SweepConfig& cfg, const std::vector<SweepRow>& rows);
const std::vector<std::string>& sweep_columns();

// Note attached to example 2 output about the commonly quoted left-hand sides.
std::string example2_note(const std::vector<SweepRow>& rows);

int cmd_reproduce(const SweepConfig& cfg, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------- check

struct EnsembleEntry {
  EnsembleSpec spec;  // spec.seed is ignored; samples derive seeds from CheckConfig::seed
  int n_samples = 125;
};

struct CheckTolerances {
  double herm = 1e-10;
  double psd = 1e-10;
  double bound = 1e-9;
};

struct CheckConfig {
  std::vector<EnsembleEntry> ensembles;
  std::vector<double> alphas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  CheckTolerances tolerances;
  std::uint64_t seed = 42;
  // Grid-oracle properties run on the first oracle_samples draws of each
  // ensemble with d_A = 2.
  int oracle_samples = 25;
  int grid_points = kDefaultGridPoints;
  OptimizerConfig optimizer;
  std::string output_path;
  OutputFormat format = OutputFormat::json;
  std::string witness_path;  // default: <output_path>.witness.json or check_witness.json

  void validate() const;
  static CheckConfig defaults();
};

// Reads: ensembles [{kind, d_A, d_B, rank, n_samples}], alphas, tolerances
// {herm_tol, psd_tol, bound_tol}, seed, oracle_samples, grid_points,
// restarts, max_iters, out, format, witness.
CheckConfig check_config_from_json(const Json& j);

struct Sample {
  int ensemble = 0;
  int index = 0;
  std::uint64_t seed = 0;
  const EnsembleEntry* entry = nullptr;
  BipartiteDensityMatrix rho;
};

struct Evaluation {
  bool ok = true;
  double margin = 0.0;  // distance from failing; negative when violated
  Json details;         // witness payload beyond the state (basis, alpha, ...)
};

struct Property {
  std::string name;
  std::string module;
  // Returns nullopt when the sample is not applicable.
  std::function<std::optional<Evaluation>(const Sample&, const CheckConfig&)> evaluate;
};

struct PropertyResult {
  std::string name;
  std::string module;
  long samples = 0;
  long violations = 0;
  double worst_margin = 0.0;
  Json witness;  // first violation, null if none
  bool passed() const { return violations == 0; }
};

struct CheckReport {
  std::vector<PropertyResult> properties;
  bool all_passed() const;
  Json to_json() const;
  std::string to_csv() const;
};

std::vector<Property> default_properties();
CheckReport run_check(const CheckConfig& cfg, const std::vector<Property>& properties);
int cmd_check(const CheckConfig& cfg, std::ostream& out, std::ostream& err,
              const std::vector<Property>& extra_properties = {});

// ---------------------------------------------------------------- eval

struct EvalRequest {
  std::string state_file;
  std::string basis = "z,x";  // phi,psi from {x, y, z, comp, fourier}
  double alpha = 0.5;
  OracleKind oracle = OracleKind::grid;
  int grid_points = kDefaultGridPoints;
  OptimizerConfig optimizer;
};

EvalRequest eval_request_from_json(const Json& j);

// Named basis of dimension d; x/y/z need d = 2.
ProjectiveBasis named_basis(const std::string& name, int d);

// Nondegenerate observable sum_k (d - 1 - 2k) phi_k; reproduces sigma_x,y,z
// for the Pauli bases.
HermitianOperator observable_from_basis(const ProjectiveBasis& basis);

Json run_eval(const EvalRequest& req);
int cmd_eval(const EvalRequest& req, std::ostream& out, std::ostream& err);

}  // namespace skewq::cli
