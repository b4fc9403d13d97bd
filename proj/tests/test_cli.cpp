#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "skewq/cli.hpp"
#include "skewq/errors.hpp"

using namespace skewq;
using namespace skewq::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "skewq_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

int run_binary(const std::string& args, std::string* out = nullptr) {
  fs::path capture = scratch("stdout.txt");
  std::string cmd = std::string(SKEWQ_BINARY) + " " + args + " > " + capture.string() + " 2> " +
                    scratch("stderr.txt").string();
  int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream in(capture);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write_state(const std::string& name, const BipartiteDensityMatrix& rho) {
  fs::path p = scratch(name);
  save_state_file(p, rho);
  return p.string();
}

std::string write_json(const std::string& name, const Json& j) {
  fs::path p = scratch(name);
  write_text_file(p, j.dump());
  return p.string();
}

CheckConfig small_check() {
  CheckConfig cfg;
  cfg.ensembles.push_back({EnsembleSpec{EnsembleKind::full_rank, 2, 2, 1, 0}, 3});
  cfg.alphas = {0.5};
  cfg.oracle_samples = 1;
  cfg.grid_points = 31;
  cfg.optimizer.restarts = 3;
  return cfg;
}

}  // namespace

TEST(SweepConfig, PGridAndValidation) {
  SweepConfig cfg;
  auto ps = cfg.p_values();
  ASSERT_EQ(ps.size(), 201u);
  EXPECT_EQ(ps.front(), -1.0);
  EXPECT_EQ(ps.back(), 1.0);
  EXPECT_EQ(ps[150], 0.5);

  cfg.example = "3";
  EXPECT_EQ(cfg.p_values().size(), 101u);
  cfg.p_start = -0.5;
  EXPECT_THROW(cfg.validate(), ConfigError);

  SweepConfig bad;
  bad.p_step = 0.0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = SweepConfig{};
  bad.alphas = {1.2};
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = SweepConfig{};
  bad.example = "4";
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(SweepConfig, FromJson) {
  SweepConfig cfg = sweep_config_from_json(Json::parse(
      R"({"example": 3, "alphas": [0.3], "p_start": 0.5, "p_step": 0.25, "oracle": "optimizer", "format": "json"})"));
  EXPECT_EQ(cfg.example, "3");
  EXPECT_EQ(cfg.oracle, OracleKind::optimizer);
  EXPECT_EQ(cfg.format, OutputFormat::json);
  EXPECT_EQ(cfg.p_values(), (std::vector<double>{0.5, 0.75, 1.0}));
  EXPECT_THROW(sweep_config_from_json(Json::parse(R"({"exmaple": 1})")), ConfigError);
  EXPECT_THROW(sweep_config_from_json(Json::parse(R"({"alphas": "0.5"})")), ConfigError);
}

TEST(Reproduce, ExampleOneHalfPointVanishes) {
  SweepConfig cfg;
  cfg.p_start = 0.5;
  cfg.p_stop = 0.5;
  auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.product.lhs, 0.0, 1e-12);
    EXPECT_NEAR(r.product.rhs, 0.0, 1e-12);
    EXPECT_NEAR(r.sum.lhs, 0.0, 1e-12);
    EXPECT_NEAR(r.sum.rhs, 0.0, 1e-12);
  }
}

TEST(Reproduce, ExampleThreeBellRow) {
  SweepConfig cfg;
  cfg.example = "3";
  cfg.p_start = 1.0;
  auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.sum.lhs, 1.0, 1e-12);
    EXPECT_NEAR(r.sum.rhs, 1.0, 1e-12);
  }
}

TEST(Reproduce, CsvLayout) {
  SweepConfig cfg;
  cfg.example = "2";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_reproduce(cfg, out, err), kSuccess);
  std::istringstream lines(out.str());
  std::string header, row;
  std::getline(lines, header);
  EXPECT_EQ(header,
            "p,alpha,lhs_product,rhs_product,lhs_sum,rhs_sum,sum_L,D_tilde,closed_form_lhs_product,"
            "closed_form_rhs_product,closed_form_lhs_sum,closed_form_rhs_sum,abs_err_max");
  std::getline(lines, row);
  EXPECT_EQ(row.substr(0, 21), ",0.20000000000000001,");
  EXPECT_EQ(row.substr(row.size() - 5), ",,,,,");
  EXPECT_NE(err.str().find("Example 2"), std::string::npos);
}

TEST(Reproduce, JsonNotes) {
  SweepConfig cfg;
  cfg.example = "2";
  cfg.format = OutputFormat::json;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_reproduce(cfg, out, err), kSuccess);
  Json j = Json::parse(out.str());
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["notes"].size(), 1u);
  EXPECT_TRUE(j["rows"][0]["holds_product"].get<bool>());
}

TEST(Reproduce, GridOracleNeedsQubit) {
  SweepConfig cfg;
  cfg.example = "custom";
  cfg.state_file = write_state("qutrit.json", random_density({EnsembleKind::full_rank, 3, 2, 1, 1}));
  std::ostringstream out, err;
  EXPECT_EQ(cmd_reproduce(cfg, out, err), kConfigError);
  cfg.oracle = OracleKind::optimizer;
  cfg.alphas = {0.5};
  cfg.optimizer.restarts = 4;
  EXPECT_EQ(cmd_reproduce(cfg, out, err), kSuccess);
}

TEST(Check, SmallCampaignPasses) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_check(small_check(), out, err), kSuccess) << err.str();
  Json j = Json::parse(out.str());
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_GE(j["properties"].size(), 10u);
}

TEST(Check, NegativeBoundToleranceIsConfigError) {
  CheckConfig cfg = small_check();
  cfg.tolerances.bound = -1.0;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_check(cfg, out, err), kConfigError);

  EXPECT_THROW(check_config_from_json(Json::parse(R"({"tolerances": {"bound_tol": -1}})")).validate(),
               ConfigError);
  EXPECT_THROW(check_config_from_json(Json::parse(R"({"ensembles": [{"kind": "nope"}]})")), ConfigError);
  EXPECT_THROW(check_config_from_json(Json::parse(R"({"ensembles": [{"kind": "pure", "n_samples": 0}]})")).validate(),
               ConfigError);
}

TEST(Check, InjectedFailureWritesWitness) {
  CheckConfig cfg = small_check();
  cfg.witness_path = scratch("witness.json").string();
  fs::remove(cfg.witness_path);
  Property fake{"always_fails", "test", [](const Sample& s, const CheckConfig&) -> std::optional<Evaluation> {
                  return Evaluation{false, -1.0, Json{{"alpha", 0.5}, {"basis", "z"}, {"index", s.index}}};
                }};
  std::ostringstream out, err;
  EXPECT_EQ(cmd_check(cfg, out, err, {fake}), kPropertyViolation);
  ASSERT_TRUE(fs::exists(cfg.witness_path));
  Json w = read_json_file(cfg.witness_path);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0]["property"], "always_fails");
  EXPECT_EQ(w[0]["details"]["alpha"], 0.5);
  EXPECT_EQ(w[0]["details"]["basis"], "z");
  auto rho = state_from_json(w[0]["state"]);
  EXPECT_EQ(rho.d_a(), 2);
}

TEST(Check, InternalInconsistencyExitsThree) {
  Property broken{"broken", "test", [](const Sample&, const CheckConfig&) -> std::optional<Evaluation> {
                    throw NumericalConsistencyError("forced");
                  }};
  std::ostringstream out, err;
  EXPECT_EQ(cmd_check(small_check(), out, err, {broken}), kNumericalError);
}

TEST(Check, CsvReport) {
  CheckConfig cfg = small_check();
  cfg.format = OutputFormat::csv;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_check(cfg, out, err), kSuccess);
  EXPECT_EQ(out.str().substr(0, 49), "name,module,samples,violations,worst_margin,passe");
}

TEST(Eval, BellStatePauliXZ) {
  EvalRequest req;
  req.state_file = write_state("bell.json", werner_isotropic(1.0));
  Json j = run_eval(req);
  EXPECT_NEAR(j["lhs_product"].get<double>(), 0.25, 1e-9);
  EXPECT_NEAR(j["rhs_product"].get<double>(), 0.25, 1e-9);
  EXPECT_TRUE(j["product"]["holds"].get<bool>());
}

TEST(Eval, MaximallyMixedIsAllZero) {
  EvalRequest req;
  req.state_file = write_state("mixed.json", werner_isotropic(0.0));
  Json j = run_eval(req);
  for (const char* k : {"lhs_product", "rhs_product", "lhs_sum", "rhs_sum", "D_tilde"})
    EXPECT_NEAR(j[k].get<double>(), 0.0, 1e-12) << k;
}

TEST(Eval, ProductStateOptimizer) {
  EvalRequest req;
  req.state_file = write_state("product.json", random_density({EnsembleKind::product, 2, 2, 1, 6}));
  req.oracle = OracleKind::optimizer;
  Json j = run_eval(req);
  EXPECT_LT(j["D_tilde"].get<double>(), 1e-6);
}

TEST(Eval, BadInputs) {
  std::ostringstream out, err;
  EvalRequest req;
  req.state_file = scratch("does_not_exist.json").string();
  EXPECT_EQ(cmd_eval(req, out, err), kConfigError);
  req.state_file = write_state("bell2.json", werner_isotropic(1.0));
  req.basis = "z";
  EXPECT_EQ(cmd_eval(req, out, err), kConfigError);
  req.basis = "z,w";
  EXPECT_EQ(cmd_eval(req, out, err), kConfigError);
  EXPECT_THROW(named_basis("x", 3), ConfigError);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("--bogus"), kConfigError);
  EXPECT_EQ(run_binary("reproduce --example 7"), kConfigError);
  EXPECT_EQ(run_binary("reproduce --alpha 0.5,abc"), kConfigError);
  EXPECT_EQ(run_binary("reproduce --p-step 0"), kConfigError);
  EXPECT_EQ(run_binary("reproduce --oracle magic"), kConfigError);
  EXPECT_EQ(run_binary("reproduce --config " + scratch("nope.json").string()), kConfigError);
  EXPECT_EQ(run_binary("check --config " + write_json("neg_tol.json", {{"tolerances", {{"bound_tol", -1}}}})),
            kConfigError);

  Json not_a_state{{"d_A", 2}, {"d_B", 1}, {"matrix", {{1, 0}, {0, 0}, {0, 0}, {1, 0}}}};
  EXPECT_EQ(run_binary("eval --state " + write_json("trace2.json", not_a_state)), kConfigError);
}

TEST(Binary, EvalAndReproduceSucceed) {
  std::string out;
  EXPECT_EQ(run_binary("eval --state " + write_state("bell3.json", werner_isotropic(1.0)) + " --basis x,z --alpha 0.5", &out),
            kSuccess);
  Json j = Json::parse(out);
  EXPECT_NEAR(j["lhs_product"].get<double>(), 0.25, 1e-9);

  EXPECT_EQ(run_binary("reproduce --example 3 --p-start 0.9 --alpha 0.2 --format json", &out), kSuccess);
  EXPECT_EQ(Json::parse(out)["rows"].size(), 11u);
}

TEST(Binary, FlagsOverrideConfig) {
  std::string cfg = write_json("rep.json", {{"example", "3"}, {"p_start", 0.0}, {"alphas", {0.2, 0.5}}});
  std::string out;
  ASSERT_EQ(run_binary("reproduce --config " + cfg + " --p-start 0.95 --alpha 0.4", &out), kSuccess);
  std::istringstream lines(out);
  std::string line;
  int rows = -1;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 6);
  EXPECT_NE(out.find(",0.40000000000000002,"), std::string::npos);
}
