#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "../src/cli_common.hpp"
#include "skewq/errors.hpp"

using namespace skewq;
using namespace skewq::cli;

namespace {

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--alpha: cannot parse '" + item + "'");
    }
  }
  return out;
}

struct Overrides {
  std::string config, example, alpha, oracle, out, format, state, basis;
  std::optional<double> p_start, p_stop, p_step;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--alpha", o.alpha, "alpha value(s), comma separated");
  cmd->add_option("--oracle", o.oracle, "grid or optimizer");
  cmd->add_option("--seed", o.seed, "RNG seed");
}

int run_reproduce(const Overrides& o) {
  return detail::guarded(
      [&]() {
        SweepConfig cfg = o.config.empty() ? SweepConfig{} : sweep_config_from_json(read_json_file(o.config));
        if (!o.example.empty()) cfg.example = o.example;
        if (!o.alpha.empty()) cfg.alphas = parse_alpha_list(o.alpha);
        if (!o.oracle.empty()) cfg.oracle = oracle_from_string(o.oracle);
        if (o.seed) cfg.optimizer.seed = *o.seed;
        if (o.p_start) cfg.p_start = o.p_start;
        if (o.p_stop) cfg.p_stop = o.p_stop;
        if (o.p_step) cfg.p_step = o.p_step;
        if (!o.out.empty()) cfg.output_path = o.out;
        if (!o.format.empty()) cfg.format = format_from_string(o.format);
        if (!o.state.empty()) cfg.state_file = o.state;
        return cmd_reproduce(cfg, std::cout, std::cerr);
      },
      std::cerr);
}

int run_check_cmd(const Overrides& o) {
  return detail::guarded(
      [&]() {
        CheckConfig cfg = o.config.empty() ? CheckConfig::defaults() : check_config_from_json(read_json_file(o.config));
        if (!o.alpha.empty()) cfg.alphas = parse_alpha_list(o.alpha);
        if (o.seed) cfg.seed = *o.seed;
        if (!o.out.empty()) cfg.output_path = o.out;
        if (!o.format.empty()) cfg.format = format_from_string(o.format);
        return cmd_check(cfg, std::cout, std::cerr);
      },
      std::cerr);
}

int run_eval_cmd(const Overrides& o) {
  return detail::guarded(
      [&]() {
        EvalRequest req = o.config.empty() ? EvalRequest{} : eval_request_from_json(read_json_file(o.config));
        if (!o.state.empty()) req.state_file = o.state;
        if (!o.basis.empty()) req.basis = o.basis;
        if (!o.alpha.empty()) {
          auto alphas = parse_alpha_list(o.alpha);
          if (alphas.size() != 1) throw ConfigError("eval takes a single --alpha");
          req.alpha = alphas.front();
        }
        if (!o.oracle.empty()) req.oracle = oracle_from_string(o.oracle);
        if (o.seed) req.optimizer.seed = *o.seed;
        return cmd_eval(req, std::cout, std::cerr);
      },
      std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewq: skew-information uncertainty relations and quantum correlations"};
  app.require_subcommand(1);
  Overrides o;

  auto* rep = app.add_subcommand("reproduce", "tabulate the bound curves of the worked examples");
  add_common(rep, o);
  rep->add_option("--example", o.example, "1, 2, 3 or custom");
  rep->add_option("--p-start", o.p_start);
  rep->add_option("--p-stop", o.p_stop);
  rep->add_option("--p-step", o.p_step);
  rep->add_option("--out", o.out, "output file (default stdout)");
  rep->add_option("--format", o.format, "csv or json");
  rep->add_option("--state", o.state, "state file for --example custom");

  auto* chk = app.add_subcommand("check", "run the randomized property campaign");
  add_common(chk, o);
  chk->add_option("--out", o.out, "report file (default stdout)");
  chk->add_option("--format", o.format, "csv or json");

  auto* ev = app.add_subcommand("eval", "evaluate all bounds for one state");
  add_common(ev, o);
  ev->add_option("--state", o.state, "state JSON file");
  ev->add_option("--basis", o.basis, "phi,psi from x, y, z, comp, fourier");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  if (rep->parsed()) return run_reproduce(o);
  if (chk->parsed()) return run_check_cmd(o);
  return run_eval_cmd(o);
}
