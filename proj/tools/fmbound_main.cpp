#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli_config.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  fmbound::cli::Overrides overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "JSON config file")->required();
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&args](std::uint64_t v) { args.overrides.seed = v; },
      "override the experiment seed");
  cmd->add_option_function<std::string>(
      "--out", [&args](const std::string& v) { args.overrides.out = v; },
      "output file path (default: stdout)");
  cmd->add_option_function<std::string>(
      "--format", [&args](const std::string& v) { args.overrides.format = v; },
      "output format: json or csv");
  cmd->add_option_function<int>(
      "--jobs", [&args](int v) { args.overrides.jobs = v; }, "trial parallelism");
  cmd->add_option_function<int>(
      "--trials", [&args](int v) { args.overrides.trials = v; }, "override trial count");
}

int dispatch(const std::string& name, const CommonArgs& args) {
  const nlohmann::json config = fmbound::cli::load_config(args.config_path);
  if (name == "mu") return fmbound::cli::cmd_mu(config, args.overrides);
  if (name == "bound") return fmbound::cli::cmd_bound(config, args.overrides);
  return fmbound::cli::cmd_verify(config, args.overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fmbound: generalized singular numbers, Lorentz norms and L^p->L^q "
      "multiplier bound verification on desk-scale group models"};
  app.require_subcommand(1);

  CommonArgs mu_args, bound_args, verify_args;
  CLI::App* mu = app.add_subcommand("mu", "print the singular number step function of a symbol");
  add_common(mu, mu_args);
  CLI::App* bound =
      app.add_subcommand("bound", "evaluate the level-set / compact d^2 bound functional");
  add_common(bound, bound_args);
  CLI::App* verify =
      app.add_subcommand("verify", "run a seeded verification experiment and write its report");
  add_common(verify, verify_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a configuration error
  }

  const std::string name = mu->parsed() ? "mu" : (bound->parsed() ? "bound" : "verify");
  const CommonArgs& args = mu->parsed() ? mu_args : (bound->parsed() ? bound_args : verify_args);

  try {
    return dispatch(name, args);
  } catch (const fmbound::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fmbound::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const fmbound::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
