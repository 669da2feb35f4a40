#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nrtlab/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nrtlab: no-response-test experiments for the annulus cavity problem"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> R;
  std::optional<double> eps;
  bool strict = false;

  for (const std::string& name : nrtlab::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "JSON experiment config")->required();
    sub->add_flag("--strict", strict, "treat Inconclusive or refused verdicts as failures");
    sub->add_option("--out", out, "output directory (overrides the config)");
    sub->add_option("--seed", seed, "seed for randomized checks (overrides the config)");
    sub->add_option("--R", R, "outer radius (overrides the config)");
    sub->add_option("--eps", eps, "constraint level eps (overrides the config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  const std::string experiment = app.get_subcommands().front()->get_name();

  nrtlab::ExperimentConfig config;
  try {
    config = nrtlab::load_config(config_path);
    if (out) config.out = *out;
    if (seed) config.seed = *seed;
    if (R) config.R = *R;
    if (eps) config.eps = *eps;
    nrtlab::validate(config);
  } catch (const nrtlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  nrtlab::RunReport report;
  try {
    report = nrtlab::run_experiment(experiment, config, {strict});
  } catch (const nrtlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nrtlab::PreconditionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nrtlab::SingularPointError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAssertion;
  }

  try {
    nrtlab::write_outputs(report, config.out);
  } catch (const std::exception& e) {
    std::cerr << "error: cannot write outputs: " << e.what() << '\n';
    return kExitConfig;
  }

  for (const auto& w : report.warnings) std::cout << "warning: " << w << '\n';
  for (const auto& f : report.failures) std::cout << "FAIL: " << f << '\n';
  std::cout << experiment << ": " << report.verdict << " (" << report.wall_seconds << " s)\n";
  std::cout << "wrote " << config.out << '/' << experiment << ".{csv,json,svg}\n";
  return report.passed() ? kExitOk : kExitAssertion;
}
