#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kansa/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Kansa RBF collocation for the Poisson equation with Dirichlet data"};
  app.require_subcommand(1);

  kansa::cli::CommandOptions options;
  std::uint64_t seed = 0;
  std::string output;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", options.config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Overrides the configured seed");
    sub->add_option("--output", output, "Overrides the configured output directory");
    sub->add_option("--threads", options.threads, "Worker cap for the harness (0: all cores)")
        ->check(CLI::NonNegativeNumber);
  };
  add_common(app.add_subcommand("solve", "Assemble and solve the configured problem"));
  add_common(app.add_subcommand("experiment", "Run the configured experiment"));
  add_common(app.add_subcommand("kernel-check", "Check the kernel's admissibility conditions"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kansa::cli::kExitConfigError;
  }

  const CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--seed") > 0) options.seed = seed;
  if (sub->count("--output") > 0) options.output_dir = output;
  return kansa::cli::run_command(sub->get_name(), options, std::cout, std::cerr);
}
