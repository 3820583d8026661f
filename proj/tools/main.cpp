#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace rsw::cli;

  CLI::App app{"Exact solutions and verification for radial pressureless Euler shadow waves"};
  app.require_subcommand(1, 1);

  std::string config;
  std::string out_dir;
  using Command = int (*)(const Scenario&, std::ostream&);
  const std::map<std::string, std::pair<Command, const char*>> commands{
      {"solve", {cmd_solve, "write the wave plan as JSON"}},
      {"sample", {cmd_sample, "sample the solution on an (r, t) grid as CSV"}},
      {"verify", {cmd_verify, "run entropy, conservation and weak-residual checks"}},
      {"oracle", {cmd_oracle, "compare against the sticky-particle simulation"}},
      {"example64", {cmd_example64, "trace and check the non-entropic example"}},
  };
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.second);
    sub->add_option("--config", config, "scenario file (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Scenario s = load_scenario(config, name != "example64");
    if (!out_dir.empty()) s.out_dir = out_dir;
    return commands.at(name).first(s, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const rsw::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailure;
  }
}
