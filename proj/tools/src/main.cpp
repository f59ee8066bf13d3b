#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "biphasic_app/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Steady biphasic tissue solver and well-posedness checks"};
  app.require_subcommand(1);
  std::string config;
  const char* names[][2] = {
      {"check-params", "Evaluate the well-posedness inequalities"},
      {"solve", "Solve and write fields, Picard history and a summary"},
      {"mms", "Manufactured-solution convergence rates"},
      {"coercivity", "Sample the energy pairing on random triples"},
      {"dependence", "Continuous dependence on perturbed data"},
      {"truncation", "Truncation continuation for unbounded resistivity"},
  };
  for (const auto& [name, help] : names) {
    app.add_subcommand(name, help)->add_option("config", config, "JSON run configuration")->required();
  }
  CLI11_PARSE(app, argc, argv);
  return biphasic::app::run(app.get_subcommands().front()->get_name(), config, std::cout, std::cerr);
}
