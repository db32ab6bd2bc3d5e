// Command-line experiment runner: evaluates contour-quadrature error
// budgets, propagates observables of the example systems, and emits the
// study CSVs. Exit codes: 0 success, 2 configuration error, 3 numerical
// failure.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "sgquad/experiments.hpp"

namespace {

int dispatch(const std::string& command, const std::string& config_path,
             const std::string& out_dir, int workers) {
  using namespace sgq;
  Config cfg = config_path.empty() ? Config::parse_text("")
                                   : Config::parse_file(config_path);
  if (command == "plan") {
    experiments::cmd_plan(cfg, std::cout);
    return 0;
  }
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  if (command == "bounds")
    written = experiments::cmd_bounds(cfg, out_dir);
  else if (command == "run")
    written = experiments::cmd_run(cfg, out_dir, workers);
  else if (command == "converge")
    written = experiments::cmd_converge(cfg, out_dir, workers);
  else if (command == "contour-cost")
    written = experiments::cmd_contour_cost(cfg, out_dir);
  for (const auto& path : written) std::cout << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contour-quadrature semigroup experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  int workers = 1;
  app.add_option("--config", config_path, "Experiment config file");
  app.add_option("--out", out_dir, "Output directory for CSV files");
  app.add_option("--workers", workers, "Worker threads for resolvent solves")
      ->check(CLI::PositiveNumber);

  for (const char* name : {"bounds", "run", "converge", "contour-cost", "plan"})
    app.add_subcommand(name);

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, config_path, out_dir, workers);
  } catch (const sgq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
