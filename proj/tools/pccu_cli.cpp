// Command-line front end: run catalog examples or JSON configs.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pccu/pccu.hpp"

namespace {

std::vector<double> parse_times(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw pccu::ConfigError("bad snapshot time '" + item + "'");
    }
  }
  return out;
}

pccu::RunConfig resolve(const std::string& target) {
  if (pccu::in_catalog(target)) return pccu::catalog_config(target);
  return pccu::load_config(target);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central-upwind finite-volume solver for multifluid and thermal shallow water flows"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the built-in examples");
  auto* show = app.add_subcommand("config", "Print the JSON config of a built-in example");
  std::string show_name;
  show->add_option("example", show_name, "Example name")->required();

  auto* run = app.add_subcommand("run", "Run a built-in example or a JSON config file");
  std::string target, scheme, out, snapshots;
  std::optional<int> nx, ny, refine;
  std::optional<double> theta, cfl, tfinal;
  bool compare = false;
  run->add_option("target", target, "Example name (see `list`) or path to a config file")->required();
  run->add_option("--scheme", scheme, "pccu, lcd or both")
      ->check(CLI::IsMember({"pccu", "lcd", "both"}));
  run->add_option("--nx", nx, "Cells in x");
  run->add_option("--ny", ny, "Cells in y");
  run->add_option("--theta", theta, "Minmod parameter in [1, 2]");
  run->add_option("--cfl", cfl, "CFL number");
  run->add_option("--tfinal", tfinal, "Final time");
  run->add_option("--out", out, "Output directory");
  run->add_option("--snapshots", snapshots, "Comma-separated output times");
  run->add_flag("--compare", compare, "Run both schemes and write difference norms");
  run->add_option("--refine", refine, "Multiply the resolution by this factor")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& [name, entry] : pccu::catalog()) std::cout << name << "  " << entry.first << '\n';
      return 0;
    }
    if (*show) {
      std::cout << pccu::to_json(pccu::catalog_config(show_name)).dump(2) << '\n';
      return 0;
    }

    pccu::RunConfig cfg = resolve(target);
    if (!scheme.empty()) cfg.scheme = scheme;
    if (compare) cfg.scheme = "both";
    if (nx) cfg.nx = *nx;
    if (ny) cfg.ny = *ny;
    if (refine) {
      cfg.nx *= *refine;
      if (cfg.dimension == 2) cfg.ny *= *refine;
    }
    if (theta) cfg.theta = *theta;
    if (cfl) cfg.cfl = *cfl;
    if (tfinal) {
      cfg.t_final = *tfinal;
      std::erase_if(cfg.snapshots, [&](double s) { return s > cfg.t_final; });
    }
    if (!snapshots.empty()) cfg.snapshots = parse_times(snapshots);
    if (!out.empty()) cfg.output.dir = out;
    cfg.validate();

    const pccu::ExecutionResult result = pccu::execute(cfg, std::cout);
    return result.exit_code();
  } catch (const pccu::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const pccu::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
