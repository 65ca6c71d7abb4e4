// geodesic: command-line driver for sweep-out, systole, shortening and
// certification runs.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "closedgeo/cli.hpp"
#include "closedgeo/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Closed geodesics by curve shortening and min-max sweep-outs"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Execute the run described by a JSON config");
  run->add_option("--config,-c", config_path, "Config file")->required();
  run->add_option("--set,-s", overrides, "Override a config field: dotted.key=value")
      ->allow_extra_args(false);
  run->add_flag("--quiet,-q", quiet, "Only report errors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  closedgeo::RunConfig cfg;
  try {
    cfg = closedgeo::load_config(config_path, overrides);
  } catch (const closedgeo::Error& e) {
    std::cerr << "geodesic: " << closedgeo::to_string(e.kind()) << " in " << e.where()
              << ": " << e.detail() << "\n";
    return 1;
  }

  const auto outcome = closedgeo::run(cfg);
  const auto& report = outcome.report;
  if (!report["error"].is_null()) {
    const auto& err = report["error"];
    std::cerr << "geodesic: " << err["kind"].get<std::string>() << " in "
              << err["where"].get<std::string>() << ": " << err["message"].get<std::string>()
              << "\n";
  }
  if (!quiet) {
    std::cout << "mode " << cfg.mode << ", status " << report.value("status", "") << ", exit "
              << outcome.exit_code << "\n";
    if (report.contains("result") && report["status"] != "FamilyCollapsed") {
      const auto& r = report["result"];
      if (r.contains("candidate_length")) {
        std::cout << "candidate length " << r["candidate_length"].get<double>() << "\n";
      } else if (r.contains("length")) {
        std::cout << "length " << r["length"].get<double>() << "\n";
      }
      if (r.contains("certified") && r["certified"].is_object()) {
        std::cout << "certified " << (r["certified"]["passed"].get<bool>() ? "yes" : "no")
                  << " (max defect " << r["certified"]["max_defect"].get<double>() << ")\n";
      }
    }
    std::cout << "outputs in " << outcome.output_dir.string() << "\n";
  }
  return outcome.exit_code;
}
