// Batch front-end for the spin-chain workbench: reads a JSON job
// description, runs the requested tasks, writes a JSON or CSV report.
//
//   spinbench_cli run      --config job.json --out report.json
//   spinbench_cli solve    --config job.json --seed 7
//   spinbench_cli spectrum --config job.json --format csv
//
// Exit codes: 0 success, 1 at least one check failed (report still
// written), 2 configuration or schema error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "spinbench/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"closed-spin-chain workbench"};
  app.require_subcommand(0, 1);
  app.fallthrough();  // options may follow the subcommand

  std::string config_path;
  std::string out_path = "report.json";
  std::string format = "json";
  double tol = -1.0;
  long long seed = -1;

  app.add_option("--config", config_path, "job description (JSON)")
      ->required();
  app.add_option("--out", out_path, "report path");
  app.add_option("--format", format, "json or csv");
  app.add_option("--tol", tol, "verification tolerance override");
  app.add_option("--seed", seed, "solver rng seed override");

  const std::vector<std::string> task_names{"check", "solve", "verify",
                                            "vector", "spectrum"};
  for (const auto& name : task_names)
    app.add_subcommand(name, "run only the '" + name + "' task");
  app.add_subcommand("run", "run the task list from the config");

  CLI11_PARSE(app, argc, argv);

  nlohmann::json config;
  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open config '" << config_path << "'\n";
      return 2;
    }
    config = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON config: " << e.what() << "\n";
    return 2;
  }

  for (const auto& name : task_names)
    if (app.get_subcommand(name)->parsed()) config["tasks"] = {name};
  if (tol > 0) config["tol"] = tol;
  if (seed >= 0) config["solver"]["rng_seed"] = seed;

  try {
    const spinbench::JobResult result = spinbench::run(config);
    spinbench::emit_report(result.report, format, out_path);
    if (!result.all_pass) {
      std::cerr << "one or more checks failed; see " << out_path << "\n";
      return 1;
    }
    return 0;
  } catch (const spinbench::JobConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
