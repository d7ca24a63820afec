// CLI for the cascade collision simulator: run, sweep, audit, compare,
// toy. Exit codes: 0 ok, 2 config/parse error, 3 validation error,
// 4 numerical tolerance breach, 5 audit failure.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qcascade/scenario.hpp"

namespace {

using namespace qcascade;

int cmd_run(const std::string& config, const std::string& out_dir,
            const std::string& engine, bool quiet) {
  ScenarioConfig cfg = load_scenario(config);
  if (engine == "collision")
    cfg.engine = EngineChoice::collision;
  else if (engine == "lindblad")
    cfg.engine = EngineChoice::lindblad;
  else if (engine == "both")
    cfg.engine = EngineChoice::both;
  else if (!engine.empty())
    throw parse_error("--engine must be collision|lindblad|both");
  RunOutput out = run_scenario(cfg, out_dir, quiet);
  if (!quiet) std::cout << out.summary;
  return 0;
}

int cmd_sweep(const std::string& config, const std::string& axis,
              const std::string& values, const std::string& out_dir,
              bool serial, bool quiet) {
  ScenarioConfig cfg = load_scenario(config);
  SweepRequest req = parse_sweep_values(axis, values, cfg.spec.n);
  std::string body =
      sweep_csv(cfg, req, serial ? Execution::serial : Execution::parallel);
  std::filesystem::create_directories(out_dir);
  std::filesystem::path p =
      std::filesystem::path(out_dir) / (cfg.name + "_sweep_" + axis + ".csv");
  std::ofstream f(p, std::ios::binary);
  if (!f) throw validation_error("cannot write " + p.string());
  f << body;
  if (!quiet) std::cout << "wrote " << p.string() << "\n";
  return 0;
}

int cmd_audit(const std::string& config, bool quiet) {
  ScenarioConfig cfg = load_scenario(config);
  AuditReport report = audit_scenario(cfg);
  if (!quiet) std::cout << report.text;
  return report.all_satisfied ? 0 : 5;
}

int cmd_compare(const std::string& config, bool quiet) {
  ScenarioConfig cfg = load_scenario(config);
  CompareReport report = compare_scenario(cfg);
  if (!quiet) std::cout << report.text;
  return 0;
}

void print_toy(const ToyResult& r) {
  std::cout << r.label << ": analytic=" << format_number(r.analytic)
            << " simulated=" << format_number(r.simulated)
            << " abs_error=" << format_number(r.abs_error) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cascade collision-model simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config, out_dir = ".", engine;
  std::string axis, values;
  bool quiet = false, serial = false;
  long long seed = 0;  // reserved; the dynamics are deterministic
  app.add_flag("--quiet", quiet, "suppress report output");
  app.add_option("--seed", seed, "reserved (dynamics are deterministic)");

  auto* run = app.add_subcommand("run", "run a scenario, emit CSV");
  run->add_option("--config", config, "scenario config path")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--engine", engine, "collision|lindblad|both");

  auto* sweep = app.add_subcommand("sweep", "sweep one axis, emit CSV");
  sweep->add_option("--config", config, "scenario config path")->required();
  sweep->add_option("--axis", axis, "lambda|alpha|tau|order")->required();
  sweep->add_option("--values", values,
                    "comma list; for order: 1-2-3,3-2-1 or \"all\"")
      ->required();
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_flag("--serial", serial, "disable the parallel fan-out");

  auto* audit = app.add_subcommand("audit", "resource-inequality audit");
  audit->add_option("--config", config, "scenario config path")->required();

  auto* compare =
      app.add_subcommand("compare", "collision vs master-equation report");
  compare->add_option("--config", config, "scenario config path")->required();

  auto* toy = app.add_subcommand("toy", "closed-form toy models");
  std::string toy_name;
  double c_value = 0.3, lambda = 0.2, alpha = 0.0, theta = 0.5;
  double beta_s = 1.0, beta_m = 1.0 / 0.9;
  toy->add_option("name", toy_name,
                  "single_spin|two_spin_swap|phase|threshold")
      ->required();
  toy->add_option("--C", c_value, "coherence magnitude (swap toys)");
  toy->add_option("--lambda", lambda, "coherence strength (phase toy)");
  toy->add_option("--alpha", alpha, "coherence phase");
  toy->add_option("--theta", theta, "rotation angle (phase toy)");
  toy->add_option("--beta-s", beta_s, "subsystem inverse temperature");
  toy->add_option("--beta-m", beta_m, "mediator inverse temperature");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(config, out_dir, engine, quiet);
    if (*sweep) return cmd_sweep(config, axis, values, out_dir, serial, quiet);
    if (*audit) return cmd_audit(config, quiet);
    if (*compare) return cmd_compare(config, quiet);
    if (*toy) {
      if (toy_name == "single_spin")
        print_toy(qcascade::single_spin_rotation(c_value));
      else if (toy_name == "two_spin_swap")
        print_toy(qcascade::two_spin_swap(c_value));
      else if (toy_name == "phase")
        print_toy(qcascade::phase_efficiency(lambda, alpha, theta));
      else if (toy_name == "threshold")
        print_toy(qcascade::temperature_gradient_threshold(beta_s, beta_m));
      else
        throw qcascade::parse_error("unknown toy \"" + toy_name + "\"");
      return 0;
    }
  } catch (const qcascade::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qcascade::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qcascade::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
