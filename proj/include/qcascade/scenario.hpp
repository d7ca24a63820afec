#pragma once

// Scenario configs, CSV emission and the operations behind the CLI
// subcommands (run, sweep, audit, compare).

#include <string>
#include <vector>

#include "qcascade/batch.hpp"
#include "qcascade/lindblad.hpp"
#include "qcascade/toys.hpp"

namespace qcascade {

enum class EngineChoice { collision, lindblad, both };

// Validated scenario. Configs are JSON documents with a strict schema;
// unknown keys are rejected. Spin indices and interaction orders are
// 1-based in the file, 0-based internally.
struct ScenarioConfig {
  std::string name;
  SpinChainSpec spec;
  CoherenceSpec coherence;
  CollisionConfig collision;
  EngineChoice engine = EngineChoice::collision;
  std::vector<std::string> outputs;  // empty = all observable groups
  double dt = 0;                     // lindblad step; 0 means tau/10
};

ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);

// Locale-independent fixed-precision number formatting (12 significant
// digits) shared by every CSV writer.
std::string format_number(double v);

// Full observable table of a collision trajectory, one row per
// sub-interaction snapshot.
std::string trajectory_csv(const ScenarioConfig& cfg);
// Master-equation counterpart sampled at collision boundaries. The bath
// is not represented explicitly, so Q is booked as -sum_k dE_k and the
// I_SR cells stay empty.
std::string lindblad_csv(const ScenarioConfig& cfg);

struct RunOutput {
  std::vector<std::string> files;
  std::string summary;
};
RunOutput run_scenario(const ScenarioConfig& cfg, const std::string& out_dir,
                       bool quiet);

struct SweepRequest {
  enum class Axis { lambda, alpha, tau, order };
  Axis axis = Axis::lambda;
  std::vector<double> values;            // lambda/alpha/tau axes
  std::vector<std::vector<int>> orders;  // order axis (0-based)
};
SweepRequest parse_sweep_values(const std::string& axis,
                                const std::string& values, int n);

// One row of terminal observables per requested value, in input order.
std::string sweep_csv(const ScenarioConfig& cfg, const SweepRequest& req,
                      Execution exec);

struct AuditReport {
  std::vector<InequalityAudit> audits;
  bool all_satisfied = true;
  std::string text;
};
AuditReport audit_scenario(const ScenarioConfig& cfg);

struct CompareReport {
  double max_discrepancy = 0;   // collision vs lindblad at tau
  double max_discrepancy_half = 0;  // at tau/2, fixed g^2 tau
  double ratio = 0;             // first / second, ~2 for O(tau) convergence
  std::string text;
};
CompareReport compare_scenario(const ScenarioConfig& cfg);

}  // namespace qcascade
