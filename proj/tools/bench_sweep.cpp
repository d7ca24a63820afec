// Benchmark: serial reference vs OpenMP fan-out on a lambda sweep.

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qcascade/scenario.hpp"

using namespace qcascade;

namespace {

ScenarioConfig benchmark_scenario(int n_collisions) {
  ScenarioConfig cfg;
  cfg.name = "bench";
  cfg.spec.n = 3;
  cfg.spec.delta = 1.0;
  cfg.spec.betas = {1.0, 1.0, 1.0};
  cfg.spec.beta_bath = 1.0 / 0.9;
  for (int p = 0; p < 3; ++p)
    for (int q = p + 1; q < 3; ++q)
      cfg.coherence.terms.push_back({p, q, 0.5, M_PI});
  cfg.collision.g = 20.0;
  cfg.collision.tau = 0.01;
  cfg.collision.order = {0, 1, 2};
  cfg.collision.n_collisions = n_collisions;
  return cfg;
}

double time_ms(Execution exec, const ScenarioConfig& cfg,
               const SweepRequest& req) {
  auto t0 = std::chrono::steady_clock::now();
  std::string csv = sweep_csv(cfg, req, exec);
  auto t1 = std::chrono::steady_clock::now();
  if (csv.empty()) std::cerr << "unexpected empty sweep\n";
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int n_values = argc > 1 ? std::atoi(argv[1]) : 64;
  int n_collisions = argc > 2 ? std::atoi(argv[2]) : 100;

  ScenarioConfig cfg = benchmark_scenario(n_collisions);
  SweepRequest req;
  req.axis = SweepRequest::Axis::lambda;
  for (int i = 0; i < n_values; ++i)
    req.values.push_back(0.5 * i / std::max(1, n_values - 1));

#ifdef _OPENMP
  std::cout << "threads available: " << omp_get_max_threads() << "\n";
#else
  std::cout << "built without OpenMP; both paths run serially\n";
#endif
  std::cout << "sweep of " << n_values << " lambda values, "
            << n_collisions << " collisions each\n";

  // verify the two paths agree byte for byte before timing
  std::string serial_csv = sweep_csv(cfg, req, Execution::serial);
  std::string parallel_csv = sweep_csv(cfg, req, Execution::parallel);
  if (serial_csv != parallel_csv) {
    std::cerr << "FAIL: parallel sweep output differs from serial\n";
    return 1;
  }
  std::cout << "parallel output identical to serial: yes\n";

  double serial_ms = time_ms(Execution::serial, cfg, req);
  double parallel_ms = time_ms(Execution::parallel, cfg, req);
  std::cout << "serial:   " << serial_ms << " ms\n"
            << "parallel: " << parallel_ms << " ms\n"
            << "speedup:  " << serial_ms / parallel_ms << "x\n";
  return 0;
}
