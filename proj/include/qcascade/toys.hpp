#pragma once

// Closed-form pedagogical models on explicitly constructed small blocks.
// Each toy is its own oracle: the analytic value is checked against a
// direct density-matrix simulation of the same block.

#include <string>

#include "qcascade/linalg.hpp"

namespace qcascade {

struct ToyResult {
  std::string label;
  double analytic = 0;
  double simulated = 0;
  double abs_error = 0;
};

// Population swap on a single spin: a state (1/2, C; C, 1/2) driven
// through a quarter rotation gains energy C*delta, paid as work.
ToyResult single_spin_rotation(double c, double delta = 1.0);

// Same swap inside the degenerate |ge>/<eg| block of two spins: heat
// C*delta moves from the first spin to the second at zero work cost.
ToyResult two_spin_swap(double c, double delta = 1.0);

// Two-step cascade through a mediator: the mediator's excited-level
// population shifts by lambda cos(alpha) sin(theta) sin(2 theta).
ToyResult phase_efficiency(double lambda, double alpha, double theta);

// Reversal threshold on the 2 lambda cos(alpha) axis when the subsystem
// (beta_s) and mediator (beta_m) temperatures differ; the simulated side
// locates the heat-flow sign flip with a small-angle scan.
ToyResult temperature_gradient_threshold(double beta_s, double beta_m,
                                         double delta = 1.0);

}  // namespace qcascade
