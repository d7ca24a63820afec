#pragma once

// Discrete dynamics engine: interaction unitaries, cascade or
// simultaneous collisions with bath refresh, and joint-state snapshots
// at sub-interaction resolution.

#include <utility>
#include <vector>

#include "qcascade/model.hpp"

namespace qcascade {

enum class Variant { cascade, simultaneous };

// The unitary generator: the full form includes the free terms
// H_k + H_R next to the exchange coupling; the interaction-only form is
// the bare coupling. Both conserve H_k + H_R; energies and populations of
// coherence-free states match exactly, coherences differ at O(delta*tau).
enum class GeneratorForm { full, interaction_only };

struct CollisionConfig {
  double g = 0;            // coupling
  double tau = 0;          // interaction time
  std::vector<int> order;  // permutation of 0..n-1
  Variant variant = Variant::cascade;
  int n_collisions = 1;    // 0 records the initial snapshot only
  GeneratorForm generator = GeneratorForm::full;

  void validate(int n) const;
};

struct Snapshot {
  int step = 0;       // sub-interaction count from trajectory start
  int collision = 0;  // which collision this snapshot belongs to
  DensityMatrix joint;        // system (+) current bath particle
  double bath_energy_cum = 0; // cumulative Delta E_R incl. discarded particles
};

struct TrajectoryRecord {
  SpinChainSpec spec;
  CollisionConfig config;
  std::vector<Snapshot> steps;

  int subs_per_collision() const {
    return config.variant == Variant::cascade ? spec.n : 1;
  }
  // Reduced system state at snapshot i (bath traced out).
  DensityMatrix system_state(std::size_t i) const;
  // Spin interacting during the sub-interaction that produced snapshot i
  // (i >= 1). For the simultaneous variant all spins interact; returns -1.
  int interacting_spin(std::size_t i) const;
};

// Exchange coupling g(sigma+_k sigma-_R + sigma-_k sigma+_R) on the
// (n+1)-qubit joint space, bath appended as factor n.
HermitianOperator interaction_hamiltonian(int k, int n, double g);

// U = exp(-i tau (H_k + H_R + H_kR)) (or the interaction-only variant).
Matrix interaction_unitary(int k, const SpinChainSpec& spec,
                           const CollisionConfig& config);

// One collision: fresh thermal bath attached, sub-interactions applied in
// order (or one joint unitary for the simultaneous variant). Returns the
// reduced system state and the joint-state snapshots.
std::pair<DensityMatrix, std::vector<Snapshot>> run_collision(
    const DensityMatrix& state_S, const SpinChainSpec& spec,
    const CollisionConfig& config);

// n_collisions repetitions with bath refresh; cumulative bath energy is
// accumulated across the discarded particles (refresh itself is costless).
TrajectoryRecord run_trajectory(const SpinChainSpec& spec,
                                const CoherenceSpec& coh,
                                const CollisionConfig& config);

}  // namespace qcascade
