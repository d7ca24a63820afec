#include "qcascade/collision.hpp"

#include <algorithm>
#include <cmath>

namespace qcascade {

void CollisionConfig::validate(int n) const {
  if (!std::isfinite(g) || !std::isfinite(tau) || !std::isfinite(g * tau))
    throw validation_error("CollisionConfig: g*tau must be finite");
  if (n_collisions < 0)
    throw validation_error("CollisionConfig: n_collisions must be >= 0");
  if (static_cast<int>(order.size()) != n)
    throw validation_error("CollisionConfig: order must have n entries");
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i)
      throw validation_error("CollisionConfig: order is not a permutation");
}

DensityMatrix TrajectoryRecord::system_state(std::size_t i) const {
  std::vector<int> keep(spec.n);
  for (int k = 0; k < spec.n; ++k) keep[k] = k;
  return partial_trace(steps.at(i).joint, keep);
}

int TrajectoryRecord::interacting_spin(std::size_t i) const {
  if (i == 0 || config.variant == Variant::simultaneous) return -1;
  return config.order[(i - 1) % spec.n];
}

namespace {

Matrix embed(const Matrix& op, int k, int total) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < total; ++i)
    out = tensor_product(out, i == k ? op : identity(2));
  return out;
}

}  // namespace

HermitianOperator interaction_hamiltonian(int k, int n, double g) {
  if (k < 0 || k >= n)
    throw validation_error("interaction_hamiltonian: index out of range");
  const int total = n + 1;  // bath appended as factor n
  Matrix h = g * (embed(sigma_plus(), k, total) * embed(sigma_minus(), n, total) +
                  embed(sigma_minus(), k, total) * embed(sigma_plus(), n, total));
  return HermitianOperator(std::move(h));
}

Matrix interaction_unitary(int k, const SpinChainSpec& spec,
                           const CollisionConfig& config) {
  Matrix h = interaction_hamiltonian(k, spec.n, config.g).matrix();
  if (config.generator == GeneratorForm::full) {
    h += local_hamiltonian(spec, k, spec.n + 1).matrix();
    h += local_hamiltonian(spec, spec.n, spec.n + 1).matrix();
  }
  return unitary_exp_raw(h, config.tau);
}

namespace {

Matrix simultaneous_unitary(const SpinChainSpec& spec,
                            const CollisionConfig& config) {
  const int total = spec.n + 1;
  Eigen::Index d = Eigen::Index(1) << total;
  Matrix h = Matrix::Zero(d, d);
  for (int k = 0; k < spec.n; ++k)
    h += interaction_hamiltonian(k, spec.n, config.g).matrix();
  if (config.generator == GeneratorForm::full)
    h += chain_hamiltonian(spec, total).matrix();
  return unitary_exp_raw(h, config.tau);
}

struct Engine {
  SpinChainSpec spec;
  CollisionConfig config;
  Matrix h_bath;
  Matrix bath;  // fresh thermal particle
  std::vector<Matrix> unitaries;  // indexed by spin (cascade) or [0] (simultaneous)

  Engine(const SpinChainSpec& s, const CollisionConfig& c) : spec(s), config(c) {
    spec.validate();
    config.validate(spec.n);
    if (spec.n + 1 > 6)
      throw validation_error("collision engine: joint dimension exceeds 64");
    h_bath = local_hamiltonian(spec, spec.n, spec.n + 1).matrix();
    bath = thermal_qubit(spec.beta_bath, spec.delta).matrix();
    if (config.variant == Variant::cascade) {
      unitaries.resize(spec.n);
      for (int k = 0; k < spec.n; ++k)
        unitaries[k] = interaction_unitary(k, spec, config);
    } else {
      unitaries.push_back(simultaneous_unitary(spec, config));
    }
  }

  double bath_energy(const Matrix& joint) const {
    return (joint * h_bath).trace().real();
  }

  // Runs one collision starting from rho_S; appends snapshots and
  // returns the post-collision joint state.
  Matrix collide(const Matrix& rho_S, int collision_index, int& step,
                 double q_before, std::vector<Snapshot>& out) const {
    Matrix joint = tensor_product(rho_S, bath);
    const double e0 = bath_energy(joint);
    auto record = [&](const Matrix& j) {
      out.push_back(Snapshot{++step, collision_index,
                             DensityMatrix::qubits(spec.n + 1, j),
                             q_before + (bath_energy(j) - e0)});
    };
    if (config.variant == Variant::cascade) {
      for (int k : config.order) {
        joint = unitaries[k] * joint * unitaries[k].adjoint();
        record(joint);
      }
    } else {
      joint = unitaries[0] * joint * unitaries[0].adjoint();
      record(joint);
    }
    return joint;
  }
};

std::vector<int> system_indices(int n) {
  std::vector<int> keep(n);
  for (int k = 0; k < n; ++k) keep[k] = k;
  return keep;
}

}  // namespace

std::pair<DensityMatrix, std::vector<Snapshot>> run_collision(
    const DensityMatrix& state_S, const SpinChainSpec& spec,
    const CollisionConfig& config) {
  if (state_S.dim() != (Eigen::Index(1) << spec.n))
    throw validation_error("run_collision: state dimension mismatch");
  Engine engine(spec, config);
  std::vector<Snapshot> snaps;
  int step = 0;
  Matrix joint = engine.collide(state_S.matrix(), 0, step, 0.0, snaps);
  Matrix reduced = partial_trace_raw(
      joint, std::vector<Eigen::Index>(spec.n + 1, 2), system_indices(spec.n));
  return {DensityMatrix::qubits(spec.n, std::move(reduced)), std::move(snaps)};
}

TrajectoryRecord run_trajectory(const SpinChainSpec& spec,
                                const CoherenceSpec& coh,
                                const CollisionConfig& config) {
  Engine engine(spec, config);
  DensityMatrix rho_S = initial_state(spec, coh);

  TrajectoryRecord traj{spec, config, {}};
  traj.steps.reserve(1 + config.n_collisions *
                             (config.variant == Variant::cascade ? spec.n : 1));
  Matrix joint0 = tensor_product(rho_S.matrix(), engine.bath);
  traj.steps.push_back(
      Snapshot{0, 0, DensityMatrix::qubits(spec.n + 1, joint0), 0.0});

  int step = 0;
  double q_cum = 0;
  Matrix rho = rho_S.matrix();
  const auto keep = system_indices(spec.n);
  const std::vector<Eigen::Index> joint_dims(spec.n + 1, 2);
  for (int c = 0; c < config.n_collisions; ++c) {
    Matrix joint = engine.collide(rho, c, step, q_cum, traj.steps);
    q_cum = traj.steps.back().bath_energy_cum;
    rho = partial_trace_raw(joint, joint_dims, keep);  // bath refresh
  }
  return traj;
}

}  // namespace qcascade
