#include "doctest.h"
#include "qcascade/collision.hpp"
#include "qcascade/thermo.hpp"

using namespace qcascade;

namespace {

SpinChainSpec spec_equal(int n, double beta = 1.0,
                         double beta_bath = 1.0 / 0.9) {
  return SpinChainSpec{n, 1.0, std::vector<double>(n, beta), beta_bath};
}

CollisionConfig fig3_config(int n, int n_collisions) {
  CollisionConfig c;
  c.g = 20.0;
  c.tau = 0.01;
  for (int k = 0; k < n; ++k) c.order.push_back(k);
  c.n_collisions = n_collisions;
  return c;
}

CoherenceSpec uniform_coherence(int n, double lambda, double alpha) {
  CoherenceSpec coh;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) coh.terms.push_back({p, q, lambda, alpha});
  return coh;
}

double joint_pair_energy(const SpinChainSpec& spec, const Matrix& joint,
                         int k) {
  Matrix h = local_hamiltonian(spec, k, spec.n + 1).matrix() +
             local_hamiltonian(spec, spec.n, spec.n + 1).matrix();
  return (joint * h).trace().real();
}

}  // namespace

TEST_CASE("interaction hamiltonian structure") {
  HermitianOperator h = interaction_hamiltonian(0, 1, 20.0);
  // joint basis (ee, eg, ge, gg): coupling connects |ge> and |eg>
  CHECK(h.matrix()(2, 1).real() == doctest::Approx(20.0));
  CHECK(h.matrix()(1, 2).real() == doctest::Approx(20.0));
  CHECK(h.matrix().cwiseAbs().sum() == doctest::Approx(40.0));

  SpinChainSpec s = spec_equal(1);
  Matrix free = local_hamiltonian(s, 0, 2).matrix() +
                local_hamiltonian(s, 1, 2).matrix();
  Matrix comm = h.matrix() * free - free * h.matrix();
  CHECK(comm.cwiseAbs().maxCoeff() < 1e-12);

  Spectrum sp = herm_eig_raw(h.matrix());
  CHECK(sp.eigenvalues[0] == doctest::Approx(20.0).epsilon(1e-13));
  CHECK(sp.eigenvalues[3] == doctest::Approx(-20.0).epsilon(1e-13));

  CHECK_THROWS_AS(interaction_hamiltonian(1, 1, 5.0), validation_error);
}

TEST_CASE("interaction unitary closed forms") {
  SpinChainSpec s = spec_equal(1);
  CollisionConfig c = fig3_config(1, 1);

  c.tau = 0.0;
  CHECK((interaction_unitary(0, s, c) - identity(4)).cwiseAbs().maxCoeff() <
        1e-14);

  // g tau = pi/2 swaps the exchange block up to free-evolution phases
  c.tau = M_PI / 2 / 20.0;
  Matrix u = interaction_unitary(0, s, c);
  CHECK(std::abs(u(1, 1)) < 1e-12);
  CHECK(std::abs(u(2, 2)) < 1e-12);
  CHECK(std::abs(u(1, 2)) == doctest::Approx(1.0).epsilon(1e-12));

  // paper values: transfer probability sin^2(0.2) per interaction
  c.tau = 0.01;
  u = interaction_unitary(0, s, c);
  CHECK(std::abs(u(1, 2)) * std::abs(u(1, 2)) ==
        doctest::Approx(0.039469502998557).epsilon(1e-12));
  CHECK((u.adjoint() * u - identity(4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("global thermal equilibrium is a fixed point") {
  SpinChainSpec s = spec_equal(2, 1.0, 1.0);  // T_k = T_R
  CollisionConfig c = fig3_config(2, 1);
  DensityMatrix rho = initial_state(s, {});
  auto [after, snaps] = run_collision(rho, s, c);
  CHECK((after.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(snaps.size() == 2);
}

TEST_CASE("per-sub-interaction energy conservation") {
  SpinChainSpec s = spec_equal(3);
  CollisionConfig c = fig3_config(3, 5);
  for (double lambda : {0.0, 0.5}) {
    TrajectoryRecord traj =
        run_trajectory(s, uniform_coherence(3, lambda, M_PI), c);
    for (std::size_t i = 1; i < traj.steps.size(); ++i) {
      int k = traj.interacting_spin(i);
      double before = joint_pair_energy(s, traj.steps[i - 1].joint.matrix(), k);
      double after = joint_pair_energy(s, traj.steps[i].joint.matrix(), k);
      // compare within the same collision; across a refresh the bath
      // particle is replaced, so recompute from the fresh product
      if ((i - 1) % 3 == 0 && i > 1) {
        Matrix fresh = tensor_product(
            traj.system_state(i - 1).matrix(),
            thermal_qubit(s.beta_bath, s.delta).matrix());
        before = joint_pair_energy(s, fresh, k);
      }
      CHECK(std::abs(after - before) < 1e-12);
    }
  }
}

TEST_CASE("reversed bath energy flow appears within the first collision") {
  SpinChainSpec s = spec_equal(3);
  CollisionConfig c = fig3_config(3, 1);
  TrajectoryRecord traj =
      run_trajectory(s, uniform_coherence(3, 0.5, M_PI), c);
  CHECK(traj.steps.back().bath_energy_cum < 0.0);
}

TEST_CASE("snapshot bookkeeping") {
  SpinChainSpec s = spec_equal(2);
  CollisionConfig c = fig3_config(2, 7);
  TrajectoryRecord traj = run_trajectory(s, {}, c);
  CHECK(traj.steps.size() == 1 + 7 * 2);
  CHECK(traj.steps.front().step == 0);
  CHECK(traj.steps.back().step == 14);
  CHECK(traj.steps.back().collision == 6);

  c.variant = Variant::simultaneous;
  TrajectoryRecord sim = run_trajectory(s, {}, c);
  CHECK(sim.steps.size() == 1 + 7);

  c.variant = Variant::cascade;
  c.n_collisions = 0;
  TrajectoryRecord empty = run_trajectory(s, {}, c);
  CHECK(empty.steps.size() == 1);
}

TEST_CASE("coherence-free relaxation is monotone toward the bath") {
  SpinChainSpec s = spec_equal(3);
  CollisionConfig c = fig3_config(3, 100);
  TrajectoryRecord traj = run_trajectory(s, {}, c);
  double e_bath = -0.252336198860928;  // thermal energy at T = 0.9 delta
  for (int k = 0; k < 3; ++k) {
    double prev = subsystem_energy(traj.system_state(0), s, k);
    for (std::size_t i = 3; i < traj.steps.size(); i += 3) {
      double cur = subsystem_energy(traj.system_state(i), s, k);
      CHECK(cur <= prev + 1e-14);
      prev = cur;
    }
    CHECK(prev > e_bath - 1e-6);
    CHECK(prev < e_bath + 0.01);
  }
}

TEST_CASE("interaction order flips the second spin's energy change") {
  SpinChainSpec s = spec_equal(3);
  CoherenceSpec coh{{{0, 1, 0.5, M_PI}, {0, 2, 0.1, M_PI}, {1, 2, 0.5, 0.0}}};
  CollisionConfig fwd = fig3_config(3, 100);
  CollisionConfig rev = fwd;
  rev.order = {2, 1, 0};

  auto de_spin = [&](const CollisionConfig& c, int k) {
    TrajectoryRecord traj = run_trajectory(s, coh, c);
    return subsystem_energy(traj.system_state(traj.steps.size() - 1), s, k) -
           subsystem_energy(traj.system_state(0), s, k);
  };
  double de_fwd = de_spin(fwd, 1);
  double de_rev = de_spin(rev, 1);
  CHECK(de_fwd > 0.0);
  CHECK(de_rev < 0.0);
}

TEST_CASE("joint state stays a valid density matrix at every snapshot") {
  SpinChainSpec s = spec_equal(2);
  CollisionConfig c = fig3_config(2, 50);
  TrajectoryRecord traj =
      run_trajectory(s, uniform_coherence(2, 1.0, M_PI), c);
  for (const auto& snap : traj.steps) {
    // DensityMatrix construction already validates; spot-check trace
    CHECK(std::abs(snap.joint.matrix().trace().real() - 1.0) < 1e-12);
  }
}

TEST_CASE("zero coupling leaves the system invariant") {
  SpinChainSpec s = spec_equal(2);
  CollisionConfig c = fig3_config(2, 10);
  c.g = 0.0;
  CoherenceSpec coh = uniform_coherence(2, 0.7, 1.3);
  TrajectoryRecord traj = run_trajectory(s, coh, c);
  Matrix rho0 = traj.system_state(0).matrix();
  Matrix rho_end = traj.system_state(traj.steps.size() - 1).matrix();
  CHECK((rho_end - rho0).cwiseAbs().maxCoeff() < 1e-12);
  for (double q : heat_to_bath(traj)) CHECK(q == 0.0);
}

TEST_CASE("first spin in order is blind to coherence") {
  SpinChainSpec s = spec_equal(3);
  CollisionConfig c = fig3_config(3, 100);
  TrajectoryRecord plain = run_trajectory(s, {}, c);
  TrajectoryRecord coh =
      run_trajectory(s, uniform_coherence(3, 0.5, M_PI), c);
  for (std::size_t i = 0; i < plain.steps.size(); ++i) {
    double e_plain = subsystem_energy(plain.system_state(i), s, 0);
    double e_coh = subsystem_energy(coh.system_state(i), s, 0);
    CHECK(std::abs(e_plain - e_coh) < 1e-10);
  }
}

TEST_CASE("generator equivalence for coherence-free states") {
  SpinChainSpec s = spec_equal(3);
  CollisionConfig full = fig3_config(3, 50);
  CollisionConfig bare = full;
  bare.generator = GeneratorForm::interaction_only;
  TrajectoryRecord tf = run_trajectory(s, {}, full);
  TrajectoryRecord tb = run_trajectory(s, {}, bare);
  for (std::size_t i = 0; i < tf.steps.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      double df = subsystem_energy(tf.system_state(i), s, k);
      double db = subsystem_energy(tb.system_state(i), s, k);
      CHECK(std::abs(df - db) < 1e-10);
    }
    CHECK(std::abs(tf.steps[i].bath_energy_cum -
                   tb.steps[i].bath_energy_cum) < 1e-10);
  }
}

TEST_CASE("generator gap for coherent states vanishes as (delta tau)^2") {
  // With coherence present the two generator forms are not identical:
  // at Fig.-3-scale parameters the energy gap sits near 1e-5. It closes
  // quadratically in delta*tau at fixed g*tau (the transferred coherence
  // quadrature is orthogonal to the free-phase rotation at first order).
  SpinChainSpec s = spec_equal(2);
  CoherenceSpec coh = uniform_coherence(2, 0.8, M_PI);

  auto gap = [&](double tau) {
    CollisionConfig full = fig3_config(2, 20);
    full.tau = tau;
    full.g = 0.2 / tau;  // fixed angle g*tau = 0.2
    CollisionConfig bare = full;
    bare.generator = GeneratorForm::interaction_only;
    TrajectoryRecord tf = run_trajectory(s, coh, full);
    TrajectoryRecord tb = run_trajectory(s, coh, bare);
    double worst = 0;
    for (std::size_t i = 0; i < tf.steps.size(); ++i)
      for (int k = 0; k < 2; ++k)
        worst = std::max(worst,
                         std::abs(subsystem_energy(tf.system_state(i), s, k) -
                                  subsystem_energy(tb.system_state(i), s, k)));
    return worst;
  };
  double g1 = gap(0.01);
  double g2 = gap(0.005);
  CHECK(g1 > 1e-9);  // the difference is real
  CHECK(g1 / g2 == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("config validation") {
  SpinChainSpec s = spec_equal(2);
  CollisionConfig c = fig3_config(2, 1);
  c.order = {0, 0};
  CHECK_THROWS_AS(run_trajectory(s, {}, c), validation_error);
  c.order = {0, 1};
  c.n_collisions = -1;
  CHECK_THROWS_AS(run_trajectory(s, {}, c), validation_error);
}
