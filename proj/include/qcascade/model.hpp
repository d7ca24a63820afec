#pragma once

// Physical objects of the spin-chain model: local Hamiltonians, thermal
// states, the coherence-injected initial state, dephasing and the
// Bohr-frequency mode decomposition.

#include <map>
#include <vector>

#include "qcascade/linalg.hpp"

namespace qcascade {

struct SpinChainSpec {
  int n = 0;                  // system spins
  double delta = 0;           // energy gap
  std::vector<double> betas;  // per-spin inverse temperatures
  double beta_bath = 0;       // bath inverse temperature

  void validate() const;
  double bath_temperature() const { return 1.0 / beta_bath; }
  double temperature(int k) const { return 1.0 / betas.at(k); }
};

struct CoherenceTerm {
  int p = 0;
  int q = 0;
  double lambda = 0;  // strength, >= 0
  double alpha = 0;   // phase
};

struct CoherenceSpec {
  std::vector<CoherenceTerm> terms;
  void validate(int n) const;
  bool empty() const { return terms.empty(); }
};

// Ground population of a thermal qubit, P0 = 1/(1+e^{-beta*delta}).
double thermal_ground_population(double beta, double delta);

// (delta/2) sigma_z embedded at factor k of a 2^total-dimensional space.
HermitianOperator local_hamiltonian(const SpinChainSpec& spec, int k,
                                    int total);
// Sum of the local terms over the first `total` factors.
HermitianOperator chain_hamiltonian(const SpinChainSpec& spec, int total);

DensityMatrix thermal_qubit(double beta, double delta);

// Coherence structure operator between the degenerate pair (p, q):
// thermal factors elsewhere, sqrt(P_p0 P_p1 P_q0 P_q1) |g_p e_q><e_p g_q|
// on the pair. Commutes with the system Hamiltonian.
Matrix chi_pq(const SpinChainSpec& spec, int p, int q);

// rho_th + sum_pq (c_pq chi_pq + h.c.). Throws validation_error naming
// the offending eigenvalue when the requested coherence breaks
// positivity.
DensityMatrix initial_state(const SpinChainSpec& spec,
                            const CoherenceSpec& coh);

// Removes all off-diagonal elements in the eigenbasis of h (h must be
// diagonal in the computational basis here); degenerate blocks included,
// so the result feeds the relative entropy of coherence directly.
DensityMatrix dephase(const DensityMatrix& rho, const HermitianOperator& h);

// rho = sum_omega rho(omega), element (p,q) assigned to the mode at Bohr
// frequency omega_p - omega_q. Keys are rounded to `resolution`.
class ModeDecomposition {
 public:
  ModeDecomposition(std::map<long long, Matrix> modes, double resolution);
  const std::map<long long, Matrix>& modes() const { return modes_; }
  double frequency(long long key) const { return key * resolution_; }
  // Mode matrix at frequency omega (zero matrix when absent).
  Matrix mode(double omega, Eigen::Index dim) const;
  std::size_t size() const { return modes_.size(); }
  Matrix reconstruct(Eigen::Index dim) const;

 private:
  std::map<long long, Matrix> modes_;
  double resolution_;
};

ModeDecomposition mode_decompose(const DensityMatrix& rho,
                                 const HermitianOperator& h,
                                 double resolution = 1e-9);

}  // namespace qcascade
