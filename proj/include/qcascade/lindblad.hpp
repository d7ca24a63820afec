#pragma once

// Continuous-time limit of the collision dynamics: the cascaded master
// equation, a fixed-step RK4 integrator, and analytic heat currents.

#include "qcascade/thermo.hpp"

namespace qcascade {

struct DissipatorRates {
  double gamma_plus = 0;   // g^2 tau <sigma+ sigma->_R (absorption from bath)
  double gamma_minus = 0;  // g^2 tau <sigma- sigma+>_R (emission to bath)
};

DissipatorRates rates(const SpinChainSpec& spec, const CollisionConfig& config);

// d(rho)/dt = -i[H_S, rho] + sum_k L_k(rho) + 2 sum_{l after k} D_kl(rho).
// Cascade variant only; "l after k" is resolved against config.order.
Matrix master_rhs(const DensityMatrix& rho_S, const SpinChainSpec& spec,
                  const CollisionConfig& config);

struct LindbladTrajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

// Fixed-step RK4; aborts with numerical_error when trace drift exceeds
// 1e-9 or an eigenvalue falls below -1e-8.
LindbladTrajectory integrate(const DensityMatrix& rho0,
                             const SpinChainSpec& spec,
                             const CollisionConfig& config, double t_end,
                             double dt);

// Heat current into spin k. The population form
//   Qdot_k = -delta gamma- (P1+C) + delta gamma+ (P0+C)
// is always defined; the AT form
//   Qdot_k = delta gamma- (P0+C) (e^{-delta/T_R} - e^{-delta/AT_k})
// agrees with it wherever AT_k is defined.
struct HeatCurrent {
  double population_form = 0;
  ApparentTemp at;
  double at_form = 0;  // meaningful only when at.defined()
};

HeatCurrent heat_current_forms(const DensityMatrix& rho_S,
                               const SpinChainSpec& spec,
                               const CollisionConfig& config, int k);
double heat_current(const DensityMatrix& rho_S, const SpinChainSpec& spec,
                    const CollisionConfig& config, int k);

}  // namespace qcascade
