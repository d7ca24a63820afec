#include "qcascade/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace qcascade {

namespace {

Matrix embed(const Matrix& op, int k, int total) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < total; ++i)
    out = tensor_product(out, i == k ? op : identity(2));
  return out;
}

Matrix anticomm(const Matrix& a, const Matrix& b) { return a * b + b * a; }

// The cascaded generator acting on raw matrices (RK4 stages are not
// exact states).
struct Generator {
  int n;
  double gp, gm;
  Matrix h_s;
  std::vector<Matrix> sp, sm;
  std::vector<int> pos;  // position of each spin in the interaction order

  Generator(const SpinChainSpec& spec, const CollisionConfig& config)
      : n(spec.n), sp(spec.n), sm(spec.n), pos(spec.n) {
    DissipatorRates r = rates(spec, config);
    gp = r.gamma_plus;
    gm = r.gamma_minus;
    h_s = chain_hamiltonian(spec, n).matrix();
    for (int k = 0; k < n; ++k) {
      sp[k] = embed(sigma_plus(), k, n);
      sm[k] = embed(sigma_minus(), k, n);
    }
    for (int i = 0; i < n; ++i) pos[config.order[i]] = i;
  }

  Matrix operator()(const Matrix& m) const {
    Matrix out = Complex(0, -1) * (h_s * m - m * h_s);
    for (int k = 0; k < n; ++k) {
      out += 0.5 * gp * (2.0 * sp[k] * m * sm[k] - anticomm(sm[k] * sp[k], m));
      out += 0.5 * gm * (2.0 * sm[k] * m * sp[k] - anticomm(sp[k] * sm[k], m));
    }
    // D_kl couples spin k to every spin l later in the order, with the
    // cascaded prefactor 2.
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        if (l == k || pos[l] < pos[k]) continue;
        Matrix d = 0.5 * gp * (sp[k] * (m * sm[l] - sm[l] * m) +
                               (sp[l] * m - m * sp[l]) * sm[k]);
        d += 0.5 * gm * (sm[k] * (m * sp[l] - sp[l] * m) +
                         (sm[l] * m - m * sm[l]) * sp[k]);
        out += 2.0 * d;
      }
    }
    return out;
  }
};

}  // namespace

DissipatorRates rates(const SpinChainSpec& spec,
                      const CollisionConfig& config) {
  // g = 0 is allowed (decoupled system, zero rates)
  if (!(config.tau > 0) || config.g < 0)
    throw validation_error("rates: requires tau > 0 and g >= 0");
  double p0 = thermal_ground_population(spec.beta_bath, spec.delta);
  double g2t = config.g * config.g * config.tau;
  return DissipatorRates{g2t * (1.0 - p0), g2t * p0};
}

Matrix master_rhs(const DensityMatrix& rho_S, const SpinChainSpec& spec,
                  const CollisionConfig& config) {
  if (config.variant != Variant::cascade)
    throw validation_error("master_rhs: cascade variant only");
  config.validate(spec.n);
  return Generator(spec, config)(rho_S.matrix());
}

LindbladTrajectory integrate(const DensityMatrix& rho0,
                             const SpinChainSpec& spec,
                             const CollisionConfig& config, double t_end,
                             double dt) {
  if (!(dt > 0)) throw validation_error("integrate: dt must be > 0");
  if (t_end < 0) throw validation_error("integrate: t_end must be >= 0");
  if (config.variant != Variant::cascade)
    throw validation_error("integrate: cascade variant only");
  config.validate(spec.n);

  LindbladTrajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  const Generator generator(spec, config);
  Matrix rho = rho0.matrix();
  double t = 0;
  while (t < t_end - 1e-15) {
    double h = std::min(dt, t_end - t);
    Matrix k1 = generator(rho);
    Matrix k2 = generator(rho + 0.5 * h * k1);
    Matrix k3 = generator(rho + 0.5 * h * k2);
    Matrix k4 = generator(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;

    double trace_drift = std::abs(rho.trace().real() - 1.0) +
                         std::abs(rho.trace().imag());
    if (trace_drift > 1e-9) {
      std::ostringstream os;
      os << "integrate: trace drift " << trace_drift << " at t=" << t;
      throw numerical_error(os.str());
    }
    Matrix sym = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-8) {
      std::ostringstream os;
      os << "integrate: eigenvalue " << min_eig << " below -1e-8 at t=" << t
         << " (reduce dt)";
      throw numerical_error(os.str());
    }
    if (min_eig < -kPositivityTol) {
      // within integrator tolerance; project onto the PSD cone
      Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
      sym = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    }
    sym *= 1.0 / sym.trace().real();
    traj.times.push_back(t);
    traj.states.push_back(DensityMatrix(rho0.dims(), std::move(sym)));
  }
  return traj;
}

HeatCurrent heat_current_forms(const DensityMatrix& rho_S,
                               const SpinChainSpec& spec,
                               const CollisionConfig& config, int k) {
  if (k < 0 || k >= spec.n)
    throw validation_error("heat_current: index out of range");
  const int n = spec.n;
  DissipatorRates r = rates(spec, config);
  Matrix num_op = embed(sigma_plus(), k, n) * embed(sigma_minus(), k, n);
  double p1 = (rho_S.matrix() * num_op).trace().real();
  double p0 = 1.0 - p1;
  double c_k = config.variant == Variant::cascade
                   ? one_way_coherence(rho_S, k, config.order)
                   : symmetric_one_way_coherence(rho_S, k);

  HeatCurrent hc;
  hc.population_form = spec.delta * (-r.gamma_minus * (p1 + c_k) +
                                     r.gamma_plus * (p0 + c_k));
  hc.at = apparent_temperature(p0, p1, c_k, spec.delta);
  if (hc.at.defined()) {
    hc.at_form = spec.delta * r.gamma_minus * (p0 + c_k) *
                 (std::exp(-spec.delta / spec.bath_temperature()) -
                  std::exp(-spec.delta / hc.at.value));
  }
  return hc;
}

double heat_current(const DensityMatrix& rho_S, const SpinChainSpec& spec,
                    const CollisionConfig& config, int k) {
  return heat_current_forms(rho_S, spec, config, k).population_form;
}

}  // namespace qcascade
