#include "qcascade/toys.hpp"

#include <cmath>
#include <sstream>

namespace qcascade {

// The toys follow the ground-first level ordering of the block matrices
// they are built from; energies are attached per level explicitly.

namespace {

ToyResult make_result(std::string label, double analytic, double simulated) {
  return ToyResult{std::move(label), analytic, simulated,
                   std::abs(analytic - simulated)};
}

// Real rotation [[cos, -sin], [sin, cos]] acting on levels (i, j) of a
// block state.
Matrix plane_rotation(Eigen::Index dim, Eigen::Index i, Eigen::Index j,
                      double theta) {
  Matrix r = Matrix::Identity(dim, dim);
  r(i, i) = std::cos(theta);
  r(j, j) = std::cos(theta);
  r(i, j) = -std::sin(theta);
  r(j, i) = std::sin(theta);
  return r;
}

// Exchange-type rotation [[cos, -i sin], [-i sin, cos]] on levels (i, j),
// the partial-swap block form.
Matrix exchange_rotation(Eigen::Index dim, Eigen::Index i, Eigen::Index j,
                         double theta) {
  Matrix r = Matrix::Identity(dim, dim);
  r(i, i) = std::cos(theta);
  r(j, j) = std::cos(theta);
  r(i, j) = Complex(0, -std::sin(theta));
  r(j, i) = Complex(0, -std::sin(theta));
  return r;
}

double energy(const Matrix& rho, const Matrix& h) {
  return (rho * h).trace().real();
}

}  // namespace

ToyResult single_spin_rotation(double c, double delta) {
  if (c < 0 || c > 0.5)
    throw validation_error("single_spin_rotation: requires 0 <= C <= 1/2");
  Matrix rho(2, 2);
  rho << 0.5, c, c, 0.5;
  Matrix h(2, 2);  // levels (ground, excited)
  h << -0.5 * delta, 0, 0, 0.5 * delta;
  Matrix u = plane_rotation(2, 0, 1, M_PI / 4);
  Matrix rho_f = u * rho * u.adjoint();
  double gain = energy(rho_f, h) - energy(rho, h);
  return make_result("single_spin_rotation", c * delta, gain);
}

ToyResult two_spin_swap(double c, double delta) {
  if (c < 0 || c > 0.5)
    throw validation_error("two_spin_swap: requires 0 <= C <= 1/2");
  // basis (gg, ge, eg, ee); only the degenerate middle block is occupied
  Matrix rho = Matrix::Zero(4, 4);
  rho(1, 1) = 0.5;
  rho(2, 2) = 0.5;
  rho(1, 2) = c;
  rho(2, 1) = c;
  Eigen::Vector4d e1(-0.5, -0.5, 0.5, 0.5);  // spin-1 level energies
  Eigen::Vector4d e2(-0.5, 0.5, -0.5, 0.5);  // spin-2 level energies
  Matrix h1 = (delta * e1).asDiagonal().toDenseMatrix().cast<Complex>();
  Matrix h2 = (delta * e2).asDiagonal().toDenseMatrix().cast<Complex>();
  // rotation sense chosen so the second spin receives the heat
  Matrix u = plane_rotation(4, 2, 1, M_PI / 4);
  Matrix rho_f = u * rho * u.adjoint();
  double de2 = energy(rho_f, h2) - energy(rho, h2);
  double work = de2 + energy(rho_f, h1) - energy(rho, h1);
  if (std::abs(work) > 1e-12) {
    std::ostringstream os;
    os << "two_spin_swap: degenerate exchange consumed work " << work;
    throw numerical_error(os.str());
  }
  return make_result("two_spin_swap", c * delta, de2);
}

ToyResult phase_efficiency(double lambda, double alpha, double theta) {
  // reduced block basis (|0_1 0_2 1_m>, |0_1 1_2 0_m>, |1_1 0_2 0_m>)
  const double population = 1.0 / 3.0;
  if (lambda < 0 || lambda > population)
    throw validation_error(
        "phase_efficiency: lambda outside the PSD bound of the block");
  Matrix rho = Matrix::Zero(3, 3);
  rho(0, 0) = rho(1, 1) = rho(2, 2) = population;
  Complex c = lambda * std::exp(Complex(0, alpha));
  rho(1, 2) = c;
  rho(2, 1) = std::conj(c);
  // contact 1 exchanges spin-1 and mediator excitations: levels 0 <-> 2
  Matrix u1 = exchange_rotation(3, 0, 2, theta);
  // contact 2 exchanges spin-2 and mediator excitations: levels 0 <-> 1
  Matrix u2 = exchange_rotation(3, 0, 1, theta);
  Matrix rho_f = u2 * (u1 * rho * u1.adjoint()) * u2.adjoint();
  double shift = (rho_f(0, 0) - rho(0, 0)).real();
  double analytic =
      lambda * std::cos(alpha) * std::sin(theta) * std::sin(2 * theta);
  return make_result("phase_efficiency", analytic, shift);
}

namespace {

// Three-qubit toy state for the different-temperature scan: two spins at
// beta_s with raw coherence u/2 * e^{i alpha_sign} on the degenerate
// pair, mediator thermal at beta_m. Factor order (s1, s2, m),
// ground-first two-level blocks handled through the engine basis
// conventions of linalg (excited first), so build explicitly here.
struct GradientToy {
  double beta_s, beta_m, delta, theta;

  // dE of spin 2 across the second contact, for signed coherence axis
  // value u = 2 lambda cos(alpha) (alpha = 0 or pi).
  double spin2_energy_step(double u) const {
    double p0s = 1.0 / (1.0 + std::exp(-beta_s * delta));
    double p0m = 1.0 / (1.0 + std::exp(-beta_m * delta));
    double bound = p0s * (1.0 - p0s);
    double lam = std::abs(u) / 2.0;
    if (lam >= bound)
      throw validation_error(
          "temperature_gradient_threshold: scan exceeded the PSD bound");
    // basis index = 4*s1 + 2*s2 + m with 0 = excited, 1 = ground
    auto qubit = [](double p0) {
      Matrix m = Matrix::Zero(2, 2);
      m(0, 0) = 1.0 - p0;
      m(1, 1) = p0;
      return m;
    };
    Matrix rho = tensor_product(tensor_product(qubit(p0s), qubit(p0s)),
                                qubit(p0m));
    // coherence (u/2) |g_1 e_2><e_1 g_2| (x) rho_m + h.c.
    Matrix dyad = Matrix::Zero(4, 4);
    dyad(2, 1) = 1.0;  // |g e><e g| on (s1, s2)
    Matrix chi = tensor_product(dyad, qubit(p0m));
    rho += (u / 2.0) * (chi + chi.adjoint());

    Matrix h2 = tensor_product(
        tensor_product(identity(2), 0.5 * delta * sigma_z()), identity(2));
    auto exchange = [&](int a, int b) {
      // g(sigma+_a sigma-_b + h.c.) with unit coupling, angle theta
      Matrix sp_a = Matrix::Identity(1, 1), sm_a = sp_a, sp_b = sp_a,
             sm_b = sp_a;
      for (int f = 0; f < 3; ++f) {
        sp_a = tensor_product(sp_a, f == a ? sigma_plus() : identity(2));
        sm_a = tensor_product(sm_a, f == a ? sigma_minus() : identity(2));
        sp_b = tensor_product(sp_b, f == b ? sigma_plus() : identity(2));
        sm_b = tensor_product(sm_b, f == b ? sigma_minus() : identity(2));
      }
      return unitary_exp_raw(sp_a * sm_b + sm_a * sp_b, theta);
    };
    Matrix u1 = exchange(0, 2);
    Matrix u2 = exchange(1, 2);
    Matrix after1 = u1 * rho * u1.adjoint();
    Matrix after2 = u2 * after1 * u2.adjoint();
    return (after2 * h2).trace().real() - (after1 * h2).trace().real();
  }
};

}  // namespace

ToyResult temperature_gradient_threshold(double beta_s, double beta_m,
                                         double delta) {
  if (!(beta_s > 0) || !(beta_m > 0))
    throw validation_error(
        "temperature_gradient_threshold: betas must be > 0");
  double es = std::exp(beta_s * delta);
  double em = std::exp(beta_m * delta);
  double analytic = (es - em) / ((es + 1.0) * (em - 1.0));
  GradientToy toy{beta_s, beta_m, delta, 1e-3};

  double p0s = 1.0 / (1.0 + std::exp(-beta_s * delta));
  double u_max = 1.9 * p0s * (1.0 - p0s);  // stay inside the PSD bound
  double lo = -u_max, hi = u_max;
  double f_lo = toy.spin2_energy_step(lo);
  double f_hi = toy.spin2_energy_step(hi);
  if (f_lo * f_hi >= 0)
    throw numerical_error(
        "temperature_gradient_threshold: no sign change inside the PSD "
        "bound");
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    double f_mid = toy.spin2_energy_step(mid);
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return make_result("temperature_gradient_threshold", analytic,
                     0.5 * (lo + hi));
}

}  // namespace qcascade
