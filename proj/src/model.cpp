#include "qcascade/model.hpp"

#include <cmath>
#include <sstream>

namespace qcascade {

void SpinChainSpec::validate() const {
  if (n < 1) throw validation_error("SpinChainSpec: n must be >= 1");
  if (!(delta > 0)) throw validation_error("SpinChainSpec: delta must be > 0");
  if (static_cast<int>(betas.size()) != n)
    throw validation_error("SpinChainSpec: betas size != n");
  for (double b : betas)
    if (!(b > 0)) throw validation_error("SpinChainSpec: beta must be > 0");
  if (!(beta_bath > 0))
    throw validation_error("SpinChainSpec: beta_bath must be > 0");
}

void CoherenceSpec::validate(int n) const {
  for (const auto& t : terms) {
    if (t.p < 0 || t.q < 0 || t.p >= n || t.q >= n)
      throw validation_error("CoherenceSpec: spin index out of range");
    if (t.p >= t.q) throw validation_error("CoherenceSpec: requires p < q");
    if (t.lambda < 0)
      throw validation_error("CoherenceSpec: lambda must be >= 0");
  }
}

double thermal_ground_population(double beta, double delta) {
  return 1.0 / (1.0 + std::exp(-beta * delta));
}

namespace {

Matrix embed(const Matrix& op, int k, int total) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < total; ++i)
    out = tensor_product(out, i == k ? op : identity(2));
  return out;
}

}  // namespace

HermitianOperator local_hamiltonian(const SpinChainSpec& spec, int k,
                                    int total) {
  if (k < 0 || k >= total)
    throw validation_error("local_hamiltonian: index out of range");
  return HermitianOperator(0.5 * spec.delta * embed(sigma_z(), k, total));
}

HermitianOperator chain_hamiltonian(const SpinChainSpec& spec, int total) {
  Eigen::Index d = Eigen::Index(1) << total;
  Matrix h = Matrix::Zero(d, d);
  for (int k = 0; k < total; ++k)
    h += local_hamiltonian(spec, k, total).matrix();
  return HermitianOperator(std::move(h));
}

DensityMatrix thermal_qubit(double beta, double delta) {
  if (!(beta > 0) || !(delta > 0))
    throw validation_error("thermal_qubit: beta and delta must be > 0");
  double p0 = thermal_ground_population(beta, delta);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0 - p0;  // |e>
  m(1, 1) = p0;        // |g>
  return DensityMatrix::qubits(1, std::move(m));
}

Matrix chi_pq(const SpinChainSpec& spec, int p, int q) {
  spec.validate();
  if (p < 0 || q >= spec.n || p >= q)
    throw validation_error("chi_pq: requires 0 <= p < q < n");
  auto pop = [&](int k) {
    double p0 = thermal_ground_population(spec.betas[k], spec.delta);
    return std::pair<double, double>(p0, 1.0 - p0);
  };
  auto [p0p, p1p] = pop(p);
  auto [p0q, p1q] = pop(q);
  double mag = std::sqrt(p0p * p1p * p0q * p1q);

  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k < spec.n; ++k) {
    if (k == p)
      out = tensor_product(out, sigma_minus());  // |g><e| at p
    else if (k == q)
      out = tensor_product(out, sigma_plus());   // |e><g| at q
    else
      out = tensor_product(out, thermal_qubit(spec.betas[k], spec.delta).matrix());
  }
  return mag * out;
}

DensityMatrix initial_state(const SpinChainSpec& spec,
                            const CoherenceSpec& coh) {
  spec.validate();
  coh.validate(spec.n);
  Matrix rho = Matrix::Identity(1, 1);
  for (int k = 0; k < spec.n; ++k)
    rho = tensor_product(rho, thermal_qubit(spec.betas[k], spec.delta).matrix());
  for (const auto& t : coh.terms) {
    Complex c = t.lambda * std::exp(Complex(0, t.alpha));
    Matrix chi = chi_pq(spec, t.p, t.q);
    rho += c * chi + std::conj(c) * chi.adjoint();
  }
  try {
    return DensityMatrix::qubits(spec.n, std::move(rho));
  } catch (const validation_error& e) {
    std::ostringstream os;
    os << "initial_state: coherence too strong for the given temperatures ("
       << e.what() << ")";
    throw validation_error(os.str());
  }
}

DensityMatrix dephase(const DensityMatrix& rho, const HermitianOperator& h) {
  if (h.dim() != rho.dim())
    throw validation_error("dephase: dimension mismatch");
  Matrix d = rho.matrix().diagonal().asDiagonal();
  return DensityMatrix(rho.dims(), std::move(d));
}

ModeDecomposition::ModeDecomposition(std::map<long long, Matrix> modes,
                                     double resolution)
    : modes_(std::move(modes)), resolution_(resolution) {}

Matrix ModeDecomposition::mode(double omega, Eigen::Index dim) const {
  long long key = std::llround(omega / resolution_);
  auto it = modes_.find(key);
  if (it == modes_.end()) return Matrix::Zero(dim, dim);
  return it->second;
}

Matrix ModeDecomposition::reconstruct(Eigen::Index dim) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& [key, m] : modes_) out += m;
  return out;
}

ModeDecomposition mode_decompose(const DensityMatrix& rho,
                                 const HermitianOperator& h,
                                 double resolution) {
  if (h.dim() != rho.dim())
    throw validation_error("mode_decompose: dimension mismatch");
  const Eigen::Index d = rho.dim();
  Eigen::VectorXd level(d);
  for (Eigen::Index i = 0; i < d; ++i) level[i] = h.matrix()(i, i).real();

  std::map<long long, Matrix> modes;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Complex v = rho.matrix()(i, j);
      if (v == Complex(0, 0)) continue;
      long long key = std::llround((level[i] - level[j]) / resolution);
      auto [it, inserted] = modes.try_emplace(key, Matrix::Zero(d, d));
      it->second(i, j) = v;
    }
  }
  return ModeDecomposition(std::move(modes), resolution);
}

}  // namespace qcascade
