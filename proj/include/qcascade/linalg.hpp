#pragma once

// Dense complex-matrix kernel for small Hilbert spaces (dim <= 64):
// tensor products, partial traces, Hermitian eigendecomposition and the
// matrix functions built on it (unitary exponential, entropy, log).

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qcascade/errors.hpp"

namespace qcascade {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Basis convention: qubit index 0 is |e> (sigma_z = +1, energy +delta/2),
// index 1 is |g>. Tensor factor 0 is the slowest-varying index.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kEntropyEigCutoff = 1e-14;
inline constexpr double kSupportTol = 1e-12;

Matrix identity(Eigen::Index dim);
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
Matrix sigma_plus();   // |e><g|
Matrix sigma_minus();  // |g><e|

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

// Hermitian operator; rejects non-square or non-Hermitian input.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m);
  const Matrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Matrix mat_;
};

// State on a labeled tensor-product space. Validates Hermiticity, unit
// trace and positive semidefiniteness (min eigenvalue >= -1e-10) on
// construction.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<Eigen::Index> dims, Matrix m);
  static DensityMatrix qubits(int n, Matrix m);

  const Matrix& matrix() const { return mat_; }
  const std::vector<Eigen::Index>& dims() const { return dims_; }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  std::vector<Eigen::Index> dims_;
  Matrix mat_;
};

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // descending
  Matrix eigenvectors;          // column i pairs with eigenvalues[i]
};

// Kronecker product with a's indices as the slower-varying block index.
Matrix tensor_product(const Matrix& a, const Matrix& b);

// Reduced state on the kept factors (subsystem order preserved).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);
// Same on a raw matrix over the given factor dimensions.
Matrix partial_trace_raw(const Matrix& m,
                         const std::vector<Eigen::Index>& dims,
                         const std::vector<int>& keep);

Spectrum herm_eig(const HermitianOperator& h);
// Trusted-input variant for matrices known Hermitian (density matrices,
// symmetrized intermediates); skips the Hermiticity check.
Spectrum herm_eig_raw(const Matrix& m);

// exp(-i * theta * h) via eigendecomposition.
Matrix unitary_exp(const HermitianOperator& h, double theta);
Matrix unitary_exp_raw(const Matrix& h, double theta);

// S(rho) = -sum lambda_i ln lambda_i in nats; eigenvalues below 1e-14
// are treated as zero, eigenvalues in [-1e-10, 0) are clipped, anything
// more negative is a validation error.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy_raw(const Matrix& rho);

// S(rho||sigma) in nats; throws validation_error when supp(rho) is not
// contained in supp(sigma) (infinite relative entropy).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double relative_entropy_raw(const Matrix& rho, const Matrix& sigma);

}  // namespace qcascade
