#include "qcascade/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace qcascade {

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix sigma_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1;  // |e><g|
  return m;
}

Matrix sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1;  // |g><e|
  return m;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermitianOperator::HermitianOperator(Matrix m) : mat_(std::move(m)) {
  if (mat_.rows() < 1 || mat_.rows() != mat_.cols())
    throw validation_error("HermitianOperator: matrix must be square");
  if (!is_hermitian(mat_))
    throw validation_error("HermitianOperator: matrix is not Hermitian");
}

DensityMatrix::DensityMatrix(std::vector<Eigen::Index> dims, Matrix m)
    : dims_(std::move(dims)), mat_(std::move(m)) {
  Eigen::Index total = 1;
  for (Eigen::Index d : dims_) {
    if (d < 1) throw validation_error("DensityMatrix: subsystem dim < 1");
    total *= d;
  }
  if (dims_.empty() || mat_.rows() != total || mat_.cols() != total)
    throw validation_error("DensityMatrix: dims do not match matrix size");
  if (!is_hermitian(mat_))
    throw validation_error("DensityMatrix: not Hermitian");
  if (std::abs(mat_.trace().real() - 1.0) > kTraceTol ||
      std::abs(mat_.trace().imag()) > kTraceTol)
    throw validation_error("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kPositivityTol) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << min_eig;
    throw validation_error(os.str());
  }
}

DensityMatrix DensityMatrix::qubits(int n, Matrix m) {
  return DensityMatrix(std::vector<Eigen::Index>(n, 2), std::move(m));
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace_raw(const Matrix& m,
                         const std::vector<Eigen::Index>& dims,
                         const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  for (int k : keep)
    if (k < 0 || k >= n)
      throw validation_error("partial_trace: subsystem index out of range");
  if (keep.empty()) throw validation_error("partial_trace: empty keep set");

  std::vector<int> traced;
  for (int i = 0; i < n; ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end())
      traced.push_back(i);

  Eigen::Index dk = 1, dt = 1;
  for (int k : keep) dk *= dims[k];
  for (int t : traced) dt *= dims[t];

  // strides of each factor in the composite (row-major over factors)
  std::vector<Eigen::Index> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  Matrix out = Matrix::Zero(dk, dk);
  std::vector<Eigen::Index> kidx(keep.size(), 0), tidx(traced.size(), 0);
  for (Eigen::Index r = 0; r < dk; ++r) {
    // unpack r into kept-factor digits
    Eigen::Index rr = r;
    for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
      kidx[i] = rr % dims[keep[i]];
      rr /= dims[keep[i]];
    }
    for (Eigen::Index c = 0; c < dk; ++c) {
      Eigen::Index cc = c;
      std::vector<Eigen::Index> cidx(keep.size(), 0);
      for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
        cidx[i] = cc % dims[keep[i]];
        cc /= dims[keep[i]];
      }
      Complex acc = 0;
      for (Eigen::Index t = 0; t < dt; ++t) {
        Eigen::Index tt = t;
        Eigen::Index row = 0, col = 0;
        for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
          Eigen::Index d = tt % dims[traced[i]];
          tt /= dims[traced[i]];
          row += d * stride[traced[i]];
          col += d * stride[traced[i]];
        }
        for (std::size_t i = 0; i < keep.size(); ++i) {
          row += kidx[i] * stride[keep[i]];
          col += cidx[i] * stride[keep[i]];
        }
        acc += m(row, col);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  Matrix reduced = partial_trace_raw(rho.matrix(), rho.dims(), keep);
  std::vector<Eigen::Index> dims;
  for (int k : keep) dims.push_back(rho.dims()[k]);
  return DensityMatrix(std::move(dims), std::move(reduced));
}

Spectrum herm_eig_raw(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success)
    throw numerical_error("herm_eig: eigendecomposition failed");
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index d = m.rows();
  Spectrum s;
  s.eigenvalues = es.eigenvalues().reverse();
  s.eigenvectors.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    s.eigenvectors.col(i) = es.eigenvectors().col(d - 1 - i);
  return s;
}

Spectrum herm_eig(const HermitianOperator& h) {
  return herm_eig_raw(h.matrix());
}

Matrix unitary_exp_raw(const Matrix& h, double theta) {
  Spectrum s = herm_eig_raw(h);
  Eigen::VectorXcd phases(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    phases[i] = std::exp(Complex(0, -theta * s.eigenvalues[i]));
  return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

Matrix unitary_exp(const HermitianOperator& h, double theta) {
  return unitary_exp_raw(h.matrix(), theta);
}

namespace {

// Eigenvalues of a state: clip [-1e-10, 0) to 0, reject worse.
Eigen::VectorXd state_eigenvalues(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -kPositivityTol) {
      std::ostringstream os;
      os << "entropy: state has eigenvalue " << ev[i];
      throw validation_error(os.str());
    }
    if (ev[i] < 0) ev[i] = 0;
  }
  return ev;
}

}  // namespace

double von_neumann_entropy_raw(const Matrix& rho) {
  Eigen::VectorXd ev = state_eigenvalues(rho);
  double s = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] > kEntropyEigCutoff) s -= ev[i] * std::log(ev[i]);
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy_raw(rho.matrix());
}

double relative_entropy_raw(const Matrix& rho, const Matrix& sigma) {
  Spectrum ss = herm_eig_raw(sigma);
  // support check: weight of rho on sigma's null space
  double outside = 0;
  for (Eigen::Index i = 0; i < ss.eigenvalues.size(); ++i) {
    if (ss.eigenvalues[i] <= kSupportTol) {
      Eigen::VectorXcd v = ss.eigenvectors.col(i);
      outside += std::real((v.adjoint() * rho * v)(0, 0));
    }
  }
  if (outside > kSupportTol)
    throw validation_error(
        "relative_entropy: support violation (infinite relative entropy)");

  Spectrum sr = herm_eig_raw(rho);
  double tr_rho_ln_rho = 0;
  for (Eigen::Index i = 0; i < sr.eigenvalues.size(); ++i) {
    double ev = sr.eigenvalues[i];
    if (ev > kEntropyEigCutoff) tr_rho_ln_rho += ev * std::log(ev);
  }
  double tr_rho_ln_sigma = 0;
  for (Eigen::Index i = 0; i < ss.eigenvalues.size(); ++i) {
    double ev = ss.eigenvalues[i];
    if (ev <= kSupportTol) continue;
    Eigen::VectorXcd v = ss.eigenvectors.col(i);
    tr_rho_ln_sigma +=
        std::log(ev) * std::real((v.adjoint() * rho * v)(0, 0));
  }
  return tr_rho_ln_rho - tr_rho_ln_sigma;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return relative_entropy_raw(rho.matrix(), sigma.matrix());
}

}  // namespace qcascade
