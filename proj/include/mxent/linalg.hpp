#pragma once

// Dense complex Hermitian linear algebra on top of Eigen.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>

#include "mxent/errors.hpp"
#include "mxent/rng.hpp"

namespace mxent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Largest composite dimension handled anywhere in the library.
inline constexpr Eigen::Index kMaxDimension = 64;

inline bool all_finite(const Matrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

inline void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw InputError(std::string(what) + ": expected a non-empty square matrix, got " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

/// Square complex matrix equal to its conjugate transpose.
///
/// Construction symmetrizes its argument as (A + A*)/2, so the stored
/// entries satisfy H(i,j) == conj(H(j,i)) bit-for-bit and the diagonal is
/// exactly real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(const Matrix& a) {
    require_square(a, "HermitianMatrix");
    if (!all_finite(a)) throw InputError("HermitianMatrix: non-finite entry");
    const Eigen::Index n = a.rows();
    data_.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      data_(j, j) = Complex(a(j, j).real(), 0.0);
      for (Eigen::Index i = j + 1; i < n; ++i) {
        const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
        data_(i, j) = v;
        data_(j, i) = std::conj(v);
      }
    }
  }

  static HermitianMatrix identity(Eigen::Index n) {
    return HermitianMatrix(Matrix::Identity(n, n));
  }
  static HermitianMatrix zero(Eigen::Index n) { return HermitianMatrix(Matrix::Zero(n, n)); }
  static HermitianMatrix diagonal(const RealVector& d) {
    return HermitianMatrix(d.cast<Complex>().asDiagonal().toDenseMatrix());
  }

  Eigen::Index dim() const { return data_.rows(); }
  const Matrix& matrix() const { return data_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }

  double trace() const { return data_.trace().real(); }
  double norm() const { return data_.norm(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.data_ + b.data_);
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.data_ - b.data_);
  }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(s * a.data_);
  }
  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.data_.rows() == b.data_.rows() && a.data_ == b.data_;
  }

 private:
  Matrix data_;
};

/// Eigenvalues (ascending) and a unitary basis with A = U diag(eigenvalues) U*.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix basis;

  Eigen::Index dim() const { return eigenvalues.size(); }

  Matrix reconstruct() const {
    return basis * eigenvalues.cast<Complex>().asDiagonal() * basis.adjoint();
  }
};

inline SpectralDecomposition eigh(const HermitianMatrix& a) {
  if (a.dim() == 0) throw InputError("eigh: empty matrix");
  if (!all_finite(a.matrix())) throw InputError("eigh: non-finite entry");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) throw NumericError("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline double min_eigenvalue(const HermitianMatrix& a) { return eigh(a).eigenvalues(0); }

/// Kronecker product with composite index (a, i) -> a * dim(B) + i.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  require_square(a, "kron");
  require_square(b, "kron");
  const Eigen::Index n1 = a.rows();
  const Eigen::Index n2 = b.rows();
  if (n1 > kMaxDimension || n2 > kMaxDimension || n1 * n2 > kMaxDimension)
    throw InputError("kron: composite dimension " + std::to_string(n1) + "*" +
                     std::to_string(n2) + " exceeds " + std::to_string(kMaxDimension));
  Matrix out(n1 * n2, n1 * n2);
  for (Eigen::Index r = 0; r < n1; ++r)
    for (Eigen::Index c = 0; c < n1; ++c) out.block(r * n2, c * n2, n2, n2) = a(r, c) * b;
  return out;
}

inline HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(kron(a.matrix(), b.matrix()));
}

/// Random complex matrix with standard complex Gaussian entries.
inline Matrix random_gaussian_matrix(Eigen::Index dim, RngStream& rng) {
  Matrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = rng.complex_gaussian();
  return g;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal folded back into Q.
inline Matrix random_unitary(Eigen::Index dim, RngStream& rng) {
  if (dim < 1) throw InputError("random_unitary: dim must be positive");
  Eigen::HouseholderQR<Matrix> qr(random_gaussian_matrix(dim, rng));
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    const Complex phase = mag > 0.0 ? r(k, k) / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return q;
}

/// Random positive definite matrix U diag(d) U* with d_i uniform in [lo, hi].
inline HermitianMatrix random_pd(Eigen::Index dim, RngStream& rng, double lo, double hi) {
  if (!(lo > 0.0)) throw InputError("random_pd: lower eigenvalue bound must be positive");
  if (!(hi >= lo)) throw InputError("random_pd: upper bound below lower bound");
  if (dim < 1) throw InputError("random_pd: dim must be positive");
  const Matrix u = random_unitary(dim, rng);
  RealVector d(dim);
  for (Eigen::Index i = 0; i < dim; ++i) d(i) = rng.uniform(lo, hi);
  return HermitianMatrix(u * d.cast<Complex>().asDiagonal() * u.adjoint());
}

/// Random Hermitian direction. Off-diagonal real and imaginary parts are
/// uniform in [-scale/sqrt2, scale/sqrt2] and the diagonal is uniform in
/// [-scale, scale], so every entry is bounded by scale before symmetrizing.
inline HermitianMatrix random_hermitian(Eigen::Index dim, RngStream& rng, double scale) {
  if (!(scale > 0.0)) throw InputError("random_hermitian: scale must be positive");
  if (dim < 1) throw InputError("random_hermitian: dim must be positive");
  Matrix a(dim, dim);
  const double box = scale / std::numbers::sqrt2;
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (i == j) {
        a(i, j) = Complex(rng.uniform(-scale, scale), 0.0);
      } else {
        const double re = rng.uniform(-box, box);
        a(i, j) = Complex(re, rng.uniform(-box, box));
      }
    }
  return HermitianMatrix(a);
}

}  // namespace mxent
