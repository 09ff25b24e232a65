#pragma once

#include <Eigen/Dense>

#include "toeplitz/core.hpp"

namespace toeplitz {

/// Dense complex matrix used only on oracle and verification paths.
using DenseMatrix = Eigen::MatrixXcd;

/// Largest dimension the dense paths accept.
inline constexpr long kDenseLimit = 2048;

/// Relative singularity threshold for circulant solves: min|eig| must exceed
/// this times max|eig|.
inline constexpr double kSingularTol = 1e-12;

/// Fast Toeplitz operator: T embedded in a circulant of size >= 2n-1 whose
/// spectrum is computed once, so each product costs two transforms.
class ToeplitzOperator {
public:
  /// Embedding size defaults to the next power of two >= 2n-1.
  explicit ToeplitzOperator(const ToeplitzHPD& T, long embed_size = 0);

  long n() const noexcept { return n_; }
  long embed_size() const noexcept { return static_cast<long>(spectrum_.size()); }
  CVector apply(std::span<const cplx> x) const;

private:
  long n_;
  CVector spectrum_;
};

CVector toeplitz_matvec(const ToeplitzHPD& T, std::span<const cplx> x);
/// Same product with an explicit embedding size (any value >= 2n-1).
CVector toeplitz_matvec(const ToeplitzHPD& T, std::span<const cplx> x, long embed_size);

/// Cyclic convolution C x.
CVector circulant_matvec(const CirculantMatrix& C, std::span<const cplx> x);

/// Solves C x = y through the spectrum. Throws SingularError when
/// min|eig| <= kSingularTol * max|eig|.
CVector circulant_solve(const CirculantMatrix& C, std::span<const cplx> y);

/// First column of C^{-1} (itself a circulant generator).
CVector circulant_inverse_column(const CirculantMatrix& C);

DenseMatrix to_dense(const ToeplitzHPD& T);
DenseMatrix to_dense(const CirculantMatrix& C);

CVector dense_matvec(const DenseMatrix& A, std::span<const cplx> x);

/// Cholesky solve; throws NotPositiveDefiniteError when the factorization fails.
CVector dense_solve(const DenseMatrix& A, std::span<const cplx> y);
DenseMatrix dense_inverse(const DenseMatrix& A);
cplx dense_inverse_entry(const DenseMatrix& A, long k, long l);

/// Hermitian eigenvalues in ascending order.
std::vector<double> dense_eigenvalues(const DenseMatrix& A);

}  // namespace toeplitz
