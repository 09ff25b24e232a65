#include "toeplitz/structured_ops.hpp"

#include <algorithm>
#include <cmath>

#include "toeplitz/error.hpp"
#include "toeplitz/transform.hpp"

namespace toeplitz {

namespace {

long next_pow2(long v) {
  long p = 1;
  while (p < v) p <<= 1;
  return p;
}

void guard_dense(long n) {
  if (n > kDenseLimit) {
    throw DimensionError("dense path limited to n <= " + std::to_string(kDenseLimit));
  }
}

void check_spectrum(const CVector& eigs) {
  double lo = INFINITY, hi = 0.0;
  for (const auto& e : eigs) {
    lo = std::min(lo, std::abs(e));
    hi = std::max(hi, std::abs(e));
  }
  if (!(lo > kSingularTol * hi)) throw SingularError("circulant is numerically singular", lo);
}

}  // namespace

ToeplitzOperator::ToeplitzOperator(const ToeplitzHPD& T, long embed_size) : n_(T.n()) {
  const long P = embed_size > 0 ? embed_size : next_pow2(2 * n_ - 1);
  if (P < 2 * n_ - 1) throw DimensionError("embedding size must be >= 2n-1");
  CVector gen(static_cast<size_t>(P));
  const auto& col = T.first_col();
  gen[0] = col[0];
  for (long j = 1; j < n_; ++j) {
    gen[j] = col[j];
    gen[P - j] = std::conj(col[j]);
  }
  spectrum_ = dft(gen);
}

CVector ToeplitzOperator::apply(std::span<const cplx> x) const {
  if (static_cast<long>(x.size()) != n_) throw DimensionError("matvec dimension mismatch");
  CVector padded(spectrum_.size());
  std::copy(x.begin(), x.end(), padded.begin());
  CVector X = dft(padded);
  for (size_t i = 0; i < X.size(); ++i) X[i] *= spectrum_[i];
  CVector full = idft(X);
  full.resize(static_cast<size_t>(n_));
  return full;
}

CVector toeplitz_matvec(const ToeplitzHPD& T, std::span<const cplx> x) {
  return ToeplitzOperator(T).apply(x);
}

CVector toeplitz_matvec(const ToeplitzHPD& T, std::span<const cplx> x, long embed_size) {
  return ToeplitzOperator(T, embed_size).apply(x);
}

CVector circulant_matvec(const CirculantMatrix& C, std::span<const cplx> x) {
  if (static_cast<long>(x.size()) != C.m()) throw DimensionError("matvec dimension mismatch");
  CVector X = dft(x);
  const auto& eigs = C.eigs();
  for (size_t i = 0; i < X.size(); ++i) X[i] *= eigs[i];
  return idft(X);
}

CVector circulant_solve(const CirculantMatrix& C, std::span<const cplx> y) {
  if (static_cast<long>(y.size()) != C.m()) throw DimensionError("solve dimension mismatch");
  const auto& eigs = C.eigs();
  check_spectrum(eigs);
  CVector Y = dft(y);
  for (size_t i = 0; i < Y.size(); ++i) Y[i] /= eigs[i];
  return idft(Y);
}

CVector circulant_inverse_column(const CirculantMatrix& C) {
  const auto& eigs = C.eigs();
  check_spectrum(eigs);
  CVector recip(eigs.size());
  for (size_t i = 0; i < eigs.size(); ++i) recip[i] = 1.0 / eigs[i];
  return idft(recip);
}

DenseMatrix to_dense(const ToeplitzHPD& T) {
  guard_dense(T.n());
  DenseMatrix A(T.n(), T.n());
  for (long k = 0; k < T.n(); ++k)
    for (long l = 0; l < T.n(); ++l) A(k, l) = T(k, l);
  return A;
}

DenseMatrix to_dense(const CirculantMatrix& C) {
  guard_dense(C.m());
  DenseMatrix A(C.m(), C.m());
  for (long r = 0; r < C.m(); ++r)
    for (long c = 0; c < C.m(); ++c) A(r, c) = C(r, c);
  return A;
}

CVector dense_matvec(const DenseMatrix& A, std::span<const cplx> x) {
  if (static_cast<long>(x.size()) != A.cols()) throw DimensionError("matvec dimension mismatch");
  Eigen::Map<const Eigen::VectorXcd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXcd r = A * xv;
  return CVector(r.data(), r.data() + r.size());
}

namespace {

Eigen::LLT<DenseMatrix> factor(const DenseMatrix& A) {
  guard_dense(A.rows());
  if (A.rows() != A.cols()) throw DimensionError("dense solve needs a square matrix");
  Eigen::LLT<DenseMatrix> llt(A);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError("Cholesky factorization failed: matrix is not hpd");
  }
  return llt;
}

}  // namespace

CVector dense_solve(const DenseMatrix& A, std::span<const cplx> y) {
  if (static_cast<long>(y.size()) != A.rows()) throw DimensionError("solve dimension mismatch");
  auto llt = factor(A);
  Eigen::Map<const Eigen::VectorXcd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
  Eigen::VectorXcd x = llt.solve(yv);
  return CVector(x.data(), x.data() + x.size());
}

DenseMatrix dense_inverse(const DenseMatrix& A) {
  auto llt = factor(A);
  return llt.solve(DenseMatrix::Identity(A.rows(), A.cols()));
}

cplx dense_inverse_entry(const DenseMatrix& A, long k, long l) {
  if (k < 0 || l < 0 || k >= A.rows() || l >= A.rows()) throw RangeError("index out of range");
  auto llt = factor(A);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(A.rows());
  e(l) = 1.0;
  Eigen::VectorXcd col = llt.solve(e);
  return col(k);
}

std::vector<double> dense_eigenvalues(const DenseMatrix& A) {
  guard_dense(A.rows());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("hermitian eigensolve failed");
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace toeplitz
