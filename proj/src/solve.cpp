#include "toeplitz/solve.hpp"

#include <algorithm>
#include <cmath>

#include "toeplitz/error.hpp"
#include "toeplitz/transform.hpp"

namespace toeplitz {

namespace {

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s{};
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

SolveReport conjugate_gradient(const ToeplitzHPD& T, std::span<const cplx> y,
                               const LinearOperator* precond, double tol, long max_iter) {
  const long n = T.n();
  if (static_cast<long>(y.size()) != n) throw DimensionError("rhs dimension mismatch");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (max_iter <= 0) max_iter = 4 * n;

  SolveReport rep;
  rep.method = precond ? SolveMethod::PCG : SolveMethod::CG;
  rep.x.assign(static_cast<size_t>(n), cplx{});
  const double ynorm = norm2(y);
  if (ynorm == 0.0) return rep;

  const ToeplitzOperator op(T);
  CVector r(y.begin(), y.end());
  CVector z = precond ? (*precond)(r) : r;
  CVector p = z;
  double rho = dot(r, z).real();
  if (!(rho > 0.0)) throw NotPositiveDefiniteError("preconditioner is not positive definite");

  for (long it = 1; it <= max_iter; ++it) {
    const CVector q = op.apply(p);
    const double pnorm = norm2(p);
    const double curvature = dot(p, q).real();
    if (curvature <= kBreakdownCurvature * pnorm * pnorm) {
      throw NotPositiveDefiniteError("CG breakdown: non-positive curvature, matrix is not hpd");
    }
    const double alpha = rho / curvature;
    for (long i = 0; i < n; ++i) {
      rep.x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    const double rel = norm2(r) / ynorm;
    rep.residual_history.push_back(rel);
    rep.iterations = static_cast<int>(it);
    if (rel <= tol) return rep;

    z = precond ? (*precond)(r) : r;
    const double rho_next = dot(r, z).real();
    if (!(rho_next > 0.0)) {
      throw NotPositiveDefiniteError("preconditioner is not positive definite");
    }
    const double beta = rho_next / rho;
    rho = rho_next;
    for (long i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw ConvergenceError("CG did not reach relative residual " + std::to_string(tol) + " in " +
                         std::to_string(max_iter) + " iterations");
}

}  // namespace

std::string to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::CG: return "cg";
    case SolveMethod::PCG: return "pcg";
    case SolveMethod::FiniteSection: return "finite_section";
    case SolveMethod::Embedding: return "embedding";
    case SolveMethod::StrangBanded: return "strang_banded";
  }
  return "unknown";
}

SolveReport cg_solve(const ToeplitzHPD& T, std::span<const cplx> y, double tol, long max_iter) {
  return conjugate_gradient(T, y, nullptr, tol, max_iter);
}

SolveReport pcg_solve(const ToeplitzHPD& T, std::span<const cplx> y, const LinearOperator& precond,
                      double tol, long max_iter) {
  return conjugate_gradient(T, y, &precond, tol, max_iter);
}

EmbeddingSystem::EmbeddingSystem(const SymbolSequence& seq, long n)
    : n_(n),
      c2n_(build_circulant(seq, 2 * n)),
      policy_(seq.available(n) ? B0Policy::Known : B0Policy::Zero) {
  const auto spec = circulant_eigenvalues(c2n_);
  if (!(spec.min_abs() > kSingularTol * spec.max_abs())) {
    throw SingularError("embedding circulant C_2n is singular", spec.min_abs());
  }
}

bool EmbeddingSystem::positive_definite() const {
  const auto spec = circulant_eigenvalues(c2n_);
  return spec.min_real() > kSingularTol * spec.max_abs();
}

CVector EmbeddingSystem::apply_inverse(std::span<const cplx> r) const {
  if (static_cast<long>(r.size()) != n_) throw DimensionError("preconditioner dimension mismatch");
  CVector padded(static_cast<size_t>(2 * n_));
  std::copy(r.begin(), r.end(), padded.begin());
  CVector z = circulant_solve(c2n_, padded);
  z.resize(static_cast<size_t>(n_));
  return z;
}

DenseMatrix EmbeddingSystem::dense_A() const {
  DenseMatrix A(n_, n_);
  for (long r = 0; r < n_; ++r)
    for (long c = 0; c < n_; ++c) A(r, c) = c2n_(r, c);
  return A;
}

DenseMatrix EmbeddingSystem::dense_B() const {
  DenseMatrix B(n_, n_);
  for (long r = 0; r < n_; ++r)
    for (long c = 0; c < n_; ++c) B(r, c) = c2n_(n_ + r, c);
  return B;
}

DenseMatrix EmbeddingSystem::dense_leading_inverse() const {
  const CVector col = circulant_inverse_column(c2n_);
  const long m = 2 * n_;
  DenseMatrix M(n_, n_);
  for (long r = 0; r < n_; ++r)
    for (long c = 0; c < n_; ++c) M(r, c) = col[mod(r - c, m)];
  return M;
}

DenseMatrix EmbeddingSystem::dense_schur() const {
  const DenseMatrix A = dense_A();
  const DenseMatrix B = dense_B();
  Eigen::LLT<DenseMatrix> llt(A);
  if (llt.info() != Eigen::Success) throw NotPositiveDefiniteError("A_n is not hpd");
  const DenseMatrix AinvBstar = llt.solve(B.adjoint());
  DenseMatrix S = A - B * AinvBstar;
  return 0.5 * (S + S.adjoint());
}

CVector apply_embedding_precond(const EmbeddingSystem& sys, std::span<const cplx> r) {
  return sys.apply_inverse(r);
}

LinearOperator embedding_preconditioner(const EmbeddingSystem& sys) {
  if (!sys.positive_definite()) {
    throw NotPositiveDefiniteError("embedding circulant C_2n is not positive definite");
  }
  return [sys](std::span<const cplx> r) { return sys.apply_inverse(r); };
}

double finite_section_bound(const SectionBound& b, long n) {
  const double dn = static_cast<double>(n);
  if (b.profile.kind() == DecayKind::Exponential) {
    return b.c1 * std::exp(-b.profile.exponential().gamma * dn);
  }
  const double s = b.profile.polynomial().s;
  return b.c1 * std::pow(dn, (1.0 - 2.0 * s) / 2.0);
}

SolveReport finite_section_solve(const SymbolSequence& seq, const VectorSource& y, long n,
                                 Convention convention, const SectionOptions& opts) {
  if (!(symbol_range(seq).f_min > 0.0)) {
    throw NotPositiveDefiniteError("symbol is not positive, finite sections need f_min > 0");
  }
  const auto rhs = project(y, n, convention);
  const long dim = rhs.size();
  const auto T = build_toeplitz(seq, dim);
  SolveReport rep;
  if (opts.preconditioned && dim > 1) {
    const EmbeddingSystem sys(seq, dim);
    rep = pcg_solve(T, rhs.data, embedding_preconditioner(sys), opts.tol);
  } else {
    rep = cg_solve(T, rhs.data, opts.tol);
  }
  rep.method = SolveMethod::FiniteSection;
  rep.offset = rhs.offset;
  if (opts.bound) rep.bound_applied = finite_section_bound(*opts.bound, n);
  return rep;
}

SolveReport embedding_solve(const SymbolSequence& seq, std::span<const cplx> y, long n) {
  if (static_cast<long>(y.size()) != n) throw DimensionError("rhs dimension mismatch");
  const EmbeddingSystem sys(seq, n);
  SolveReport rep;
  rep.method = SolveMethod::Embedding;
  rep.x = sys.apply_inverse(y);
  rep.iterations = 1;
  const CVector Ax = toeplitz_matvec(build_toeplitz(seq, n), rep.x);
  double num = 0.0;
  CVector res(y.begin(), y.end());
  for (long i = 0; i < n; ++i) res[i] -= Ax[i];
  num = norm2(res);
  const double den = norm2(y);
  rep.residual_history.push_back(den > 0.0 ? num / den : 0.0);
  return rep;
}

StrangBound strang_bound(const SymbolSequence& seq, long n) {
  if (!seq.is_banded()) throw DomainError("banded circulant bound needs a banded symbol");
  const long s = seq.bandwidth();
  const auto range = symbol_range(seq);
  if (!(range.f_min > 0.0)) throw NotPositiveDefiniteError("symbol is not positive");
  // [f_min, f_max] contains the spectrum of every section, so these are
  // admissible (slightly pessimistic) inputs for the envelope.
  StrangBound b{demko_bound(range.f_max / range.f_min, 2 * std::max(s, 1L), 1.0 / range.f_min),
                0.0, 0.0};
  const double lam = b.demko.lambda;
  const double ds = static_cast<double>(std::max(s, 1L));
  const double dn = static_cast<double>(n);
  b.proof_form = 2.0 * std::sqrt(2.0) * b.demko.c *
                 std::pow(std::pow(lam, ds) - std::pow(lam, ds + 1.0), -3.0) * std::pow(lam, dn);
  b.printed_form = 3.0 * std::sqrt(2.0) * b.demko.c * std::pow(lam, -dn) *
                   std::pow(std::pow(lam, -ds) - std::pow(lam, -(ds + 1.0)), -3.0);
  return b;
}

namespace {

// (C_n z)_r with C_n the wrapped banded circulant, summed directly.
CVector banded_circulant_product(const SymbolSequence& seq, std::span<const cplx> z) {
  const long n = static_cast<long>(z.size());
  const long s = seq.bandwidth();
  CVector out(z.size());
  for (long r = 0; r < n; ++r) {
    cplx acc{};
    for (long j = -s; j <= s; ++j) acc += seq.coeff(j) * z[mod(r - j, n)];
    out[r] = acc;
  }
  return out;
}

}  // namespace

SolveReport strang_banded_solve(const SymbolSequence& seq, std::span<const cplx> y, long n,
                                int refine_steps) {
  if (!seq.is_banded()) throw DomainError("banded circulant solve needs a banded symbol");
  if (static_cast<long>(y.size()) != n) throw DimensionError("rhs dimension mismatch");
  const long s = seq.bandwidth();
  if (!(n > 3 * s)) throw DomainError("banded circulant solve needs n > 3 s");
  const long center = n / 2;
  for (long k = 0; k < n; ++k) {
    if (std::labs(center - k) > s && y[k] != cplx{}) {
      throw DomainError("rhs must vanish for |n/2 - k| > s (violated at k = " +
                        std::to_string(k) + ")");
    }
  }

  const auto C = build_circulant(seq, n);
  SolveReport rep;
  rep.method = SolveMethod::StrangBanded;
  rep.x = circulant_solve(C, y);
  const double ynorm = norm2(y);
  for (int step = 0; step < refine_steps; ++step) {
    const CVector Cz = banded_circulant_product(seq, rep.x);
    CVector res(y.begin(), y.end());
    for (long i = 0; i < n; ++i) res[i] -= Cz[i];
    const CVector corr = circulant_solve(C, res);
    for (long i = 0; i < n; ++i) rep.x[i] += corr[i];
  }
  const CVector Cz = banded_circulant_product(seq, rep.x);
  CVector res(y.begin(), y.end());
  for (long i = 0; i < n; ++i) res[i] -= Cz[i];
  rep.residual_history.push_back(ynorm > 0.0 ? norm2(res) / ynorm : 0.0);
  rep.iterations = 1 + refine_steps;

  const auto b = strang_bound(seq, n);
  rep.bound_applied = b.proof_form;
  rep.bound_printed = b.printed_form;
  return rep;
}

double strang_discrepancy(const SymbolSequence& seq, std::span<const cplx> z, long n) {
  if (static_cast<long>(z.size()) != n) throw DimensionError("vector dimension mismatch");
  const long s = seq.bandwidth();
  CVector w(static_cast<size_t>(n));
  for (long r = 0; r < n; ++r) {
    for (long j = -s; j <= s; ++j) {
      const long c = r - j;
      if (c < 0 || c >= n) w[r] += seq.coeff(j) * z[mod(c, n)];
    }
  }
  if (norm2(w) == 0.0) return 0.0;
  const auto T = build_toeplitz(seq, n);
  if (n <= 512) return norm2(dense_solve(to_dense(T), w));
  return norm2(cg_solve(T, w, 1e-13).x);
}

long count_outliers(const std::vector<double>& eigenvalues, double eps) {
  return static_cast<long>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                         [eps](double l) { return std::abs(l - 1.0) > eps; }));
}

ClusterReport clustering_report(const SymbolSequence& seq, long n, double eps) {
  if (n > kDenseLimit) throw DimensionError("clustering report limited to n <= 2048");
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  const EmbeddingSystem sys(seq, n);
  const DenseMatrix A = sys.dense_A();
  const DenseMatrix S = sys.dense_schur();

  Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> ges(A, S, Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) {
    throw NotPositiveDefiniteError("generalized eigensolve A v = lambda S v failed");
  }
  ClusterReport rep{};
  rep.n = n;
  rep.eps = eps;
  const auto& ev = ges.eigenvalues();
  rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end());
  rep.outliers = count_outliers(rep.eigenvalues, eps);

  // ||P_N E P_N||_1 is non-increasing in N; bisect for the smallest N.
  const DenseMatrix E = A - S;
  auto central_norm1 = [&](long N) {
    double best = 0.0;
    for (long c = N; c < n - N; ++c) {
      double col = 0.0;
      for (long r = N; r < n - N; ++r) col += std::abs(E(r, c));
      best = std::max(best, col);
    }
    return best;
  };
  long lo = 0, hi = (n + 1) / 2;  // central_norm1(hi) == 0
  if (central_norm1(0) <= eps) {
    hi = 0;
  } else {
    while (hi - lo > 1) {
      const long mid = (lo + hi) / 2;
      (central_norm1(mid) <= eps ? hi : lo) = mid;
    }
  }
  rep.rank_window = 4 * hi;
  rep.central_norm1 = central_norm1(hi);
  return rep;
}

}  // namespace toeplitz
