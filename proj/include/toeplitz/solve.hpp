#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "toeplitz/core.hpp"
#include "toeplitz/decay.hpp"
#include "toeplitz/structured_ops.hpp"

namespace toeplitz {

enum class SolveMethod { CG, PCG, FiniteSection, Embedding, StrangBanded };

std::string to_string(SolveMethod m);

struct SolveReport {
  CVector x;
  /// Index of x[0] in the doubly infinite numbering (finite-section solves).
  long offset = 0;
  int iterations = 0;
  /// Relative residual ||y - T x|| / ||y|| after each iteration.
  std::vector<double> residual_history;
  /// A-priori error bound attached by the solver, when one applies.
  std::optional<double> bound_applied;
  /// Banded circulant solves also carry the bound in its printed form.
  std::optional<double> bound_printed;
  SolveMethod method = SolveMethod::CG;
};

using LinearOperator = std::function<CVector(std::span<const cplx>)>;

inline constexpr double kDefaultCgTol = 1e-10;
/// p^* T p <= kBreakdownCurvature ||p||^2 is treated as loss of definiteness.
inline constexpr double kBreakdownCurvature = 1e-14;

/// Conjugate gradients with fast Toeplitz products. max_iter = 0 means 4n.
SolveReport cg_solve(const ToeplitzHPD& T, std::span<const cplx> y, double tol = kDefaultCgTol,
                     long max_iter = 0);

/// Preconditioned CG; precond applies an hpd approximation of T^{-1}.
SolveReport pcg_solve(const ToeplitzHPD& T, std::span<const cplx> y, const LinearOperator& precond,
                      double tol = kDefaultCgTol, long max_iter = 0);

/// A_n embedded in the 2n x 2n circulant [[A_n, B_n^*], [B_n, A_n]].
class EmbeddingSystem {
public:
  enum class B0Policy { Known, Zero };

  /// Throws SingularError when C_2n is numerically singular.
  EmbeddingSystem(const SymbolSequence& seq, long n);

  long n() const noexcept { return n_; }
  const CirculantMatrix& circulant() const noexcept { return c2n_; }
  B0Policy b0_policy() const noexcept { return policy_; }
  /// All eigenvalues of C_2n positive, so S_n^{-1} is hpd.
  bool positive_definite() const;

  /// Leading n coordinates of C_2n^{-1} [r; 0], i.e. S_n^{-1} r.
  CVector apply_inverse(std::span<const cplx> r) const;

  DenseMatrix dense_A() const;
  /// Lower-left block B_n (hermitian, first row b_0, a_{n-1}, ..., a_1).
  DenseMatrix dense_B() const;
  /// Leading n x n block M_n of C_2n^{-1}.
  DenseMatrix dense_leading_inverse() const;
  /// S_n = A_n - B_n A_n^{-1} B_n^*.
  DenseMatrix dense_schur() const;

private:
  long n_;
  CirculantMatrix c2n_;
  B0Policy policy_;
};

CVector apply_embedding_precond(const EmbeddingSystem& sys, std::span<const cplx> r);

/// Preconditioner S_n^{-1} as an operator. Throws NotPositiveDefiniteError
/// when C_2n has non-positive eigenvalues.
LinearOperator embedding_preconditioner(const EmbeddingSystem& sys);

/// Bound constant and exponent source for finite-section error estimates:
/// exponential profile -> c1 e^{-gamma n}, polynomial -> c1 n^{(1-2s)/2}.
struct SectionBound {
  DecayProfile profile;
  double c1;
};

double finite_section_bound(const SectionBound& b, long n);

struct SectionOptions {
  double tol = 1e-12;
  /// Use PCG with the embedding preconditioner instead of plain CG.
  bool preconditioned = false;
  std::optional<SectionBound> bound;
};

/// Solves the 2n-1 (biinfinite) or n (singly infinite) finite section
/// A x^{(n)} = P_n y. x is reported with its section offset.
SolveReport finite_section_solve(const SymbolSequence& seq, const VectorSource& y, long n,
                                 Convention convention, const SectionOptions& opts = {});

/// z = leading n coordinates of C_2n^{-1} [y; 0] (one circulant solve).
SolveReport embedding_solve(const SymbolSequence& seq, std::span<const cplx> y, long n);

/// Explicit constants for the banded circulant approximation. The inverse
/// of the banded circulant decays with lambda = q^{1/(2s)}.
struct StrangBound {
  DemkoBound demko;
  /// 2 sqrt(2) c (lambda^s - lambda^{s+1})^{-3} lambda^n
  double proof_form;
  /// 3 sqrt(2) c lambda^{-n} (lambda^{-s} - lambda^{-(s+1)})^{-3}, gamma read as 1
  double printed_form;
};

StrangBound strang_bound(const SymbolSequence& seq, long n);

/// Solves C_n z = y with C_n the wrapped banded circulant, y supported on
/// |n/2 - k| <= s. refine_steps rounds of iterative refinement with exact
/// banded residuals bring the tiny boundary entries of z to full relative
/// accuracy.
SolveReport strang_banded_solve(const SymbolSequence& seq, std::span<const cplx> y, long n,
                                int refine_steps = 2);

/// ||x^{(n)} - z|| evaluated as ||A_n^{-1} (C_n - A_n) z||. (C_n - A_n) only
/// touches the wrapped corners, so the difference is formed without
/// cancellation.
double strang_discrepancy(const SymbolSequence& seq, std::span<const cplx> z, long n);

struct ClusterReport {
  long n;
  double eps;
  /// Spectrum of S_n^{-1} A_n, ascending.
  std::vector<double> eigenvalues;
  long outliers;
  /// 4N for the smallest N with ||P_N E_n P_N||_1 <= eps, E_n = A_n - S_n.
  long rank_window;
  double central_norm1;
};

ClusterReport clustering_report(const SymbolSequence& seq, long n, double eps);

long count_outliers(const std::vector<double>& eigenvalues, double eps);

}  // namespace toeplitz
