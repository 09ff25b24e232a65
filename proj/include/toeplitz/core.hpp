#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace toeplitz {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Default number of terms used when an infinite symbol has to be summed.
inline constexpr long kDefaultSeriesHorizon = 1'000'000;

/// Closed-form rule for coefficients of an infinite symbol.
///   Polynomial:  a_k = c (1+|k|)^{-s}
///   Exponential: a_k = c exp(-gamma |k|^lambda)
struct TailRule {
  enum class Kind { Polynomial, Exponential };

  Kind kind = Kind::Polynomial;
  double c = 1.0;
  double s = 2.0;
  double gamma = 1.0;
  double lambda = 1.0;

  double operator()(long k) const;

  /// Index beyond which every coefficient is below 1e-20 * c, or -1 if the
  /// rule never gets that small within the default series horizon.
  long negligible_beyond() const;
};

/// Hermitian generating sequence {a_k}. Only a_0..a_K are stored; a_{-k} is
/// conj(a_k) by construction, so the symbol f is real-valued.
///
/// Three support modes exist:
///  - banded: a_k = 0 for |k| > K (finitely supported, K is the bandwidth);
///  - truncated: coefficients beyond K are unknown;
///  - tail: a closed-form rule supplies every a_k, the first K+1 are cached.
class SymbolSequence {
public:
  enum class Support { Banded, Truncated, Tail };

  /// Finitely supported symbol with bandwidth coeffs.size()-1.
  static SymbolSequence banded(CVector coeffs);
  /// Real-valued convenience overload.
  static SymbolSequence banded(std::initializer_list<double> coeffs);
  static SymbolSequence truncated(CVector coeffs);
  static SymbolSequence with_tail(TailRule rule, long stored = 64);

  static SymbolSequence polynomial(double c, double s, long stored = 64);
  static SymbolSequence exponential(double c, double gamma, double lambda = 1.0,
                                    long stored = 64);

  /// a_k for any integer k.
  cplx coeff(long k) const;
  bool available(long k) const;

  Support support() const noexcept { return support_; }
  bool is_banded() const noexcept { return support_ == Support::Banded; }
  bool has_tail() const noexcept { return tail_.has_value(); }
  const std::optional<TailRule>& tail() const noexcept { return tail_; }
  long max_index() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const CVector& stored() const noexcept { return coeffs_; }

  /// Bandwidth of a banded symbol: largest k with a_k != 0.
  long bandwidth() const;
  /// sum_{k=-K}^{K} |a_k| for banded symbols.
  double l1_norm() const;

  /// Horizon used for series evaluation when none is given.
  long default_horizon() const;

private:
  SymbolSequence(CVector coeffs, Support support, std::optional<TailRule> tail);

  CVector coeffs_;
  Support support_;
  std::optional<TailRule> tail_;
};

/// f(omega) = a_0 + 2 sum_{k=1}^{horizon} Re(a_k e^{2 pi i k omega}).
double symbol_eval(const SymbolSequence& seq, double omega, long horizon);

/// f(omega) using the exact symbol when a closed form exists (banded, or
/// exponential tail with lambda = 1), else the default series horizon.
double symbol_value(const SymbolSequence& seq, double omega);

/// Samples f(l/M), l = 0..M-1, of the horizon-truncated symbol. Coefficients
/// are folded modulo M and transformed once, so the cost is O(horizon + M log M).
std::vector<double> symbol_grid(const SymbolSequence& seq, long M,
                                std::optional<long> horizon = std::nullopt);

struct SymbolRange {
  double f_min;
  double f_max;
  double argmin;
  double argmax;
};

/// Extremes of f from a uniform grid of M points refined by golden-section
/// search around the best grid cells.
SymbolRange symbol_range(const SymbolSequence& seq, long M = 1L << 14);

/// Hermitian Toeplitz matrix, entry (k,l) = a_{k-l}, stored by first column.
class ToeplitzHPD {
public:
  explicit ToeplitzHPD(CVector first_col);

  long n() const noexcept { return static_cast<long>(first_col_.size()); }
  const CVector& first_col() const noexcept { return first_col_; }
  cplx operator()(long k, long l) const;

private:
  CVector first_col_;
};

/// Circulant matrix stored by first column. Eigenvalues (DFT of the first
/// column) are computed once on demand; copies share the cache.
class CirculantMatrix {
public:
  explicit CirculantMatrix(CVector gen);

  long m() const noexcept { return static_cast<long>(gen_.size()); }
  const CVector& gen() const noexcept { return gen_; }
  cplx operator()(long r, long c) const;
  CVector first_row() const;

  /// eigs[l] = sum_j gen[j] e^{-2 pi i j l / m}.
  const CVector& eigs() const;

private:
  struct Cache {
    std::once_flag once;
    CVector eigs;
  };

  CVector gen_;
  std::shared_ptr<Cache> cache_;
};

ToeplitzHPD build_toeplitz(const SymbolSequence& seq, long n);

/// Odd m = 2n-1: generated by a_{-n+1..n-1}. Even m = 2n: the embedding
/// layout [[A_n, B_n^*], [B_n, A_n]] with b_0 = Re(a_n) when a_n is
/// available and 0 otherwise.
CirculantMatrix build_circulant(const SymbolSequence& seq, long m);

/// Finite window of a doubly indexed vector; coordinates outside
/// [offset, offset + data.size()) are zero.
struct ProjectedVector {
  CVector data;
  long offset = 0;

  long size() const noexcept { return static_cast<long>(data.size()); }
  cplx at(long index) const;
  double norm() const;
};

enum class Convention { Biinfinite, SinglyInfinite };

using VectorSource = std::function<cplx(long)>;

/// P_n y: indices -n+1..n-1 (biinfinite) or 0..n-1 (singly infinite).
ProjectedVector project(const VectorSource& y, long n, Convention convention);
/// Re-projection of an already finite vector (idempotent on its own image).
ProjectedVector project(const ProjectedVector& y, long n, Convention convention);

/// Dimension of the section for a given n.
long section_dimension(long n, Convention convention);
long section_offset(long n, Convention convention);

double norm2(std::span<const cplx> x);

}  // namespace toeplitz
