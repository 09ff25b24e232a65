#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "toeplitz/structured_ops.hpp"

namespace toeplitz {

/// |a_k| <= c exp(-gamma |k|^lambda). gamma may be +inf (diagonal-only).
struct ExponentialDecay {
  double c;
  double gamma;
  double lambda = 1.0;
};

/// |a_k| <= c (1+|k|)^{-s}, s > 1.
struct PolynomialDecay {
  double c;
  double s;
};

enum class DecayKind { Exponential, Polynomial };

class DecayProfile {
public:
  DecayProfile(ExponentialDecay e);
  DecayProfile(PolynomialDecay p);

  DecayKind kind() const noexcept;
  const ExponentialDecay& exponential() const;
  const PolynomialDecay& polynomial() const;

  double c() const noexcept;
  /// Envelope value at off-diagonal distance d >= 0.
  double envelope(long d) const;

private:
  std::variant<ExponentialDecay, PolynomialDecay> v_;
};

/// Explicit exponential envelope for the inverse of a banded hpd matrix.
struct DemkoBound {
  double kappa;
  long s_band;
  double q;
  double lambda;
  double c;

  /// c * lambda^{|k-l|}
  double envelope(long d) const;
  DecayProfile profile() const;
};

DemkoBound demko_bound(double kappa, long s_band, double norm_A_inv);

struct DecaySample {
  long k;
  double magnitude;
};

/// Log-domain least-squares fit. For exponential fits lambda is either fixed
/// or chosen from {0.25, 0.5, 0.75, 1} by smallest residual. Samples with
/// |k| < 2 or magnitude below 1e-14 are dropped; at least 8 must remain.
DecayProfile fit_decay(const std::vector<DecaySample>& values, DecayKind kind_hint,
                       std::optional<double> fixed_lambda = std::nullopt);

/// Off-diagonal samples |A(row, row+d)| for d in [d_min, d_max] (both sides
/// of the row are averaged when available).
std::vector<DecaySample> row_decay_samples(const DenseMatrix& A, long row, long d_min, long d_max);

using WeightFunction = std::function<double(long)>;

struct WeightReport {
  bool submultiplicative;
  /// 1 / v(-N)^{1/N} and v(N)^{1/N} at N = horizon.
  double root_limit_lo;
  double root_limit_hi;
  /// Same quantities at N = horizon / 2.
  double root_half_lo;
  double root_half_hi;
  /// Submultiplicative and both root estimates move toward 1.
  bool admissible;
};

WeightReport weight_admissible(const WeightFunction& v, long horizon);

struct EntrySample {
  long k;
  long l;
  double magnitude;
};

struct EnvelopeCheck {
  bool ok;
  double worst_ratio;
  double worst_excess;
  long violations;
};

/// True iff every |M_kl| <= envelope(|k-l|) + abs_tol.
EnvelopeCheck decay_envelope_check(const std::vector<EntrySample>& entries,
                                   const std::function<double(long)>& envelope,
                                   double abs_tol = 0.0);
EnvelopeCheck decay_envelope_check(const std::vector<EntrySample>& entries,
                                   const DecayProfile& profile, double abs_tol = 0.0);

std::vector<EntrySample> all_entries(const DenseMatrix& M);

}  // namespace toeplitz
