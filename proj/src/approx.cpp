#include "toeplitz/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "toeplitz/error.hpp"
#include "toeplitz/transform.hpp"

namespace toeplitz {

namespace {

constexpr long kMaxQuadPoints = 1L << 22;
constexpr double kQuadAgreement = 1e-11;

long next_pow2(long v) {
  long p = 1;
  while (p < v) p <<= 1;
  return p;
}

double sampling_term(long m) {
  const double d = 2.0 * static_cast<double>(m) - 1.0;
  return 2.0 * std::sin(std::numbers::pi * static_cast<double>(m) / (2.0 * d * d));
}

EigBracket bracket_common(const SymbolSequence& seq, long m) {
  if (m < 1) throw DomainError("bracket needs m >= 1");
  const auto C = build_circulant(seq, 2 * m - 1);
  const auto spec = circulant_eigenvalues(C);
  const auto range = symbol_range(seq);
  EigBracket b{};
  b.f_min_est = range.f_min;
  b.f_max_est = range.f_max;
  b.lambda_min_m = spec.min_real();
  b.lambda_max_m = spec.max_real();
  return b;
}

CVector trapezoid_alpha(const SymbolSequence& seq, long k_max, long Q) {
  const auto f = symbol_grid(seq, Q);
  CVector recip(static_cast<size_t>(Q));
  for (long l = 0; l < Q; ++l) {
    if (!(f[l] > 0.0)) {
      throw NotPositiveDefiniteError("symbol is not positive on the quadrature grid (f(" +
                                     std::to_string(static_cast<double>(l) / Q) + ") = " +
                                     std::to_string(f[l]) + ")");
    }
    recip[l] = 1.0 / f[l];
  }
  // alpha_k = (L^{-1})_{k,0} = (1/Q) sum_l (1/f(l/Q)) e^{-2 pi i k l / Q}.
  // For real symbols the sign of the exponent is immaterial.
  CVector all = dft(recip);
  for (auto& a : all) a /= static_cast<double>(Q);
  all.resize(static_cast<size_t>(k_max + 1));
  return all;
}

}  // namespace

EigBracket eig_bracket_banded(const SymbolSequence& seq, long m) {
  if (!seq.is_banded()) throw DomainError("eig_bracket_banded needs a banded symbol");
  const long band = seq.bandwidth();
  if (m <= band) throw DomainError("bracket needs m > bandwidth");
  auto b = bracket_common(seq, m);
  const double d = 2.0 * static_cast<double>(m) - 1.0;
  b.gap_bound = 2.0 * std::sin(std::numbers::pi * static_cast<double>(band) / (2.0 * d * d)) *
                seq.l1_norm();
  b.regime = Regime::Banded;
  return b;
}

double eig_gap_exponential(double c, double gamma, long m) {
  if (!(c > 0.0) || !(gamma > 0.0) || m < 1) throw DomainError("need c > 0, gamma > 0, m >= 1");
  return 2.0 * c / (1.0 - std::exp(-gamma)) *
         (sampling_term(m) + std::exp(-gamma * static_cast<double>(m)));
}

double eig_gap_polynomial(double c, double s, long m) {
  if (!(s > 1.0)) throw DomainError("polynomial gap bound needs s > 1");
  if (!(c > 0.0) || m < 1) throw DomainError("need c > 0, m >= 1");
  return 2.0 * c / (s - 1.0) *
         (sampling_term(m) + std::pow(static_cast<double>(m), 1.0 - s));
}

EigBracket eig_bracket(const SymbolSequence& seq, long m, const DecayProfile& profile) {
  auto b = bracket_common(seq, m);
  if (profile.kind() == DecayKind::Exponential) {
    const auto& e = profile.exponential();
    if (e.lambda != 1.0) throw DomainError("exponential gap bound assumes lambda = 1");
    b.gap_bound = eig_gap_exponential(e.c, e.gamma, m);
    b.regime = Regime::Exponential;
  } else {
    const auto& p = profile.polynomial();
    b.gap_bound = eig_gap_polynomial(p.c, p.s, m);
    b.regime = Regime::Polynomial;
  }
  return b;
}

CVector laurent_inverse_coeffs(const SymbolSequence& seq, long k_max, long quad_points) {
  if (k_max < 0) throw DomainError("k_max must be >= 0");
  long Q = next_pow2(std::max({quad_points, 4096L, 16 * k_max}));
  CVector prev = trapezoid_alpha(seq, k_max, Q);
  while (true) {
    if (2 * Q > kMaxQuadPoints) {
      throw ConvergenceError("trapezoidal quadrature did not reach 1e-11 agreement");
    }
    Q *= 2;
    CVector next = trapezoid_alpha(seq, k_max, Q);
    double diff = 0.0;
    for (size_t i = 0; i < next.size(); ++i) diff = std::max(diff, std::abs(next[i] - prev[i]));
    prev = std::move(next);
    if (diff <= kQuadAgreement) return prev;
  }
}

InverseCoeffs circulant_inverse_coeffs(const CirculantMatrix& C) {
  if (C.m() % 2 == 0) throw DomainError("inverse coefficients need an odd circulant size");
  const CVector col = circulant_inverse_column(C);
  InverseCoeffs out;
  out.half = (C.m() - 1) / 2;
  out.values.resize(static_cast<size_t>(C.m()));
  for (long k = -out.half; k <= out.half; ++k) {
    out.values[k + out.half] = col[(k + C.m()) % C.m()];
  }
  return out;
}

std::vector<InverseCoeffPair> compare_inverse_coeffs(const SymbolSequence& seq, long m,
                                                     double bound) {
  const auto beta = circulant_inverse_coeffs(build_circulant(seq, m));
  const CVector alpha = laurent_inverse_coeffs(seq, beta.half);
  std::vector<InverseCoeffPair> pairs;
  for (long k = -beta.half; k <= beta.half; ++k) {
    const cplx a = k >= 0 ? alpha[k] : std::conj(alpha[-k]);
    pairs.push_back({k, a, beta.at(k), bound});
  }
  return pairs;
}

double max_coeff_gap(const std::vector<InverseCoeffPair>& pairs) {
  double g = 0.0;
  for (const auto& p : pairs) g = std::max(g, std::abs(p.alpha - p.beta));
  return g;
}

double inverse_coeff_gap_bound(const DecayProfile& profile, long m, double c) {
  const double dm = static_cast<double>(m);
  if (profile.kind() == DecayKind::Exponential) {
    return c * std::exp(-profile.exponential().gamma * dm);
  }
  const double s = profile.polynomial().s;
  return c * std::pow(dm, 1.0 - s) / (s - 1.0);
}

}  // namespace toeplitz
