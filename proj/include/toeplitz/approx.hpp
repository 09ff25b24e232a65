#pragma once

#include <vector>

#include "toeplitz/core.hpp"
#include "toeplitz/decay.hpp"

namespace toeplitz {

enum class Regime { Banded, Exponential, Polynomial };

/// Extremes of the symbol against the extreme eigenvalues of the
/// (2m-1) x (2m-1) circulant generated by a_{-m+1..m-1}.
struct EigBracket {
  double f_min_est;
  double f_max_est;
  double lambda_min_m;
  double lambda_max_m;
  double gap_bound;
  Regime regime;
};

/// Banded symbol with bandwidth b < m:
///   gap_bound = 2 sin(pi b / (2 (2m-1)^2)) ||a||_1.
EigBracket eig_bracket_banded(const SymbolSequence& seq, long m);

/// (2c / (1 - e^{-gamma})) [2 sin(pi m / (2(2m-1)^2)) + e^{-gamma m}]
double eig_gap_exponential(double c, double gamma, long m);
/// (2c / (s - 1)) [2 sin(pi m / (2(2m-1)^2)) + m^{1-s}]
double eig_gap_polynomial(double c, double s, long m);

/// Bracket for a decaying (non-banded) symbol using the matching gap formula.
EigBracket eig_bracket(const SymbolSequence& seq, long m, const DecayProfile& profile);

/// Fourier coefficients alpha_0..alpha_{k_max} of 1/f by the trapezoidal
/// rule. The point count starts at max(quad_points, 4096, 16 k_max) rounded
/// up to a power of two and doubles until successive results agree to 1e-11.
CVector laurent_inverse_coeffs(const SymbolSequence& seq, long k_max, long quad_points = 4096);

/// beta_k for k = -(m-1)/2..(m-1)/2 of an odd-size circulant inverse.
/// values[i] holds beta_{i - half}.
struct InverseCoeffs {
  long half;
  CVector values;

  cplx at(long k) const { return values[static_cast<size_t>(k + half)]; }
};

InverseCoeffs circulant_inverse_coeffs(const CirculantMatrix& C);

struct InverseCoeffPair {
  long k;
  cplx alpha;
  cplx beta;
  double bound;
};

/// alpha_k vs beta_k of the size-m circulant (m odd) for |k| <= (m-1)/2.
std::vector<InverseCoeffPair> compare_inverse_coeffs(const SymbolSequence& seq, long m,
                                                     double bound = 0.0);
double max_coeff_gap(const std::vector<InverseCoeffPair>& pairs);

/// c e^{-gamma m} (exponential profile, gamma read as gamma_1) or
/// c m^{1-s} / (s-1) (polynomial profile). c is caller-supplied.
double inverse_coeff_gap_bound(const DecayProfile& profile, long m, double c);

}  // namespace toeplitz
