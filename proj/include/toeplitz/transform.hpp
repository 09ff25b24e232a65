#pragma once

#include "toeplitz/core.hpp"

namespace toeplitz {

/// Eigenvalues of a circulant in DFT index order l = 0..m-1.
struct SpectrumVector {
  CVector values;

  long size() const noexcept { return static_cast<long>(values.size()); }
  double max_abs_imag() const;
  double min_real() const;
  double max_real() const;
  double min_abs() const;
  double max_abs() const;
};

/// X_l = sum_k x_k e^{-2 pi i k l / m}, unnormalized, exact length m.
CVector dft(std::span<const cplx> x);
/// x_k = (1/m) sum_l X_l e^{+2 pi i k l / m}.
CVector idft(std::span<const cplx> X);

/// values[l] = DFT(first column)[l] = f_m(-l/m). For real coefficient
/// sequences this equals f_m(l/m); as a set it always does.
SpectrumVector circulant_eigenvalues(const CirculantMatrix& C);

}  // namespace toeplitz
