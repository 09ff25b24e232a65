#include "toeplitz/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace toeplitz {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per (length, sign) under a lock and never freed.
class PlanCache {
public:
  fftw_plan get(int m, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(m, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(static_cast<size_t>(m));
    auto* out = fftw_alloc_complex(static_cast<size_t>(m));
    fftw_plan plan = fftw_plan_dft_1d(m, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

CVector run(std::span<const cplx> x, int sign) {
  const auto m = static_cast<int>(x.size());
  CVector in(x.begin(), x.end());
  CVector out(x.size());
  if (m == 0) return out;
  fftw_plan plan = plan_cache().get(m, sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

CVector dft(std::span<const cplx> x) { return run(x, FFTW_FORWARD); }

CVector idft(std::span<const cplx> X) {
  CVector out = run(X, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(X.size());
  for (auto& v : out) v *= scale;
  return out;
}

SpectrumVector circulant_eigenvalues(const CirculantMatrix& C) { return {C.eigs()}; }

double SpectrumVector::max_abs_imag() const {
  double r = 0.0;
  for (const auto& v : values) r = std::max(r, std::abs(v.imag()));
  return r;
}

double SpectrumVector::min_real() const {
  double r = INFINITY;
  for (const auto& v : values) r = std::min(r, v.real());
  return r;
}

double SpectrumVector::max_real() const {
  double r = -INFINITY;
  for (const auto& v : values) r = std::max(r, v.real());
  return r;
}

double SpectrumVector::min_abs() const {
  double r = INFINITY;
  for (const auto& v : values) r = std::min(r, std::abs(v));
  return r;
}

double SpectrumVector::max_abs() const {
  double r = 0.0;
  for (const auto& v : values) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace toeplitz
