#include "toeplitz/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "toeplitz/error.hpp"
#include "toeplitz/transform.hpp"

namespace toeplitz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

cplx checked_a0(cplx a0) {
  if (std::abs(a0.imag()) > 1e-14 * std::max(1.0, std::abs(a0.real()))) {
    throw DomainError("a_0 of a hermitian symbol must be real");
  }
  return {a0.real(), 0.0};
}

// Closed form of the full series for c e^{-gamma|k|}: the Poisson kernel.
double exponential_symbol(const TailRule& rule, double omega) {
  const double rho = std::exp(-rule.gamma);
  const double cosv = std::cos(kTwoPi * omega);
  return rule.c * (1.0 - rho * rho) / (1.0 - 2.0 * rho * cosv + rho * rho);
}

bool has_closed_form(const SymbolSequence& seq) {
  if (seq.is_banded()) return true;
  const auto& tail = seq.tail();
  return tail && tail->kind == TailRule::Kind::Exponential && tail->lambda == 1.0;
}

}  // namespace

double TailRule::operator()(long k) const {
  const double ak = static_cast<double>(std::labs(k));
  switch (kind) {
    case Kind::Polynomial:
      return c * std::pow(1.0 + ak, -s);
    case Kind::Exponential:
      return c * std::exp(-gamma * std::pow(ak, lambda));
  }
  return 0.0;
}

long TailRule::negligible_beyond() const {
  if (kind == Kind::Polynomial) return -1;
  // c exp(-gamma k^lambda) < 1e-20 c  <=>  k > (46.05/gamma)^{1/lambda}
  const double k = std::pow(46.06 / gamma, 1.0 / lambda);
  if (!(k < static_cast<double>(kDefaultSeriesHorizon))) return -1;
  return static_cast<long>(std::ceil(k));
}

SymbolSequence::SymbolSequence(CVector coeffs, Support support, std::optional<TailRule> tail)
    : coeffs_(std::move(coeffs)), support_(support), tail_(tail) {
  if (coeffs_.empty()) throw DomainError("symbol needs at least a_0");
  coeffs_[0] = checked_a0(coeffs_[0]);
}

SymbolSequence SymbolSequence::banded(CVector coeffs) {
  return SymbolSequence(std::move(coeffs), Support::Banded, std::nullopt);
}

SymbolSequence SymbolSequence::banded(std::initializer_list<double> coeffs) {
  return banded(CVector(coeffs.begin(), coeffs.end()));
}

SymbolSequence SymbolSequence::truncated(CVector coeffs) {
  return SymbolSequence(std::move(coeffs), Support::Truncated, std::nullopt);
}

SymbolSequence SymbolSequence::with_tail(TailRule rule, long stored) {
  if (rule.c <= 0.0) throw DomainError("tail constant c must be positive");
  if (rule.kind == TailRule::Kind::Polynomial && rule.s <= 0.0) {
    throw DomainError("polynomial tail needs s > 0");
  }
  if (rule.kind == TailRule::Kind::Exponential &&
      (rule.gamma <= 0.0 || rule.lambda <= 0.0 || rule.lambda > 1.0)) {
    throw DomainError("exponential tail needs gamma > 0 and lambda in (0, 1]");
  }
  CVector coeffs(static_cast<size_t>(std::max(stored, 0L) + 1));
  for (long k = 0; k < static_cast<long>(coeffs.size()); ++k) coeffs[k] = rule(k);
  return SymbolSequence(std::move(coeffs), Support::Tail, rule);
}

SymbolSequence SymbolSequence::polynomial(double c, double s, long stored) {
  return with_tail({TailRule::Kind::Polynomial, c, s, 1.0, 1.0}, stored);
}

SymbolSequence SymbolSequence::exponential(double c, double gamma, double lambda, long stored) {
  return with_tail({TailRule::Kind::Exponential, c, 2.0, gamma, lambda}, stored);
}

bool SymbolSequence::available(long k) const {
  return support_ != Support::Truncated || std::labs(k) <= max_index();
}

cplx SymbolSequence::coeff(long k) const {
  const long ak = std::labs(k);
  cplx v;
  if (ak <= max_index()) {
    v = coeffs_[static_cast<size_t>(ak)];
  } else if (support_ == Support::Banded) {
    return {0.0, 0.0};
  } else if (tail_) {
    v = (*tail_)(ak);
  } else {
    throw RangeError("coefficient a_" + std::to_string(k) + " beyond truncation horizon " +
                     std::to_string(max_index()));
  }
  return k < 0 ? std::conj(v) : v;
}

long SymbolSequence::bandwidth() const {
  if (!is_banded()) throw DomainError("bandwidth requested for a non-banded symbol");
  long b = 0;
  for (long k = 0; k <= max_index(); ++k) {
    if (coeffs_[static_cast<size_t>(k)] != cplx{}) b = k;
  }
  return b;
}

double SymbolSequence::l1_norm() const {
  if (!is_banded()) throw DomainError("l1 norm requested for a non-banded symbol");
  double s = std::abs(coeffs_[0]);
  for (long k = 1; k <= max_index(); ++k) s += 2.0 * std::abs(coeffs_[static_cast<size_t>(k)]);
  return s;
}

long SymbolSequence::default_horizon() const {
  if (support_ != Support::Tail) return max_index();
  const long cut = tail_->negligible_beyond();
  return cut < 0 ? kDefaultSeriesHorizon : std::max(cut, max_index());
}

double symbol_eval(const SymbolSequence& seq, double omega, long horizon) {
  if (horizon < seq.max_index() && !seq.has_tail()) {
    throw TruncationError("horizon " + std::to_string(horizon) +
                          " is below the stored index range " + std::to_string(seq.max_index()));
  }
  long top = horizon;
  if (!seq.has_tail()) top = std::min(horizon, seq.max_index());
  double sum = 0.0;
  // smallest terms first
  for (long k = top; k >= 1; --k) {
    const cplx phase = std::polar(1.0, kTwoPi * static_cast<double>(k) * omega);
    sum += (seq.coeff(k) * phase).real();
  }
  return seq.coeff(0).real() + 2.0 * sum;
}

double symbol_value(const SymbolSequence& seq, double omega) {
  if (seq.is_banded()) return symbol_eval(seq, omega, seq.max_index());
  if (has_closed_form(seq)) return exponential_symbol(*seq.tail(), omega);
  return symbol_eval(seq, omega, seq.default_horizon());
}

std::vector<double> symbol_grid(const SymbolSequence& seq, long M, std::optional<long> horizon) {
  if (M < 1) throw DimensionError("symbol grid needs M >= 1");
  std::vector<double> f(static_cast<size_t>(M));
  if (!horizon && has_closed_form(seq) && !seq.is_banded()) {
    for (long l = 0; l < M; ++l) {
      f[l] = exponential_symbol(*seq.tail(), static_cast<double>(l) / static_cast<double>(M));
    }
    return f;
  }
  const long H = horizon.value_or(seq.default_horizon());
  if (H < seq.max_index() && !seq.has_tail()) {
    throw TruncationError("grid horizon below stored index range");
  }
  const long top = seq.has_tail() ? H : std::min(H, seq.max_index());
  CVector folded(static_cast<size_t>(M));
  for (long k = top; k >= 1; --k) {
    const cplx a = seq.coeff(k);
    folded[mod(k, M)] += a;
    folded[mod(-k, M)] += std::conj(a);
  }
  folded[0] += seq.coeff(0);
  // f(l/M) = sum_p folded_p e^{+2 pi i p l / M} = M * idft(folded)_l
  const CVector samples = idft(folded);
  for (long l = 0; l < M; ++l) f[l] = static_cast<double>(M) * samples[l].real();
  return f;
}

SymbolRange symbol_range(const SymbolSequence& seq, long M) {
  const auto grid = symbol_grid(seq, M);
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  const double h = 1.0 / static_cast<double>(M);
  SymbolRange r{*lo, *hi, static_cast<double>(lo - grid.begin()) * h,
                static_cast<double>(hi - grid.begin()) * h};
  if (!has_closed_form(seq)) return r;

  // golden-section refinement on the cells adjacent to the best grid points
  auto refine = [&](double center, double sign) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = center - h, b = center + h;
    auto F = [&](double w) { return sign * symbol_value(seq, w); };
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = F(x1), f2 = F(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-15; ++it) {
      if (f1 < f2) {
        b = x2; x2 = x1; f2 = f1; x1 = b - g * (b - a); f1 = F(x1);
      } else {
        a = x1; x1 = x2; f1 = f2; x2 = a + g * (b - a); f2 = F(x2);
      }
    }
    const double w = 0.5 * (a + b);
    return std::make_pair(w, sign * F(w));
  };
  if (auto [w, v] = refine(r.argmin, 1.0); v < r.f_min) { r.f_min = v; r.argmin = w; }
  if (auto [w, v] = refine(r.argmax, -1.0); v > r.f_max) { r.f_max = v; r.argmax = w; }
  return r;
}

ToeplitzHPD::ToeplitzHPD(CVector first_col) : first_col_(std::move(first_col)) {
  if (first_col_.empty()) throw DimensionError("Toeplitz dimension must be >= 1");
  first_col_[0] = checked_a0(first_col_[0]);
}

cplx ToeplitzHPD::operator()(long k, long l) const {
  return k >= l ? first_col_[static_cast<size_t>(k - l)]
                : std::conj(first_col_[static_cast<size_t>(l - k)]);
}

CirculantMatrix::CirculantMatrix(CVector gen)
    : gen_(std::move(gen)), cache_(std::make_shared<Cache>()) {
  if (gen_.empty()) throw DimensionError("circulant size must be >= 1");
}

cplx CirculantMatrix::operator()(long r, long c) const { return gen_[mod(r - c, m())]; }

CVector CirculantMatrix::first_row() const {
  CVector row(gen_.size());
  for (long k = 0; k < m(); ++k) row[k] = gen_[mod(-k, m())];
  return row;
}

const CVector& CirculantMatrix::eigs() const {
  std::call_once(cache_->once, [this] { cache_->eigs = dft(gen_); });
  return cache_->eigs;
}

ToeplitzHPD build_toeplitz(const SymbolSequence& seq, long n) {
  if (n < 1) throw DimensionError("Toeplitz dimension must be >= 1");
  CVector col(static_cast<size_t>(n));
  for (long j = 0; j < n; ++j) col[j] = seq.coeff(j);
  return ToeplitzHPD(std::move(col));
}

CirculantMatrix build_circulant(const SymbolSequence& seq, long m) {
  if (m < 1) throw DimensionError("circulant size must be >= 1");
  const long n = (m + 1) / 2;  // odd: m = 2n-1, even: m = 2n
  CVector gen(static_cast<size_t>(m));
  gen[0] = seq.coeff(0);
  for (long j = 1; j < n; ++j) {
    const cplx a = seq.coeff(j);
    gen[j] = a;
    gen[m - j] = std::conj(a);
  }
  if (m % 2 == 0) {
    // b_0 sits on the anti-diagonal of the hermitian circulant, so only its
    // real part can be used.
    gen[n] = seq.available(n) ? cplx{seq.coeff(n).real(), 0.0} : cplx{};
  }
  return CirculantMatrix(std::move(gen));
}

cplx ProjectedVector::at(long index) const {
  const long i = index - offset;
  if (i < 0 || i >= size()) return {};
  return data[static_cast<size_t>(i)];
}

double ProjectedVector::norm() const { return norm2(data); }

long section_dimension(long n, Convention convention) {
  return convention == Convention::Biinfinite ? 2 * n - 1 : n;
}

long section_offset(long n, Convention convention) {
  return convention == Convention::Biinfinite ? -n + 1 : 0;
}

ProjectedVector project(const VectorSource& y, long n, Convention convention) {
  if (n < 1) throw DimensionError("projection order must be >= 1");
  ProjectedVector p;
  p.offset = section_offset(n, convention);
  p.data.resize(static_cast<size_t>(section_dimension(n, convention)));
  for (long i = 0; i < p.size(); ++i) p.data[i] = y(p.offset + i);
  return p;
}

ProjectedVector project(const ProjectedVector& y, long n, Convention convention) {
  return project([&y](long k) { return y.at(k); }, n, convention);
}

double norm2(std::span<const cplx> x) {
  double scale = 0.0, ssq = 1.0;
  for (const auto& v : x) {
    for (double c : {v.real(), v.imag()}) {
      if (c == 0.0) continue;
      const double a = std::abs(c);
      if (scale < a) {
        ssq = 1.0 + ssq * (scale / a) * (scale / a);
        scale = a;
      } else {
        ssq += (a / scale) * (a / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

}  // namespace toeplitz
