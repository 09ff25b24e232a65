#include "toeplitz/decay.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "toeplitz/error.hpp"

namespace toeplitz {

DecayProfile::DecayProfile(ExponentialDecay e) : v_(e) {
  if (!(e.c > 0.0) || !(e.gamma > 0.0) || !(e.lambda > 0.0) || e.lambda > 1.0) {
    throw DomainError("exponential profile needs c > 0, gamma > 0, lambda in (0, 1]");
  }
}

DecayProfile::DecayProfile(PolynomialDecay p) : v_(p) {
  if (!(p.c > 0.0)) throw DomainError("polynomial profile needs c > 0");
  if (!(p.s > 1.0)) throw DomainError("polynomial profile needs s > 1");
}

DecayKind DecayProfile::kind() const noexcept {
  return std::holds_alternative<ExponentialDecay>(v_) ? DecayKind::Exponential
                                                      : DecayKind::Polynomial;
}

const ExponentialDecay& DecayProfile::exponential() const {
  if (auto* e = std::get_if<ExponentialDecay>(&v_)) return *e;
  throw DomainError("profile is not exponential");
}

const PolynomialDecay& DecayProfile::polynomial() const {
  if (auto* p = std::get_if<PolynomialDecay>(&v_)) return *p;
  throw DomainError("profile is not polynomial");
}

double DecayProfile::c() const noexcept {
  return std::visit([](const auto& p) { return p.c; }, v_);
}

double DecayProfile::envelope(long d) const {
  const double ad = static_cast<double>(std::labs(d));
  if (auto* e = std::get_if<ExponentialDecay>(&v_)) {
    if (ad == 0.0) return e->c;
    if (std::isinf(e->gamma)) return 0.0;
    return e->c * std::exp(-e->gamma * std::pow(ad, e->lambda));
  }
  const auto& p = std::get<PolynomialDecay>(v_);
  return p.c * std::pow(1.0 + ad, -p.s);
}

double DemkoBound::envelope(long d) const {
  if (d == 0) return c;
  return c * std::pow(lambda, static_cast<double>(std::labs(d)));
}

DecayProfile DemkoBound::profile() const {
  const double gamma = lambda > 0.0 ? -std::log(lambda) : std::numeric_limits<double>::infinity();
  return DecayProfile(ExponentialDecay{c, gamma, 1.0});
}

DemkoBound demko_bound(double kappa, long s_band, double norm_A_inv) {
  if (!(kappa >= 1.0)) throw DomainError("condition number must be >= 1");
  if (s_band < 1) throw DomainError("bandwidth must be >= 1");
  if (!(norm_A_inv > 0.0)) throw DomainError("||A^{-1}|| must be positive");
  const double sk = std::sqrt(kappa);
  DemkoBound b{};
  b.kappa = kappa;
  b.s_band = s_band;
  b.q = (sk - 1.0) / (sk + 1.0);
  b.lambda = std::pow(b.q, 1.0 / static_cast<double>(s_band));
  b.c = norm_A_inv * std::max(1.0, (1.0 + sk) * (1.0 + sk) / (2.0 * kappa));
  return b;
}

namespace {

struct LineFit {
  double intercept;
  double slope;
  double sse;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw FitError("degenerate abscissae in decay fit");
  LineFit f{};
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    f.sse += r * r;
  }
  return f;
}

}  // namespace

DecayProfile fit_decay(const std::vector<DecaySample>& values, DecayKind kind_hint,
                       std::optional<double> fixed_lambda) {
  std::vector<double> ak, logm;
  for (const auto& s : values) {
    if (std::labs(s.k) < 2 || !(s.magnitude >= 1e-14)) continue;
    ak.push_back(static_cast<double>(std::labs(s.k)));
    logm.push_back(std::log(s.magnitude));
  }
  if (ak.size() < 8) {
    throw FitError("decay fit needs >= 8 samples with |k| >= 2, got " + std::to_string(ak.size()));
  }

  if (kind_hint == DecayKind::Polynomial) {
    std::vector<double> x(ak.size());
    for (size_t i = 0; i < ak.size(); ++i) x[i] = std::log1p(ak[i]);
    const auto f = least_squares(x, logm);
    if (!(-f.slope > 1.0)) throw FitError("fitted polynomial exponent " + std::to_string(-f.slope) + " is not > 1");
    return DecayProfile(PolynomialDecay{std::exp(f.intercept), -f.slope});
  }

  std::vector<double> grid = {0.25, 0.5, 0.75, 1.0};
  if (fixed_lambda) grid = {*fixed_lambda};
  std::optional<LineFit> best;
  double best_lambda = 1.0;
  for (double lam : grid) {
    std::vector<double> x(ak.size());
    for (size_t i = 0; i < ak.size(); ++i) x[i] = std::pow(ak[i], lam);
    const auto f = least_squares(x, logm);
    if (!best || f.sse < best->sse) {
      best = f;
      best_lambda = lam;
    }
  }
  const double gamma = -best->slope;
  if (!(gamma > 0.0)) throw FitError("samples do not decay");
  return DecayProfile(ExponentialDecay{std::exp(best->intercept), gamma, best_lambda});
}

std::vector<DecaySample> row_decay_samples(const DenseMatrix& A, long row, long d_min, long d_max) {
  std::vector<DecaySample> out;
  for (long d = d_min; d <= d_max; ++d) {
    double sum = 0.0;
    int count = 0;
    if (row + d < A.cols()) { sum += std::abs(A(row, row + d)); ++count; }
    if (row - d >= 0) { sum += std::abs(A(row, row - d)); ++count; }
    if (count > 0) out.push_back({d, sum / count});
  }
  return out;
}

WeightReport weight_admissible(const WeightFunction& v, long horizon) {
  if (horizon < 64) throw DomainError("weight admissibility needs horizon >= 64");
  const long half = horizon / 2;
  for (long k = -horizon; k <= horizon; ++k) {
    if (!(v(k) > 0.0)) throw DomainError("weight must be positive, v(" + std::to_string(k) + ") <= 0");
  }

  WeightReport r{};
  r.submultiplicative = true;
  const long step = std::max(1L, half / 64);
  for (long k = -half; k <= half && r.submultiplicative; k += step) {
    for (long l = -half; l <= half; l += step) {
      if (v(k + l) > v(k) * v(l) * (1.0 + 1e-12)) {
        r.submultiplicative = false;
        break;
      }
    }
  }

  auto roots = [&](long N) {
    const double inv = 1.0 / static_cast<double>(N);
    return std::make_pair(std::pow(v(-N), -inv), std::pow(v(N), inv));
  };
  std::tie(r.root_half_lo, r.root_half_hi) = roots(half);
  std::tie(r.root_limit_lo, r.root_limit_hi) = roots(horizon);

  auto trends = [](double at_half, double at_full) {
    const double dh = std::abs(at_half - 1.0), df = std::abs(at_full - 1.0);
    return df <= 1e-12 || df < dh * (1.0 - 1e-9);
  };
  r.admissible = r.submultiplicative && trends(r.root_half_lo, r.root_limit_lo) &&
                 trends(r.root_half_hi, r.root_limit_hi);
  return r;
}

EnvelopeCheck decay_envelope_check(const std::vector<EntrySample>& entries,
                                   const std::function<double(long)>& envelope, double abs_tol) {
  EnvelopeCheck r{true, 0.0, 0.0, 0};
  for (const auto& e : entries) {
    const double env = envelope(e.k - e.l);
    const double excess = e.magnitude - env;
    if (excess > abs_tol) {
      r.ok = false;
      ++r.violations;
    }
    r.worst_excess = std::max(r.worst_excess, excess);
    if (env > 0.0) {
      r.worst_ratio = std::max(r.worst_ratio, e.magnitude / env);
    } else if (e.magnitude > 0.0) {
      r.worst_ratio = std::numeric_limits<double>::infinity();
    }
  }
  return r;
}

EnvelopeCheck decay_envelope_check(const std::vector<EntrySample>& entries,
                                   const DecayProfile& profile, double abs_tol) {
  return decay_envelope_check(entries, [&](long d) { return profile.envelope(d); }, abs_tol);
}

std::vector<EntrySample> all_entries(const DenseMatrix& M) {
  std::vector<EntrySample> out;
  out.reserve(static_cast<size_t>(M.size()));
  for (long k = 0; k < M.rows(); ++k)
    for (long l = 0; l < M.cols(); ++l) out.push_back({k, l, std::abs(M(k, l))});
  return out;
}

}  // namespace toeplitz
