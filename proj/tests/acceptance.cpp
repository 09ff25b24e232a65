// Acceptance suite. One line per criterion: PASS/FAIL, the measured values
// and the pinned threshold. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "toeplitz/approx.hpp"
#include "toeplitz/decay.hpp"
#include "toeplitz/experiments.hpp"
#include "toeplitz/solve.hpp"
#include "toeplitz/structured_ops.hpp"
#include "toeplitz/transform.hpp"

using namespace toeplitz;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<SymbolSequence> three_families() {
  return {SymbolSequence::banded({3.0, 1.0}), SymbolSequence::exponential(1.0, 1.0),
          SymbolSequence::polynomial(1.0, 2.0)};
}

// 1. fast paths against dense products and solves
Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  double worst_mv = 0.0, worst_cs = 0.0;
  for (const auto& seq : three_families()) {
    CVector a(512);
    for (long k = 0; k < 512; ++k) a[k] = seq.coeff(k);
    for (long n = 3; n <= 512; ++n) {
      auto x = oracle::random_vector(rng, n);
      // dense product straight from the coefficients
      CVector want(static_cast<size_t>(n), 0.0);
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) want[i] += (i >= j ? a[i - j] : std::conj(a[j - i])) * x[j];
      worst_mv = std::max(worst_mv, oracle::rel_err(toeplitz_matvec(build_toeplitz(seq, n), x), want));
    }
    for (long m : {3L, 64L, 255L, 256L, 511L, 512L}) {
      auto C = build_circulant(seq, m);
      auto y = oracle::random_vector(rng, m);
      auto want = oracle::lu_solve(oracle::circulant_matrix(C.gen()), y);
      worst_cs = std::max(worst_cs, oracle::rel_err(circulant_solve(C, y), want));
    }
  }
  const double t = seconds_since(t0);
  return {worst_mv <= 1e-12 && worst_cs <= 1e-10 && t < 10.0,
          fmt("matvec %.2e (<=1e-12), circulant solve %.2e (<=1e-10), %.2fs (<10s)", worst_mv,
              worst_cs, t)};
}

// 2. quadrature alpha vs closed form, circulant beta vs dense inverse
Outcome inverse_coefficient_oracles() {
  const double rho = 0.5;
  auto seq = SymbolSequence::banded({1.0 + rho * rho, -rho});
  auto alpha = laurent_inverse_coeffs(seq, 50);
  double worst_a = 0.0;
  for (long k = 0; k <= 50; ++k) {
    worst_a = std::max(worst_a, std::abs(alpha[k] - std::pow(rho, k) / (1.0 - rho * rho)));
  }
  auto C = build_circulant(seq, 129);
  auto beta = circulant_inverse_coeffs(C);
  auto inv = oracle::lu_inverse(oracle::circulant_matrix(C.gen()));
  double worst_b = 0.0;
  for (long k = -beta.half; k <= beta.half; ++k) {
    worst_b = std::max(worst_b, std::abs(beta.at(k) - inv((k + 129) % 129, 0)));
  }
  return {worst_a <= 1e-10 && worst_b <= 1e-10,
          fmt("alpha %.2e (<=1e-10), beta %.2e (<=1e-10)", worst_a, worst_b)};
}

// 3. rate of max|alpha_k - beta_k| for the s=2 family; circulants of size 2m-1
Outcome coefficient_gap_rate() {
  const auto t0 = std::chrono::steady_clock::now();
  auto seq = SymbolSequence::polynomial(1.0, 2.0);
  std::vector<double> gaps;
  for (long m : {65L, 129L, 257L, 513L}) gaps.push_back(max_coeff_gap(compare_inverse_coeffs(seq, 2 * m - 1)));
  bool ok = true;
  std::string ratios;
  for (size_t i = 1; i < gaps.size(); ++i) {
    const double r = std::log2(gaps[i] / gaps[i - 1]);
    ok = ok && r >= -1.35 && r <= -0.65;
    ratios += fmt("%s%.3f", i > 1 ? ", " : "", r);
  }
  const double t = seconds_since(t0);
  ok = ok && t < 20.0;
  return {ok, fmt("log2 ratios [%s] (in [-1.35, -0.65]), gaps %.2e..%.2e, %.2fs (<20s)",
                  ratios.c_str(), gaps.front(), gaps.back(), t)};
}

ExperimentConfig example_config() {
  ExperimentConfig cfg;
  cfg.family = Family::Polynomial;
  cfg.s = 2.0;
  cfg.n_grid = make_grid(8, 352, 8);
  cfg.n0 = 8192;
  cfg.seed = 20240601;
  cfg.tol = 1e-12;
  return cfg;
}

// 4. finite-section error against cond(L) n^{-3/2}
Outcome example1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = run_experiment(Experiment::Example1, example_config());
  long violations = 0;
  double worst = 0.0;
  for (const auto& r : rows) {
    if (r.error_fs > r.bound) ++violations;
    worst = std::max(worst, r.error_fs / r.bound);
  }
  const double slope = loglog_slope(rows, 64, 352);
  const double t = seconds_since(t0);
  return {violations == 0 && slope <= -1.2 && t < 60.0 && rows.size() == 44,
          fmt("%zu rows, max error/bound %.3f (<=1), slope %.3f (<=-1.2), %.2fs (<60s)", rows.size(),
              worst, slope, t)};
}

// 5. embedding error vs finite-section error
Outcome example2() {
  const auto rows = run_experiment(Experiment::Example2, example_config());
  double lo = 1e300, hi = 0.0;
  for (const auto& r : rows) {
    if (r.n < 32) continue;
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  return {lo >= 1.0 / 3.0 && hi <= 3.0, fmt("ratio in [%.3f, %.3f] (within [1/3, 3])", lo, hi)};
}

// 6. circulant eigenvalue brackets for 3 + 2cos
Outcome eigenvalue_brackets() {
  auto seq = SymbolSequence::banded({3.0, 1.0});
  bool ok = true;
  std::string detail;
  for (long m : {10L, 50L, 200L}) {
    const auto b = eig_bracket_banded(seq, m);
    const double f_min = 1.0, f_max = 5.0;
    const double d = 2.0 * m - 1.0;
    const double bound = 2.0 * std::sin(std::numbers::pi / (2.0 * d * d)) * 5.0;
    const bool inside = b.lambda_min_m >= f_min - 1e-12 && b.lambda_max_m <= f_max + 1e-12;
    const bool gaps = b.lambda_min_m - f_min <= bound && f_max - b.lambda_max_m <= bound &&
                      std::abs(b.gap_bound - bound) <= 1e-15;
    ok = ok && inside && gaps;
    detail += fmt("%sm=%ld gaps %.2e/%.2e <= %.2e", detail.empty() ? "" : "; ", m,
                  b.lambda_min_m - f_min, f_max - b.lambda_max_m, bound);
  }
  return {ok, detail};
}

// 7. dense inverse of the tridiagonal section under the Demko envelope
Outcome demko_envelope() {
  const long n = 256;
  auto A = oracle::toeplitz_matrix(SymbolSequence::banded({3.0, 1.0}), n);
  auto ev = dense_eigenvalues(A);
  auto bound = demko_bound(ev.back() / ev.front(), 1, 1.0 / ev.front());
  auto check = decay_envelope_check(all_entries(dense_inverse(A)),
                                    [&](long d) { return bound.envelope(d); }, 1e-10);
  return {check.ok && check.violations == 0,
          fmt("violations %ld (=0), worst ratio %.3f, lambda %.4f, c %.4f", check.violations,
              check.worst_ratio, bound.lambda, bound.c)};
}

// 8. bounded outliers and mesh-independent PCG
Outcome clustering() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.family = Family::Exponential;
  cfg.gamma = 1.0;
  cfg.eps = 0.01;
  cfg.tol = 1e-10;
  cfg.n_grid = {64, 128, 256};
  const auto rows = run_experiment(Experiment::Clustering, cfg);
  long omin = 1L << 30, omax = 0, imin = 1L << 30, imax = 0;
  for (const auto& r : rows) {
    omin = std::min(omin, r.outliers);
    omax = std::max(omax, r.outliers);
    imin = std::min(imin, r.iterations);
    imax = std::max(imax, r.iterations);
  }
  const double t = seconds_since(t0);
  return {omax - omin <= 4 && imax - imin <= 2 && t < 30.0,
          fmt("outliers %ld..%ld (spread <=4), pcg iterations %ld..%ld (spread <=2), %.2fs (<30s)",
              omin, omax, imin, imax, t)};
}

// 9. Schur complement vs inverse of the leading block of the inverse circulant
Outcome schur_duality() {
  double worst = 0.0;
  for (const auto& seq : three_families()) {
    for (long n : {8L, 16L, 32L, 64L}) {
      EmbeddingSystem sys(seq, n);
      Eigen::MatrixXcd M = oracle::lu_inverse(oracle::circulant_matrix(sys.circulant().gen()))
                               .topLeftCorner(n, n);
      worst = std::max(worst, oracle::rel_err(sys.dense_schur(), oracle::lu_inverse(M)));
    }
  }
  return {worst <= 1e-10, fmt("max relative difference %.2e (<=1e-10)", worst)};
}

// 10. banded circulant solve converges geometrically to the section solve
Outcome strang_rate() {
  auto seq = SymbolSequence::banded({3.0, 1.0});
  std::vector<double> ns, logs;
  std::string detail;
  bool decreasing = true;
  double prev = 1e300;
  for (long n : {32L, 64L, 128L}) {
    CVector y(static_cast<size_t>(n), 0.0);
    y[n / 2] = 1.0;
    const auto z = strang_banded_solve(seq, y, n);
    const double err = strang_discrepancy(seq, z.x, n);
    decreasing = decreasing && err < prev;
    prev = err;
    ns.push_back(static_cast<double>(n));
    logs.push_back(std::log(err));
    detail += fmt("n=%ld %.2e, ", n, err);
  }
  const double mx = (ns[0] + ns[1] + ns[2]) / 3.0, my = (logs[0] + logs[1] + logs[2]) / 3.0;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < 3; ++i) {
    sxx += (ns[i] - mx) * (ns[i] - mx);
    sxy += (ns[i] - mx) * (logs[i] - my);
  }
  const double ratio = std::exp(sxy / sxx);
  const double lambda = strang_bound(seq, 64).demko.lambda;
  return {decreasing && ratio <= lambda + 0.1,
          detail + fmt("fitted ratio %.4f (<= lambda + 0.1 = %.4f)", ratio, lambda + 0.1)};
}

// 11. decay exponents of inverse middle rows at n = 512
Outcome decay_closure() {
  bool ok = true;
  std::string detail;
  for (double s : {1.5, 2.0, 3.0}) {
    ExperimentConfig cfg;
    cfg.family = Family::Polynomial;
    cfg.s = s;
    cfg.n_grid = {512};
    const double fitted = run_experiment(Experiment::Decay, cfg).front().fit_s;
    ok = ok && fitted >= s - 0.4;
    detail += fmt("s=%.1f -> %.3f (>=%.1f); ", s, fitted, s - 0.4);
  }
  ExperimentConfig cfg;
  cfg.family = Family::Exponential;
  cfg.gamma = 1.0;
  cfg.lambda = 0.5;
  cfg.n_grid = {512};
  const auto row = run_experiment(Experiment::Decay, cfg).front();
  ok = ok && row.fit_lambda >= 0.35 && row.fit_lambda <= 0.65;
  detail += fmt("lambda=0.5 -> %.2f (in [0.35, 0.65])", row.fit_lambda);
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"fast paths vs dense oracle", oracle_equivalence},
      {"inverse coefficient oracles", inverse_coefficient_oracles},
      {"circulant coefficient gap rate", coefficient_gap_rate},
      {"finite sections: error bound and slope", example1},
      {"embedding vs finite section error", example2},
      {"circulant eigenvalue brackets", eigenvalue_brackets},
      {"banded inverse decay envelope", demko_envelope},
      {"preconditioned spectrum clustering", clustering},
      {"Schur complement duality", schur_duality},
      {"banded circulant convergence rate", strang_rate},
      {"inverse decay closure", decay_closure},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %-40s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed;
}
