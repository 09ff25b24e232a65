#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "toeplitz/decay.hpp"
#include "toeplitz/error.hpp"

using namespace toeplitz;

TEST_CASE("demko_bound closed-form cases") {
  auto a = demko_bound(1.0, 1, 1.0);
  CHECK(a.q == 0.0);
  CHECK(a.lambda == 0.0);
  CHECK(a.c == doctest::Approx(2.0));
  CHECK(a.envelope(0) == doctest::Approx(2.0));
  CHECK(a.envelope(3) == 0.0);

  auto b = demko_bound(9.0, 1, 1.0);
  CHECK(b.q == doctest::Approx(0.5));
  CHECK(b.lambda == doctest::Approx(0.5));
  CHECK(b.c == doctest::Approx(1.0));
  CHECK(b.envelope(2) == doctest::Approx(0.25));

  CHECK_THROWS_AS(demko_bound(0.5, 1, 1.0), DomainError);
  CHECK_THROWS_AS(demko_bound(2.0, 0, 1.0), DomainError);
}

TEST_CASE("demko lambda is monotone in kappa and bandwidth") {
  double prev_k = -1.0;
  for (double kappa = 1.0; kappa < 1e4; kappa *= 1.7) {
    const double lam = demko_bound(kappa, 2, 1.0).lambda;
    CHECK(lam >= prev_k);
    prev_k = lam;
    double prev_s = -1.0;
    for (long s = 1; s <= 8; ++s) {
      const double ls = demko_bound(kappa, s, 1.0).lambda;
      CHECK(ls >= prev_s);
      prev_s = ls;
    }
  }
}

TEST_CASE("demko envelope dominates banded inverses") {
  std::mt19937_64 rng(31);
  std::vector<SymbolSequence> family = {SymbolSequence::banded({3.0, 1.0}),
                                        SymbolSequence::banded({4.0, 1.0, 0.5}),
                                        oracle::random_hpd_banded(rng, 3)};
  for (const auto& seq : family) {
    for (long n : {64L, 128L, 256L}) {
      auto A = oracle::toeplitz_matrix(seq, n);
      auto ev = dense_eigenvalues(A);
      auto bound = demko_bound(ev.back() / ev.front(), seq.bandwidth(), 1.0 / ev.front());
      auto check = decay_envelope_check(all_entries(dense_inverse(A)),
                                        [&](long d) { return bound.envelope(d); }, 1e-10);
      CHECK(check.ok);
      CHECK(check.violations == 0);
      CHECK(check.worst_ratio <= 1.0 + 1e-8);
    }
  }
}

TEST_CASE("decay_envelope_check examples") {
  DenseMatrix I = DenseMatrix::Identity(10, 10);
  CHECK(decay_envelope_check(all_entries(I), DecayProfile(ExponentialDecay{1.0, 0.5})).ok);
  CHECK(decay_envelope_check(all_entries(I), DecayProfile(PolynomialDecay{1.0, 2.0})).ok);

  auto A = oracle::toeplitz_matrix(SymbolSequence::banded({3.0, 1.0}), 128);
  auto ev = dense_eigenvalues(A);
  auto b = demko_bound(ev.back() / ev.front(), 1, 1.0 / ev.front());
  CHECK(decay_envelope_check(all_entries(dense_inverse(A)), b.profile(), 1e-10).ok);

  auto P = oracle::toeplitz_matrix(SymbolSequence::polynomial(1.0, 2.0), 60);
  auto r = decay_envelope_check(all_entries(P), DecayProfile(PolynomialDecay{1.0 + 1e-12, 2.0}));
  CHECK(r.ok);
  CHECK(r.worst_ratio <= 1.0);

  auto bad = decay_envelope_check(all_entries(P), DecayProfile(PolynomialDecay{0.5, 2.0}));
  CHECK_FALSE(bad.ok);
  CHECK(bad.violations > 0);
}

TEST_CASE("fit_decay recovers exact models") {
  std::vector<DecaySample> e, p;
  for (long k = 1; k <= 40; ++k) {
    e.push_back({k, 2.0 * std::exp(-0.5 * k)});
    p.push_back({k, std::pow(1.0 + k, -2.0)});
  }
  auto fe = fit_decay(e, DecayKind::Exponential);
  CHECK(fe.exponential().lambda == 1.0);
  CHECK(std::abs(fe.c() - 2.0) < 1e-6);
  CHECK(std::abs(fe.exponential().gamma - 0.5) < 1e-6);

  auto fp = fit_decay(p, DecayKind::Polynomial);
  CHECK(std::abs(fp.polynomial().s - 2.0) < 1e-6);
  CHECK(std::abs(fp.c() - 1.0) < 1e-6);

  std::vector<DecaySample> root;
  for (long k = 2; k <= 200; ++k) root.push_back({k, 3.0 * std::exp(-0.7 * std::sqrt(k))});
  auto fr = fit_decay(root, DecayKind::Exponential);
  CHECK(fr.exponential().lambda == 0.5);
  CHECK(std::abs(fr.exponential().gamma - 0.7) < 1e-9);
}

TEST_CASE("fit_decay error paths") {
  std::vector<DecaySample> few;
  for (long k = 0; k < 9; ++k) few.push_back({k, std::exp(-1.0 * k)});
  // k = 0, 1 dropped leaves 7
  CHECK_THROWS_AS(fit_decay(few, DecayKind::Exponential), FitError);

  std::vector<DecaySample> zeros;
  for (long k = 2; k < 30; ++k) zeros.push_back({k, k % 2 ? 0.0 : 1e-3});
  CHECK_THROWS_AS(fit_decay(zeros, DecayKind::Polynomial), FitError);

  std::vector<DecaySample> growing;
  for (long k = 2; k < 30; ++k) growing.push_back({k, std::exp(0.1 * k)});
  CHECK_THROWS_AS(fit_decay(growing, DecayKind::Exponential, 1.0), FitError);
}

TEST_CASE("inverse of the s=2 polynomial section keeps polynomial decay") {
  const long n = 512;
  auto A = to_dense(build_toeplitz(SymbolSequence::polynomial(1.0, 2.0), n));
  auto samples = row_decay_samples(dense_inverse(A), n / 2, 2, n / 4);
  CHECK(samples.size() == static_cast<size_t>(n / 4 - 1));
  auto fit = fit_decay(samples, DecayKind::Polynomial);
  CHECK(fit.polynomial().s >= 1.7);
}

TEST_CASE("decay profiles validate parameters") {
  CHECK_THROWS_AS(DecayProfile(PolynomialDecay{1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(DecayProfile(ExponentialDecay{1.0, 1.0, 1.5}), DomainError);
  CHECK_THROWS_AS(DecayProfile(ExponentialDecay{0.0, 1.0}), DomainError);
  DecayProfile p(PolynomialDecay{2.0, 3.0});
  CHECK(p.envelope(1) == doctest::Approx(0.25));
  CHECK_THROWS_AS(p.exponential(), DomainError);
}

TEST_CASE("weight admissibility examples") {
  auto poly = weight_admissible([](long k) { return std::pow(1.0 + std::labs(k), 2.0); }, 1024);
  CHECK(poly.submultiplicative);
  CHECK(poly.admissible);
  CHECK(std::abs(poly.root_limit_hi - 1.0) < std::abs(poly.root_half_hi - 1.0));

  const double g = 0.3;
  auto ex = weight_admissible([g](long k) { return std::exp(g * std::labs(k)); }, 1024);
  CHECK(ex.submultiplicative);
  CHECK_FALSE(ex.admissible);
  CHECK(ex.root_limit_hi == doctest::Approx(std::exp(g)).epsilon(1e-9));

  auto sub = weight_admissible(
      [](long k) {
        const double a = static_cast<double>(std::labs(k));
        return k == 0 ? 1.0 : std::exp(a / (1.0 + std::log(a)));
      },
      1024);
  CHECK(sub.admissible);

  CHECK_THROWS_AS(weight_admissible([](long) { return 1.0; }, 32), DomainError);
  CHECK_THROWS_AS(weight_admissible([](long k) { return k == 5 ? 0.0 : 1.0; }, 64), DomainError);
}
