#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "toeplitz/transform.hpp"

using namespace toeplitz;

TEST_CASE("dft of delta and constant") {
  auto X = dft(CVector{1.0, 0.0, 0.0, 0.0});
  for (auto v : X) CHECK(std::abs(v - cplx(1.0)) < 1e-15);

  auto Y = dft(CVector{1.0, 1.0, 1.0, 1.0});
  CHECK(std::abs(Y[0] - cplx(4.0)) < 1e-15);
  for (int l = 1; l < 4; ++l) CHECK(std::abs(Y[l]) < 1e-15);

  CHECK(dft(CVector{cplx(2.0, -1.0)}) == CVector{cplx(2.0, -1.0)});
}

TEST_CASE("dft matches the direct sum at awkward lengths") {
  std::mt19937_64 rng(1);
  for (long m : {1L, 2L, 3L, 7L, 97L, 129L, 255L, 1000L}) {
    auto x = oracle::random_vector(rng, m);
    CHECK(oracle::rel_err(dft(x), oracle::naive_dft(x)) < 1e-12);
    CHECK(oracle::rel_err(idft(dft(x)), x) < 1e-13);
  }
}

TEST_CASE("Parseval") {
  std::mt19937_64 rng(2);
  for (long m : {5L, 64L, 257L, 1023L}) {
    auto x = oracle::random_vector(rng, m);
    const double lhs = std::pow(oracle::norm(dft(x)), 2);
    const double rhs = static_cast<double>(m) * std::pow(oracle::norm(x), 2);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
  }
}

TEST_CASE("circulant eigenvalue examples") {
  auto I = circulant_eigenvalues(build_circulant(SymbolSequence::banded({1.0}), 5));
  for (auto v : I.values) CHECK(std::abs(v - cplx(1.0)) < 1e-15);

  auto s = circulant_eigenvalues(CirculantMatrix(CVector{2.0, 1.0, 1.0}));
  CHECK(s.values[0].real() == doctest::Approx(4.0));
  CHECK(s.values[1].real() == doctest::Approx(1.0));
  CHECK(s.values[2].real() == doctest::Approx(1.0));
  CHECK(s.min_real() == doctest::Approx(1.0));
  CHECK(s.max_abs() == doctest::Approx(4.0));

  auto seq = SymbolSequence::banded({3.0, 1.0});
  auto ev = circulant_eigenvalues(build_circulant(seq, 101));
  double worst = 0.0;
  for (long l = 0; l < 101; ++l) {
    worst = std::max(worst, std::abs(ev.values[l] - oracle::symbol_sum(seq, l / 101.0, 1)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("complex hermitian symbol: eigenvalues are f_m(-l/m)") {
  std::mt19937_64 rng(4);
  auto seq = oracle::random_hpd_banded(rng, 4);
  const long m = 21;
  auto ev = circulant_eigenvalues(build_circulant(seq, m));
  for (long l = 0; l < m; ++l) {
    const double w = -static_cast<double>(l) / m;
    CHECK(std::abs(ev.values[l] - oracle::symbol_sum(seq, w, 4)) < 1e-12);
  }
}

TEST_CASE("diagonalization reproduces the dense circulant product") {
  std::mt19937_64 rng(8);
  for (long m : {2L, 9L, 64L, 333L, 1024L}) {
    auto gen = oracle::random_vector(rng, m);
    CirculantMatrix C(gen);
    auto v = oracle::random_vector(rng, m);
    auto V = dft(v);
    const auto& e = C.eigs();
    for (long l = 0; l < m; ++l) V[l] *= e[l];
    auto fast = idft(V);
    CHECK(oracle::rel_err(fast, oracle::matvec(oracle::circulant_matrix(gen), v)) <= 1e-11);
  }
}

TEST_CASE("hermitian circulants have real spectra") {
  std::mt19937_64 rng(9);
  for (long m : {3L, 8L, 31L, 200L}) {
    auto seq = oracle::random_hpd_banded(rng, 3);
    auto C = build_circulant(seq, m);
    double l1 = 0.0;
    for (auto g : C.gen()) l1 += std::abs(g);
    CHECK(circulant_eigenvalues(C).max_abs_imag() <= 1e-12 * l1);
  }
}
