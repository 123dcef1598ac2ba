#include <random>

#include "doctest.h"
#include "mhess/hermitian.hpp"

using namespace mhess;

namespace {

// Independent oracle: sigma_k by direct subset enumeration.
double sigma_bruteforce(int k, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  if (k == 0) return 1.0;
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    double prod = 1.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) prod *= x[static_cast<size_t>(i)];
    total += prod;
  }
  return total;
}

HermitianMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  HermitianMatrix m(n);
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      if (j == k) {
        m.at(j, j) = complexd{gauss(rng), 0.0};
      } else {
        complexd v{gauss(rng), gauss(rng)};
        m.at(j, k) = v;
        m.at(k, j) = std::conj(v);
      }
    }
  }
  return m;
}

double binom(int n, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

}  // namespace

TEST_CASE("eigenvalues of simple matrices") {
  CHECK(eigenvalues(HermitianMatrix::diagonal({1, 1, 1})).values ==
        std::vector<double>{1, 1, 1});
  CHECK(eigenvalues(HermitianMatrix::diagonal({2, -1})).values ==
        std::vector<double>{-1, 2});

  // rows (1, i; -i, 1): characteristic polynomial x^2 - 2x, spectrum (0, 2)
  HermitianMatrix m(2);
  m.at(0, 0) = 1.0;
  m.at(0, 1) = complexd{0.0, 1.0};
  m.at(1, 0) = complexd{0.0, -1.0};
  m.at(1, 1) = 1.0;
  Spectrum s = eigenvalues(m);
  CHECK(s.values[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.values[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("non-Hermitian input is rejected with the asymmetry") {
  HermitianMatrix m(2);
  m.at(0, 1) = complexd{1.0, 0.0};
  m.at(1, 0) = complexd{0.5, 0.0};
  CHECK_THROWS_AS(eigenvalues(m), NotHermitianError);
  try {
    eigenvalues(m);
  } catch (const NotHermitianError& e) {
    CHECK(e.max_asymmetry == doctest::Approx(0.5));
  }
}

TEST_CASE("spectrum reconstructs trace and determinant on random matrices") {
  std::mt19937_64 rng(12345);
  for (int n = 2; n <= 8; ++n) {
    for (int rep = 0; rep < 8; ++rep) {
      HermitianMatrix m = random_hermitian(n, rng);
      Spectrum s = eigenvalues(m);
      double tr = m.trace();
      CHECK(s.sum() == doctest::Approx(tr).epsilon(1e-10));
      double det = m.determinant();
      double sn = sigma_k(n, s);
      CHECK(sn == doctest::Approx(det).epsilon(1e-8));
    }
  }
}

TEST_CASE("sigma_k basic values and brute-force oracle") {
  Spectrum ones{{1, 1, 1}};
  CHECK(sigma_k(2, ones) == doctest::Approx(3.0));
  Spectrum s{{1, 2, 3}};
  CHECK(sigma_k(2, s) == doctest::Approx(11.0));  // 2 + 3 + 6
  CHECK(sigma_k(0, s) == 1.0);
  CHECK_THROWS_AS(sigma_k(4, s), std::invalid_argument);
  CHECK_THROWS_AS(sigma_k(-1, s), std::invalid_argument);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 2 + static_cast<int>(rng() % 7);
    std::vector<double> x(static_cast<size_t>(n));
    for (auto& v : x) v = unif(rng);
    for (int k = 0; k <= n; ++k)
      CHECK(sigma_k(k, std::span<const double>(x)) ==
            doctest::Approx(sigma_bruteforce(k, x)).epsilon(1e-11));
  }
}

TEST_CASE("sigma_k of the all-ones spectrum is a binomial coefficient") {
  for (int n = 1; n <= 8; ++n) {
    std::vector<double> ones(static_cast<size_t>(n), 1.0);
    for (int k = 0; k <= n; ++k)
      CHECK(sigma_k(k, std::span<const double>(ones)) == doctest::Approx(binom(n, k)));
  }
}

TEST_CASE("polarized sigma: frozen examples") {
  Spectrum a{{1, 1}}, b{{1, 1}};
  std::vector<Spectrum> vs = {a, b};
  CHECK(polarized_sigma(2, vs) == doctest::Approx(1.0));

  std::vector<Spectrum> one = {Spectrum{{3, 4}}};
  CHECK(polarized_sigma(1, one) == doctest::Approx(7.0));

  std::vector<Spectrum> mixed = {Spectrum{{1, 0}}, Spectrum{{0, 1}}};
  CHECK(polarized_sigma(2, mixed) == doctest::Approx(0.5));

  std::vector<Spectrum> bad = {Spectrum{{1, 0}}, Spectrum{{0, 1, 2}}};
  CHECK_THROWS_AS(polarized_sigma(2, bad), std::invalid_argument);
}

TEST_CASE("polarized sigma: symmetry, multilinearity, diagonal") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  auto rand_spec = [&](int n) {
    Spectrum s;
    for (int i = 0; i < n; ++i) s.values.push_back(unif(rng));
    return s;
  };
  for (int rep = 0; rep < 10; ++rep) {
    int n = 3 + static_cast<int>(rng() % 3);
    int m = 2 + static_cast<int>(rng() % 2);
    std::vector<Spectrum> vs;
    for (int i = 0; i < m; ++i) vs.push_back(rand_spec(n));

    double base = polarized_sigma(m, vs);
    std::vector<Spectrum> perm = vs;
    std::swap(perm[0], perm[static_cast<size_t>(m - 1)]);
    CHECK(polarized_sigma(m, perm) == doctest::Approx(base).epsilon(1e-10));

    // linear in the first slot
    Spectrum extra = rand_spec(n);
    double ca = 0.7, cb = -0.3;
    std::vector<Spectrum> combo = vs;
    for (int i = 0; i < n; ++i)
      combo[0].values[static_cast<size_t>(i)] =
          ca * vs[0].values[static_cast<size_t>(i)] + cb * extra.values[static_cast<size_t>(i)];
    std::vector<Spectrum> alt = vs;
    alt[0] = extra;
    double expect = ca * base + cb * polarized_sigma(m, alt);
    CHECK(polarized_sigma(m, combo) == doctest::Approx(expect).epsilon(1e-10));

    // diagonal reproduces sigma_m
    std::vector<Spectrum> diag(static_cast<size_t>(m), vs[0]);
    CHECK(polarized_sigma(m, diag) == doctest::Approx(sigma_k(m, vs[0])).epsilon(1e-12));
  }
}
