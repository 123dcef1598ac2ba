#include <cmath>
#include <random>

#include "doctest.h"
#include "mhess/hessian_ops.hpp"
#include "mhess/inequalities.hpp"

using namespace mhess;

namespace {

Parameters params(int n, int m, double p = 0.0) {
  Parameters P;
  P.n = n;
  P.m = m;
  P.p = p;
  return P;
}

}  // namespace

TEST_CASE("msh classification of the reference functions") {
  auto sample = sample_ball_points(2, 48, 11, 0.9);

  CatalogFunction quad = catalog_function("quadratic_exhaustion", params(2, 2));
  MshReport r1 = msh_check(quad, params(2, 2), sample);
  CHECK(r1.verdict == MshClass::msh);

  // 2|z_1|^2 - |z_2|^2: subharmonic (sigma_1 = 1 > 0) but sigma_2 = -2
  CatalogFunction aniso =
      catalog_function("anisotropic_quadratic", params(2, 1), {}, {2.0, -1.0});
  CHECK(msh_check(aniso, params(2, 1), sample).verdict == MshClass::msh);
  MshReport r2 = msh_check(aniso, params(2, 2), sample);
  CHECK(r2.verdict == MshClass::not_msh);
  CHECK(r2.witness_k == 2);
  CHECK(!r2.witness.empty());

  CatalogFunction probe = catalog_function("pluriharmonic_probe", params(2, 1));
  CHECK(msh_check(probe, params(2, 2), sample).verdict == MshClass::boundary_case);
}

TEST_CASE("Hessian density frozen values") {
  // quadratic exhaustion shares the Hessian of |z|^2: density 4^n n!
  Point z2 = {complexd{0.3, 0.1}, complexd{-0.2, 0.4}};
  CatalogFunction quad2 = catalog_function("quadratic_exhaustion", params(2, 1));
  CHECK(hessian_density(quad2, params(2, 1), z2).value == doctest::Approx(32.0));
  CHECK(hessian_density(quad2, params(2, 2), z2).value == doctest::Approx(32.0));
  Point z3 = {complexd{0.3, 0.1}, complexd{-0.2, 0.4}, complexd{0.05, 0.0}};
  CatalogFunction quad3 = catalog_function("quadratic_exhaustion", params(3, 1));
  for (int m = 1; m <= 3; ++m)
    CHECK(hessian_density(quad3, params(3, m), z3).value == doctest::Approx(384.0));

  // the fundamental solution is m-harmonic away from the origin
  CatalogFunction fund = catalog_function("fundamental_solution", params(2, 1));
  CHECK(hessian_density(fund, params(2, 1), z2).value ==
        doctest::Approx(0.0).epsilon(1e-10));

  CatalogFunction probe = catalog_function("pluriharmonic_probe", params(2, 1));
  CHECK(hessian_density(probe, params(2, 1), z2).value == doctest::Approx(0.0));
}

TEST_CASE("hessian_normalization") {
  CHECK(hessian_normalization(2, 1) == doctest::Approx(16.0));
  CHECK(hessian_normalization(2, 2) == doctest::Approx(32.0));
  CHECK(hessian_normalization(3, 2) == doctest::Approx(128.0));
}

TEST_CASE("mixed density: frozen polarization value") {
  // inputs |z|^2 and |z|^4 at t = 1/2 in C^2, m = 2:
  // Pol sigma_2((1,1),(1,2)) = 1/2 (sigma_2(2,3) - sigma_2(1,1) - sigma_2(1,2)) = 3/2
  Parameters P = params(2, 2);
  std::vector<CatalogFunction> us;
  us.push_back(catalog_function("quadratic_exhaustion", P));
  us.push_back(catalog_function("smooth_radial_polynomial", P, {}, {0.0, 1.0}));
  CHECK(mixed_density(std::span<const CatalogFunction>(us), P, 0.5) == doctest::Approx(48.0));
}

TEST_CASE("mixed density equals the direct density on the diagonal") {
  auto family = seeded_radial_family(2, 10, 5150);
  for (int n : {2, 3}) {
    auto fam = seeded_radial_family(n, 8, 5150 + n);
    for (int m = 1; m <= n; ++m) {
      Parameters P = params(n, m);
      for (const auto& u : fam) {
        for (double t : {0.15, 0.45, 0.85}) {
          std::vector<CatalogFunction> us(static_cast<size_t>(m), u);
          double mixed = mixed_density(std::span<const CatalogFunction>(us), P, t);
          double direct = hessian_density_radial(*u.radial, P, t);
          CHECK(mixed == doctest::Approx(direct).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("mixed density is symmetric and multilinear") {
  Parameters P = params(2, 2);
  auto family = seeded_radial_family(2, 4, 99);
  const CatalogFunction &u = family[0], &v = family[1], &w = family[2];

  std::vector<CatalogFunction> uv = {u, v};
  std::vector<CatalogFunction> vu = {v, u};
  for (double t : {0.2, 0.6}) {
    CHECK(mixed_density(std::span<const CatalogFunction>(uv), P, t) ==
          doctest::Approx(mixed_density(std::span<const CatalogFunction>(vu), P, t))
              .epsilon(1e-10));
  }

  // first slot linear: mixed(a u + b v, w) = a mixed(u, w) + b mixed(v, w)
  double a = 1.3, b = 0.6;
  CatalogFunction combo = radial_sum(scaled(u, a), scaled(v, b));
  std::vector<CatalogFunction> cw = {combo, w};
  std::vector<CatalogFunction> uw = {u, w};
  std::vector<CatalogFunction> vw = {v, w};
  for (double t : {0.25, 0.75}) {
    double lhs = mixed_density(std::span<const CatalogFunction>(cw), P, t);
    double rhs = a * mixed_density(std::span<const CatalogFunction>(uw), P, t) +
                 b * mixed_density(std::span<const CatalogFunction>(vw), P, t);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  }
}

TEST_CASE("mixed density rejects non-radial inputs and wrong arity") {
  Parameters P = params(2, 2);
  std::vector<CatalogFunction> bad;
  bad.push_back(catalog_function("quadratic_exhaustion", P));
  bad.push_back(catalog_function("anisotropic_quadratic", P, {}, {2.0, -1.0}));
  CHECK_THROWS_AS(mixed_density(std::span<const CatalogFunction>(bad), P, 0.5),
                  std::invalid_argument);
  std::vector<CatalogFunction> one = {catalog_function("quadratic_exhaustion", P)};
  CHECK_THROWS_AS(mixed_density(std::span<const CatalogFunction>(one), P, 0.5),
                  std::invalid_argument);
}

TEST_CASE("m-harmonicity residual") {
  std::vector<double> grid;
  for (int i = 0; i <= 32; ++i) grid.push_back(0.1 + 0.8 * i / 32.0);

  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
    CatalogFunction fund = catalog_function("fundamental_solution", params(n, m));
    CHECK(mharmonicity_residual(*fund.radial, params(n, m), grid) <= 1e-10);
  }

  // |z|^2 is not a fundamental solution: sigma_1 = n along the grid
  CatalogFunction quad = catalog_function("quadratic_exhaustion", params(2, 1));
  CHECK(mharmonicity_residual(*quad.radial, params(2, 1), grid) == doctest::Approx(2.0));
}

TEST_CASE("seeded family members are m-subharmonic for every m") {
  auto sample = sample_ball_points(3, 32, 21, 0.9);
  auto family = seeded_radial_family(3, 6, 333);
  for (const auto& u : family) {
    for (int m = 1; m <= 3; ++m) {
      CHECK(msh_check(u, params(3, m), sample).verdict == MshClass::msh);
    }
  }
}

TEST_CASE("members classified m-sh have nonnegative density at sample points") {
  auto sample = sample_ball_points(2, 32, 77, 0.9);
  std::vector<CatalogFunction> members;
  members.push_back(catalog_function("quadratic_exhaustion", params(2, 1)));
  members.push_back(catalog_function("fundamental_solution", params(2, 1)));
  auto family = seeded_radial_family(2, 4, 900);
  members.insert(members.end(), family.begin(), family.end());
  for (const auto& u : members) {
    Parameters P = params(2, 1);
    if (msh_check(u, P, sample).verdict != MshClass::msh) continue;
    for (const auto& z : sample) {
      DensityValue d = hessian_density(u, P, z);
      CHECK(d.value >= -1e-10 * (1.0 + std::abs(d.value)));
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(hessian_density(catalog_function("quadratic_exhaustion", params(2, 1)),
                                  params(2, 3), {complexd{0.1, 0.0}, complexd{0.0, 0.0}}),
                  std::invalid_argument);
  Parameters bad;
  bad.n = 1;
  CHECK_THROWS_AS(require_nm(bad), std::invalid_argument);
  Parameters lk = params(3, 1);
  lk.l = 2;
  lk.k = 2;
  CHECK_THROWS_AS(require_lk(lk), std::invalid_argument);
}
