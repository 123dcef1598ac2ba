#include <cmath>

#include "doctest.h"
#include "mhess/inequalities.hpp"

using namespace mhess;

namespace {

constexpr double kPi = 3.14159265358979323846;

Parameters params(int n, int m, double p = 0.0) {
  Parameters P;
  P.n = n;
  P.m = m;
  P.p = p;
  return P;
}

Parameters poincare_params(int n, int l, int k, double p) {
  Parameters P;
  P.n = n;
  P.l = l;
  P.k = k;
  P.m = k;
  P.p = p;
  return P;
}

}  // namespace

TEST_CASE("optimal ball constants") {
  CHECK(poincare_constant(2, 1, 2, 0.0) == doctest::Approx(4.0 * kPi));
  CHECK(poincare_constant(3, 1, 3, 0.0) == doctest::Approx(std::pow(4.0 * kPi, 2.0)));
  CHECK(poincare_constant(2, 1, 2, 1.0) ==
        doctest::Approx(4.0 * kPi / std::sqrt(3.0)));  // ((4pi)^2/3)^(1/2)
  CHECK_THROWS_AS(poincare_constant(2, 1, 2, 0.5), std::invalid_argument);
}

TEST_CASE("Poincare verification: equality case and p = 1") {
  CatalogFunction quad = catalog_function("quadratic_exhaustion", params(2, 1));

  InequalityReport eq = verify_poincare(quad, poincare_params(2, 1, 2, 0.0));
  CHECK(eq.verdict == Verdict::holds);
  CHECK(eq.constant_used == doctest::Approx(4.0 * kPi));
  CHECK(std::abs(eq.margin) / eq.rhs <= 1e-6);  // equality witness

  InequalityReport p1 = verify_poincare(quad, poincare_params(2, 1, 2, 1.0));
  CHECK(p1.verdict == Verdict::holds);
  CHECK(p1.constant_used == doctest::Approx(4.0 * kPi / std::sqrt(3.0)));
  CHECK(p1.margin > 0.0);  // strict inequality: |z|^2-1 is not extremal here

  // general p: raw ratio only
  InequalityReport raw = verify_poincare(quad, poincare_params(2, 1, 2, 2.0));
  CHECK(raw.verdict == Verdict::holds);
  CHECK(std::isnan(raw.constant_used));
  CHECK(!raw.notes.empty());

  CHECK_THROWS_AS(verify_poincare(quad, poincare_params(2, 2, 2, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("Poincare holds strictly on a seeded polynomial member") {
  CatalogFunction poly =
      catalog_function("smooth_radial_polynomial", params(2, 1), {}, {0.0, 1.0});
  InequalityReport rep = verify_poincare(poly, poincare_params(2, 1, 2, 0.0));
  CHECK(rep.verdict == Verdict::holds);
  double ratio = 0.0;
  for (const auto& [k, v] : rep.details)
    if (k == "ratio") ratio = v;
  CHECK(ratio < rep.constant_used);
}

TEST_CASE("Sobolev report and threshold bookkeeping") {
  CatalogFunction quad = catalog_function("quadratic_exhaustion", params(2, 1));
  InequalityReport rep = verify_sobolev(quad, params(2, 1, 0.0), 1.0);
  CHECK(rep.verdict == Verdict::holds);
  double threshold = 0.0, ratio = 0.0;
  for (const auto& [k, v] : rep.details) {
    if (k == "q_threshold") threshold = v;
    if (k == "ratio") ratio = v;
  }
  CHECK(threshold == doctest::Approx(2.0));
  // ratio = (pi^2/6) / (4 pi)^2, both sides in closed form
  CHECK(ratio == doctest::Approx((kPi * kPi / 6.0) / std::pow(4.0 * kPi, 2.0)).epsilon(1e-8));
}

TEST_CASE("Sobolev family sweep stays bounded below the threshold") {
  InequalityReport rep = verify_sobolev_family(params(2, 1, 0.0), 1.8, 20, 42);
  CHECK(rep.verdict == Verdict::holds);
  CHECK(rep.rows.size() == 20);
  for (const auto& row : rep.rows) CHECK(std::isfinite(row.at("ratio")));
}

TEST_CASE("Hoelder: diagonal tuples give ratio 1, families stay above 1") {
  Parameters P = params(2, 2, 1.0);
  CatalogFunction quad = catalog_function("quadratic_exhaustion", P);
  std::vector<CatalogFunction> diag = {quad, quad};
  InequalityReport one = verify_hoelder(quad, diag, P);
  CHECK(one.constant_used == doctest::Approx(1.0).epsilon(1e-8));

  for (double p : {0.5, 1.0, 2.0}) {
    InequalityReport fam = verify_hoelder_family(params(2, 1, p), 6, 7);
    CHECK(fam.verdict == Verdict::holds);
    CHECK(fam.constant_used >= 1.0 - 1e-9);
    CHECK(std::isfinite(fam.constant_used));
  }

  CHECK_THROWS_AS(verify_hoelder_family(params(2, 1, 0.0), 4, 7), std::invalid_argument);
}

TEST_CASE("quasi-norm properties on a seeded family") {
  Parameters P = params(2, 1, 1.0);
  auto family = seeded_radial_family(2, 4, 2718);
  InequalityReport rep = quasinorm_properties(family, P);
  CHECK(rep.verdict == Verdict::holds);
  double hom = 1.0, chat = 0.0;
  for (const auto& [k, v] : rep.details) {
    if (k == "homogeneity_max_rel_err") hom = v;
    if (k == "empirical_modulus") chat = v;
  }
  CHECK(hom <= 1e-10);
  CHECK(chat >= 1.0 - 1e-12);
  CHECK(std::isfinite(chat));
  // every pair ratio is accounted for by the empirical modulus
  for (const auto& row : rep.rows) CHECK(row.at("ratio") <= chat * (1.0 + 1e-12));
}

TEST_CASE("counterexample families reproduce their closed forms") {
  std::vector<int> js = {2, 4, 8};
  Parameters P = params(2, 1, 1.0);
  double M = fundamental_mass_constant(2, 1);

  InequalityReport ex2 = counterexample_family(ExampleFamily::ex2, P, {}, js);
  CHECK(ex2.verdict == Verdict::sharpness_witness);
  for (const auto& row : ex2.rows) {
    CHECK(row.at("energy") == doctest::Approx(M).epsilon(0.01));
    CHECK(row.at("sup_norm") ==
          doctest::Approx(std::sqrt(row.at("j"))).epsilon(1e-12));
  }

  InequalityReport ex3 = counterexample_family(ExampleFamily::ex3, P, {}, js);
  CHECK(ex3.verdict == Verdict::sharpness_witness);
  for (const auto& row : ex3.rows) {
    CHECK(row.at("sup_norm") == doctest::Approx(1.0));
    CHECK(row.at("energy") == doctest::Approx(M * row.at("j")).epsilon(0.01));
  }

  FamilyParams fam;
  fam.alpha = 1.0;
  fam.beta = 3.0;
  P.q = 1.0;
  std::vector<int> js4 = {2, 4, 8, 16};
  InequalityReport ex1 = counterexample_family(ExampleFamily::ex1, P, fam, js4);
  CHECK(ex1.verdict == Verdict::sharpness_witness);
  for (const auto& row : ex1.rows) {
    double j = row.at("j");
    double closed = M * std::pow(j, -2.0) * (j * j * j - 1.0);
    CHECK(row.at("energy") == doctest::Approx(closed).epsilon(0.02));
  }
  double lq_slope = 0.0;
  for (const auto& [k, v] : ex1.details)
    if (k == "lq_slope") lq_slope = v;
  CHECK(lq_slope == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("capacity of sub-balls") {
  Parameters P = params(2, 1);
  CapacityEstimate est = capacity_ball(0.5, P);
  // exact value: mass constant * (r2^(1-n/m) - 1)^(-m) = 16 pi^2 * 1
  CHECK(*est.exact == doctest::Approx(16.0 * kPi * kPi));
  CHECK(est.lower_bound == doctest::Approx(*est.exact).epsilon(1e-4));

  // capacity grows without bound as the ball fills the domain
  double prev = 0.0;
  for (double r2 : {0.5, 0.7, 0.9, 0.99}) {
    double cap = *capacity_ball(r2, P).exact;
    CHECK(cap > prev);
    prev = cap;
  }

  // small-radius scaling: log cap vs log r slope -> 2n - 2m
  std::vector<double> rs, caps;
  for (double r2 : {0.02, 0.01, 0.005}) {
    rs.push_back(std::sqrt(r2));
    caps.push_back(*capacity_ball(r2, P).exact);
  }
  CHECK(loglog_slope(rs, caps) == doctest::Approx(2.0).epsilon(0.05));

  CHECK_THROWS_AS(capacity_ball(0.5, params(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(capacity_ball(1.5, P), std::invalid_argument);
}

TEST_CASE("sublevel capacity bound along an s-ladder") {
  Parameters P = params(2, 1, 0.0);
  CatalogFunction quad = catalog_function("quadratic_exhaustion", P);
  std::vector<double> ladder = {0.9, 0.6, 0.4, 0.27, 0.18, 0.12};
  InequalityReport rep = verify_sublevel_capacity(quad, P, ladder);
  CHECK(rep.verdict == Verdict::holds);
  CHECK(rep.rows.size() == ladder.size());
  // frozen spot value at s = 1/2: lhs = cap(ball r^2 = 1/2), rhs = 4 e_{0,1}
  std::vector<double> spot = {0.5};
  InequalityReport one = verify_sublevel_capacity(quad, P, spot);
  CHECK(one.rows[0].at("cap") == doctest::Approx(16.0 * kPi * kPi).epsilon(1e-6));
  CHECK(one.rows[0].at("bound") ==
        doctest::Approx(4.0 * std::pow(4.0 * kPi, 2.0)).epsilon(1e-6));
  // s beyond the sup: empty sublevel set, zero capacity
  std::vector<double> beyond = {2.0};
  InequalityReport empty = verify_sublevel_capacity(quad, P, beyond);
  CHECK(empty.rows[0].at("cap") == doctest::Approx(0.0));
  CHECK(empty.verdict == Verdict::holds);
}

TEST_CASE("volume-capacity comparison in and out of range") {
  Parameters P = params(2, 1);
  std::vector<double> ladder = {0.8, 0.4, 0.2, 0.1, 0.05};
  InequalityReport in_range = verify_volume_capacity(P, 1.5, ladder);
  CHECK(in_range.verdict == Verdict::holds);
  InequalityReport out_range = verify_volume_capacity(P, 2.5, ladder);
  CHECK(out_range.verdict == Verdict::sharpness_witness);
  double thr = 0.0;
  for (const auto& [k, v] : in_range.details)
    if (k == "alpha_threshold") thr = v;
  CHECK(thr == doctest::Approx(2.0));
  CHECK_THROWS_AS(verify_volume_capacity(P, 0.9, ladder), std::invalid_argument);
}

TEST_CASE("integrability probe locates the flip point") {
  Parameters P = params(2, 1);
  CatalogFunction fund = catalog_function("fundamental_solution", P);
  std::vector<double> grid = {1.0, 1.5, 1.9, 2.1, 2.5, 3.0};
  IntegrabilityResult res = integrability_probe(fund, P, grid);
  CHECK(res.threshold == doctest::Approx(2.0));
  CHECK(std::abs(res.flip_q - 2.0) <= 0.04);
  for (const auto& [q, div] : res.q_divergent) {
    if (q < 1.95) CHECK(!div);
    if (q > 2.05) CHECK(div);
  }
}

TEST_CASE("seeded radial family is deterministic in the seed") {
  auto f1 = seeded_radial_family(2, 5, 1234);
  auto f2 = seeded_radial_family(2, 5, 1234);
  auto f3 = seeded_radial_family(2, 5, 4321);
  REQUIRE(f1.size() == f2.size());
  for (size_t i = 0; i < f1.size(); ++i)
    CHECK(f1[i].radial->g(0.37) == f2[i].radial->g(0.37));
  bool any_different = false;
  for (size_t i = 0; i < f1.size(); ++i)
    if (f1[i].radial->g(0.37) != f3[i].radial->g(0.37)) any_different = true;
  CHECK(any_different);
}
