#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mhess/integrals.hpp"

namespace mhess {

enum class Verdict { holds, violated, sharpness_witness };

std::string to_string(Verdict v);

using KV = std::pair<std::string, double>;

struct SweepRow {
  std::vector<KV> cols;
  double at(const std::string& key) const;
};

/// One verified inequality instance: left side, right side, constant,
/// margin = rhs - lhs, verdict, and (for sweeps) one row per instance.
struct InequalityReport {
  std::string name;
  Parameters P;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  double constant_used = std::numeric_limits<double>::quiet_NaN();
  double margin = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::holds;
  std::string witness;
  std::vector<SweepRow> rows;
  std::vector<KV> details;
  std::vector<std::string> notes;
};

struct CapacityEstimate {
  std::string descriptor;
  double lower_bound = 0.0;
  std::optional<double> exact;
  std::string method;
};

struct SuiteOptions {
  IntegralOptions integral;
  double verdict_tol = 1e-6;  // holds iff margin >= -tol * (1 + |rhs|)
};

/// Total H_m mass of the truncated fundamental solution (independent of
/// the truncation level): 4^n pi^n (n/m - 1)^m. Also the energy constant
/// of the scaled truncation families.
double fundamental_mass_constant(int n, int m);

/// Optimal ball constant C(p,l,k,n) for p = 0 or p = 1; throws otherwise.
double poincare_constant(int n, int l, int k, double p);

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Seeded family of smooth radial polynomial members (nonnegative
/// coefficients, vanishing on the boundary; m-subharmonic for every m).
std::vector<CatalogFunction> seeded_radial_family(int n, int count, uint64_t seed);

/// e_{p,l}(u)^{1/(p+l)} <= C(p,l,k,n,B) e_{p,k}(u)^{1/(p+k)} with the
/// optimal ball constant for p in {0,1}; raw ratio only otherwise.
InequalityReport verify_poincare(const CatalogFunction& u, const Parameters& P,
                                 const SuiteOptions& opt = {});

/// ||u||_{L^q} / e_{p,m}(u)^{1/(m+p)} for one member; no universal
/// constant is asserted (the ratio is recorded).
InequalityReport verify_sobolev(const CatalogFunction& u, const Parameters& P, double q,
                                const SuiteOptions& opt = {});

/// Ratio sweep over a seeded radial family; asserts every ratio is finite
/// and records the empirical supremum.
InequalityReport verify_sobolev_family(const Parameters& P, double q, int members,
                                       uint64_t seed, const SuiteOptions& opt = {});

/// Mixed-energy Hoelder check for one tuple: ratio of the mixed energy to
/// the product of energy powers.
InequalityReport verify_hoelder(const CatalogFunction& u0,
                                std::span<const CatalogFunction> us, const Parameters& P,
                                const SuiteOptions& opt = {});

/// Empirical Hoelder constant over seeded radial tuples (diagonal tuples
/// included, so the supremum is >= 1).
InequalityReport verify_hoelder_family(const Parameters& P, int tuples, uint64_t seed,
                                       const SuiteOptions& opt = {});

/// Quasi-norm checks for ||u||_0 = e_{p,m}(u)^{1/(p+m)}: homogeneity,
/// empirical modulus of concavity over pairs, and the chained inequality
/// ||x_1+...+x_k|| <= sum C^j ||x_j|| on triples.
InequalityReport quasinorm_properties(std::span<const CatalogFunction> family,
                                      const Parameters& P, const SuiteOptions& opt = {});

enum class ExampleFamily { ex1, ex2, ex3 };

/// j-sweep of a truncation family: eps-extrapolated energies, sup norms,
/// L^q norms, exponent fits against the closed forms.
InequalityReport counterexample_family(ExampleFamily which, const Parameters& P,
                                       FamilyParams fam, std::span<const int> js,
                                       const SuiteOptions& opt = {});

/// cap_m of the closed ball {|z|^2 <= r2} in the unit ball: exact value
/// fundamental_mass_constant * (r2^(1-n/m) - 1)^-m from the scaled
/// relative extremal profile, and an eps-extrapolated candidate mass as a
/// lower bound.
CapacityEstimate capacity_ball(double r2, const Parameters& P, const SuiteOptions& opt = {});

/// cap_m({u < -s}) <= 2^(m+p) s^(-m-p) e_{p,m}(u) along an s-ladder.
InequalityReport verify_sublevel_capacity(const CatalogFunction& u, const Parameters& P,
                                          std::span<const double> s_ladder,
                                          const SuiteOptions& opt = {});

/// V_{2n}(K) vs cap_m^alpha(K) on closed balls along an r2-ladder: the
/// ratio stays bounded for alpha < n/(n-m) and blows up as r -> 0 above.
InequalityReport verify_volume_capacity(const Parameters& P, double alpha,
                                        std::span<const double> r2_ladder,
                                        const SuiteOptions& opt = {});

struct IntegrabilityResult {
  std::vector<std::pair<double, bool>> q_divergent;  // (q, divergent?)
  double flip_q = 0.0;
  double threshold = 0.0;  // nm/(n-m)
};

/// Finite/divergent verdict of int |u|^q per q, with the flip point
/// located by bisection.
IntegrabilityResult integrability_probe(const CatalogFunction& u, const Parameters& P,
                                        std::span<const double> q_grid,
                                        const SuiteOptions& opt = {});

}  // namespace mhess
