#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mhess/hermitian.hpp"
#include "mhess/params.hpp"

namespace mhess {

using Point = std::vector<complexd>;

/// Smooth surrogate for max(a,b): (a + b + sqrt((a-b)^2 + eps^2))/2.
/// Satisfies max(a,b) <= smooth_max <= max(a,b) + eps/2, is convex and
/// nondecreasing in both arguments. Stable for |a-b| far beyond 1/eps.
double smooth_max(double a, double b, double eps);
/// Partial derivative in the first argument, in [0,1].
double smooth_max_da(double a, double b, double eps);
/// Second partial derivative in the first argument: eps^2 / (2 R^3).
double smooth_max_daa(double a, double b, double eps);

/// Radial function u(z) = g(t) with t = |z|^2 together with its first two
/// t-derivatives. Complex Hessian eigenvalues at |z|^2 = t are
/// g'(t) with multiplicity n-1 (tangential) and g'(t) + t g''(t) (radial).
struct RadialProfile {
  std::function<double(double)> g;
  std::function<double(double)> g1;
  std::function<double(double)> g2;
  bool singular_at_zero = false;
  std::string label;
  std::vector<double> breakpoints;  // quadrature split hints in (0,1)
  std::optional<double> kink;       // non-smooth point of a piecewise profile
};

/// Parameters of the truncated/scaled fundamental-solution families.
struct FamilyParams {
  int j = 2;
  double alpha = 1.0;
  double beta = 3.0;
  double eps = 1e-2;  // smoothing width for the max
};

struct PointHessian {
  Point point;
  HermitianMatrix matrix;
  Spectrum spectrum;
  double asymmetry_defect = 0.0;
};

/// An evaluable test function on the unit ball. Radial members expose a
/// smooth(ed) profile for Hessian work and, for max-type members, the
/// piecewise-exact profile for pointwise values and L^q norms.
struct CatalogFunction {
  std::string label;
  int n = 2;
  std::function<double(const Point&)> eval;
  std::optional<RadialProfile> radial;        // smoothed form (Hessian-safe)
  std::optional<RadialProfile> radial_exact;  // piecewise-exact (kink allowed)
  std::function<HermitianMatrix(const Point&)> analytic_hessian;
  std::function<RadialProfile(double)> radial_at_eps;  // max-type members only
  std::optional<double> sup_norm;
  bool is_max_type = false;

  bool is_radial() const { return radial.has_value(); }
  bool has_analytic_hessian() const { return static_cast<bool>(analytic_hessian); }
  /// Profile to use for pointwise values / L^q work; falls back to the
  /// smoothed profile for smooth members.
  const RadialProfile& exact_profile() const {
    return radial_exact ? *radial_exact : *radial;
  }
};

/// Known catalog names: quadratic_exhaustion, fundamental_solution,
/// ex1_family, ex2_family, ex3_family, smooth_radial_polynomial,
/// pluriharmonic_probe, anisotropic_quadratic.
CatalogFunction catalog_function(const std::string& name, const Parameters& P,
                                 const FamilyParams& fam = {},
                                 const std::vector<double>& coeffs = {});

/// Smoothed profile of pref * max(1 - t^a, level), a = 1 - n/m, with
/// quadrature split hints around the switching sphere. The building block
/// of the truncation families and of capacity candidates.
RadialProfile truncated_fundamental_profile(int n, int m, double pref, double level,
                                            double eps);

/// c * u for radial u (profiles and sup norm scaled; c >= 0).
CatalogFunction scaled(const CatalogFunction& u, double c);

/// u + v for radial u, v on the same ball.
CatalogFunction radial_sum(const CatalogFunction& u, const CatalogFunction& v);

/// Spectrum of the complex Hessian at any point with |z|^2 = t.
Spectrum radial_hessian_spectrum(const RadialProfile& profile, int n, double t);

/// Finite-difference Wirtinger Hessian
///   d^2u/dz_j dzbar_k = 1/4 [(d_xj d_xk + d_yj d_yk) + i (d_xj d_yk - d_yj d_xk)]
/// from central second differences with step h, Hermitian-symmetrized;
/// the discarded asymmetry is recorded. Second-order accurate for C^4 u.
PointHessian fd_hessian(const std::function<double(const Point&)>& u,
                        const Point& point, double h = 1e-4);

}  // namespace mhess
