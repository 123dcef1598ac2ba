#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mhess {

enum class IntegralMethod { radial_quadrature, monte_carlo, eps_extrapolation };

/// A computed integral (energy, L^q norm, mass, capacity) with an error
/// estimate. `divergent` marks integrals rejected by the divergence
/// detector; the value field is +inf in that case.
struct EnergyValue {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  IntegralMethod method = IntegralMethod::radial_quadrature;
  std::vector<std::pair<double, double>> eps_ladder;  // (eps, value)
  bool divergent = false;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
  bool singular_origin = false;
  std::vector<double> breakpoints;  // interior split points in (0,1)
  double overflow_guard = 1e100;
  int max_shells = 60;  // dyadic shells toward the singular endpoint
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool divergent = false;
};

/// Adaptive Gauss-Kronrod 7/15 bisection on [a, b]. Endpoints are never
/// evaluated (all Kronrod nodes are interior).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, const QuadratureOptions& opt = {});

/// Integral over a singular-at-0 range (0, b] by dyadic shells
/// [b 2^-k-1, b 2^-k] with adaptive GK on each shell. Divergence is
/// declared on (i) growth by a factor > 1.5 across 8 consecutive shells,
/// (ii) 8 consecutive non-decaying shells once past the transient, or
/// (iii) the overflow guard.
QuadratureResult integrate_singular_origin(const std::function<double(double)>& f, double b,
                                           const QuadratureOptions& opt = {});

/// pi^n / (n-1)!, the prefactor of the polar reduction
///   int_B F(|z|^2) dV_{2n} = (pi^n/(n-1)!) int_0^1 F(t) t^(n-1) dt.
double ball_volume_prefactor(int n);

/// Volume of the unit ball in C^n = R^2n: pi^n / n!.
double ball_volume(int n);

/// int_B f(|z|^2) dV over the unit ball via the polar reduction; set
/// `singular_origin` for integrands unbounded at t = 0.
EnergyValue radial_integral(const std::function<double(double)>& f, int n,
                            const QuadratureOptions& opt = {});

}  // namespace mhess
