#pragma once

#include <cstdint>
#include <span>

#include "mhess/catalog.hpp"
#include "mhess/hessian_ops.hpp"
#include "mhess/params.hpp"
#include "mhess/quadrature.hpp"

namespace mhess {

struct IntegralOptions {
  QuadratureOptions quad;
  std::vector<double> eps_ladder = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
};

/// (p,m)-energy e_{p,m}(u) = int_B (-u)^p H_m(u). Smooth radial members
/// integrate directly; max-type members run the eps-ladder on the smoothed
/// profile with first-order Richardson extrapolation.
EnergyValue energy(const CatalogFunction& u, const Parameters& P,
                   const IntegralOptions& opt = {});

/// Energy of a fixed smooth radial profile (no ladder).
EnergyValue energy_of_profile(const RadialProfile& profile, const Parameters& P,
                              const QuadratureOptions& opt = {});

/// (int_B |u|^q dV)^(1/q), or a divergent outcome. Uses the piecewise-exact
/// profile of max-type members (the kink is harmless for L^q work).
EnergyValue lq_norm(const CatalogFunction& u, double q, const Parameters& P,
                    const IntegralOptions& opt = {});

/// Raw int_B |u|^q dV without the 1/q root (used by the integrability probe).
EnergyValue lq_integral(const CatalogFunction& u, double q, const Parameters& P,
                        const IntegralOptions& opt = {});

/// Mixed energy int_B (-u0)^p dd^c u_1 ^ ... ^ dd^c u_m ^ beta^(n-m) over
/// the radial family, via the polarized density.
EnergyValue mixed_energy(const CatalogFunction& u0, std::span<const CatalogFunction> us,
                         const Parameters& P, const IntegralOptions& opt = {});

/// Plain Monte Carlo over the unit ball: uniform sampling via a Gaussian
/// direction and radius ~ U^(1/2n); reports the standard error.
EnergyValue monte_carlo_integral(const std::function<double(const Point&)>& f, int n,
                                 uint64_t seed, size_t samples = 1'000'000);

struct SublevelVolume {
  double s = 0.0;
  double volume = 0.0;
};

/// Lebesgue volume of {u < -s} for radial nondecreasing members (a ball;
/// the squared radius is found by bisection on the profile).
SublevelVolume sublevel_volume(const CatalogFunction& u, double s);

/// Richardson extrapolation assuming first-order convergence in eps:
/// returns 2*v_last - v_prev and the ladder itself.
EnergyValue richardson_from_ladder(const std::vector<std::pair<double, double>>& ladder);

}  // namespace mhess
