#pragma once

#include <span>
#include <vector>

#include "mhess/catalog.hpp"
#include "mhess/hermitian.hpp"
#include "mhess/params.hpp"

namespace mhess {

/// 4^n m! (n-m)!, the density normalization of H_m(u) against dV_{2n}
/// (convention d^c = i(conj-d - d), so dd^c|z|^2 = 4 sum dx_j ^ dy_j).
double hessian_normalization(int n, int m);

/// Pointwise H_m density: value = 4^n m! (n-m)! sigma_m(spectrum).
/// Nonnegative for m-subharmonic inputs.
struct DensityValue {
  double value = 0.0;
};

enum class MshClass { msh, not_msh, boundary_case };

struct MshReport {
  MshClass verdict = MshClass::msh;
  Point witness;          // offending sample for not_msh
  int witness_k = 0;      // index k with sigma_k < -tol
  double min_sigma = 0.0; // min over samples and k of normalized sigma_k
};

struct MshOptions {
  double sigma_tol = 1e-9;  // absolute, after Frobenius normalization
  double fd_step = 1e-4;
};

/// C^2 criterion: sigma_1,...,sigma_m of the Hessian spectrum >= 0 at every
/// sample point. Spectra are taken from the analytic Hessian when the
/// member has one, else from the finite-difference Hessian; the sigmas are
/// evaluated on the spectrum normalized by the Frobenius norm.
MshReport msh_check(const CatalogFunction& u, const Parameters& P,
                    std::span<const Point> sample, const MshOptions& opt = {});

/// Spectrum of u at z via the best available route.
Spectrum hessian_spectrum_at(const CatalogFunction& u, const Point& z, double fd_step = 1e-4);

DensityValue hessian_density(const CatalogFunction& u, const Parameters& P, const Point& z,
                             double fd_step = 1e-4);

/// Radial fast path: density from the profile at |z|^2 = t.
double hessian_density_radial(const RadialProfile& profile, const Parameters& P, double t);

/// Mixed density 4^n m! (n-m)! Pol(sigma_m)(spectra of the m inputs) for
/// simultaneously diagonalizable (radial) inputs at |z|^2 = t.
double mixed_density(std::span<const CatalogFunction> us, const Parameters& P, double t);
double mixed_density(std::span<const RadialProfile* const> profiles, const Parameters& P,
                     double t);

/// max |sigma_m| along the grid; calibration diagnostic for profiles that
/// should be m-harmonic away from the origin.
double mharmonicity_residual(const RadialProfile& profile, const Parameters& P,
                             std::span<const double> grid);

/// Seeded sample of points in the ball of radius `radius` (uniform).
std::vector<Point> sample_ball_points(int n, int count, uint64_t seed, double radius = 0.9);

}  // namespace mhess
