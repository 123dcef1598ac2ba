#include "mhess/hessian_ops.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace mhess {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double hessian_normalization(int n, int m) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= 4.0;
  for (int i = 2; i <= m; ++i) v *= i;
  for (int i = 2; i <= n - m; ++i) v *= i;
  return v;
}

Spectrum hessian_spectrum_at(const CatalogFunction& u, const Point& z, double fd_step) {
  if (u.is_radial()) {
    double t = 0.0;
    for (const auto& c : z) t += std::norm(c);
    if (t > 0.0) return radial_hessian_spectrum(*u.radial, u.n, t);
  }
  if (u.has_analytic_hessian()) return eigenvalues(u.analytic_hessian(z));
  return fd_hessian(u.eval, z, fd_step).spectrum;
}

MshReport msh_check(const CatalogFunction& u, const Parameters& P,
                    std::span<const Point> sample, const MshOptions& opt) {
  require_nm(P);
  MshReport report;
  report.min_sigma = std::numeric_limits<double>::infinity();
  for (const auto& z : sample) {
    Spectrum s = hessian_spectrum_at(u, z, opt.fd_step);
    double frob = 0.0;
    for (double v : s.values) frob += v * v;
    frob = std::sqrt(frob);
    std::vector<double> lam = s.values;
    if (frob > 1e-14)
      for (double& v : lam) v /= frob;
    auto sig = sigma_all(lam);
    for (int k = 1; k <= P.m; ++k) {
      double v = sig[static_cast<size_t>(k)];
      if (v < report.min_sigma) {
        report.min_sigma = v;
        report.witness = z;
        report.witness_k = k;
      }
    }
  }
  if (report.min_sigma < -opt.sigma_tol)
    report.verdict = MshClass::not_msh;
  else if (report.min_sigma <= opt.sigma_tol)
    report.verdict = MshClass::boundary_case;
  else
    report.verdict = MshClass::msh;
  return report;
}

DensityValue hessian_density(const CatalogFunction& u, const Parameters& P, const Point& z,
                             double fd_step) {
  require_nm(P);
  Spectrum s = hessian_spectrum_at(u, z, fd_step);
  return DensityValue{hessian_normalization(P.n, P.m) * sigma_k(P.m, s)};
}

double hessian_density_radial(const RadialProfile& profile, const Parameters& P, double t) {
  require_nm(P);
  Spectrum s = radial_hessian_spectrum(profile, P.n, t);
  return hessian_normalization(P.n, P.m) * sigma_k(P.m, s);
}

double mixed_density(std::span<const RadialProfile* const> profiles, const Parameters& P,
                     double t) {
  require_nm(P);
  if (profiles.size() != static_cast<size_t>(P.m))
    throw std::invalid_argument("mixed_density: need exactly m inputs");
  std::vector<Spectrum> spectra;
  spectra.reserve(profiles.size());
  for (const auto* p : profiles) spectra.push_back(radial_hessian_spectrum(*p, P.n, t));
  return hessian_normalization(P.n, P.m) *
         polarized_sigma(P.m, std::span<const Spectrum>(spectra));
}

double mixed_density(std::span<const CatalogFunction> us, const Parameters& P, double t) {
  std::vector<const RadialProfile*> profiles;
  profiles.reserve(us.size());
  for (const auto& u : us) {
    if (!u.is_radial())
      throw std::invalid_argument("mixed_density: input '" + u.label +
                                  "' is not radial; mixed products are supported on the "
                                  "common-eigenbasis (radial) family only");
    profiles.push_back(&*u.radial);
  }
  return mixed_density(std::span<const RadialProfile* const>(profiles), P, t);
}

double mharmonicity_residual(const RadialProfile& profile, const Parameters& P,
                             std::span<const double> grid) {
  require_nm(P);
  double worst = 0.0;
  for (double t : grid) {
    Spectrum s = radial_hessian_spectrum(profile, P.n, t);
    worst = std::max(worst, std::abs(sigma_k(P.m, s)));
  }
  return worst;
}

std::vector<Point> sample_ball_points(int n, int count, uint64_t seed, double radius) {
  std::mt19937_64 rng(seed);
  auto u01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(count));
  while (static_cast<int>(pts.size()) < count) {
    // Box-Muller direction, radius ~ U^(1/2n)
    std::vector<double> g(static_cast<size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
      double a = u01(), b = u01();
      if (a < 1e-300) a = 1e-300;
      double r = std::sqrt(-2.0 * std::log(a));
      g[static_cast<size_t>(2 * i)] = r * std::cos(2.0 * kPi * b);
      g[static_cast<size_t>(2 * i) + 1] = r * std::sin(2.0 * kPi * b);
    }
    double norm = 0.0;
    for (double v : g) norm += v * v;
    norm = std::sqrt(norm);
    if (norm < 1e-12) continue;
    double r = radius * std::pow(u01(), 1.0 / (2.0 * n));
    Point z(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      z[static_cast<size_t>(i)] = complexd{r * g[static_cast<size_t>(2 * i)] / norm,
                                           r * g[static_cast<size_t>(2 * i) + 1] / norm};
    pts.push_back(std::move(z));
  }
  return pts;
}

}  // namespace mhess
