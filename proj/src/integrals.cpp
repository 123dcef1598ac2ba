#include "mhess/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace mhess {

namespace {

double neg_part_pow(double g, double p) {
  double x = g < 0.0 ? -g : 0.0;
  return std::pow(x, p);  // pow(0, 0) = 1 covers p = 0
}

QuadratureOptions with_profile_hints(QuadratureOptions q, const RadialProfile& prof) {
  q.singular_origin = q.singular_origin || prof.singular_at_zero;
  q.breakpoints.insert(q.breakpoints.end(), prof.breakpoints.begin(), prof.breakpoints.end());
  return q;
}

}  // namespace

EnergyValue richardson_from_ladder(const std::vector<std::pair<double, double>>& ladder) {
  EnergyValue out;
  out.method = IntegralMethod::eps_extrapolation;
  out.eps_ladder = ladder;
  if (ladder.size() == 1) {
    out.value = ladder[0].second;
    out.abs_error_estimate = std::abs(ladder[0].second);
    return out;
  }
  double last = ladder.back().second;
  double prev = ladder[ladder.size() - 2].second;
  out.value = 2.0 * last - prev;
  out.abs_error_estimate = std::abs(last - prev);
  return out;
}

EnergyValue energy_of_profile(const RadialProfile& profile, const Parameters& P,
                              const QuadratureOptions& opt) {
  require_nm(P);
  require_p(P);
  const double norm = hessian_normalization(P.n, P.m);
  auto f = [&profile, &P, norm](double t) {
    Spectrum s = radial_hessian_spectrum(profile, P.n, t);
    return neg_part_pow(profile.g(t), P.p) * norm * sigma_k(P.m, s);
  };
  return radial_integral(f, P.n, with_profile_hints(opt, profile));
}

EnergyValue energy(const CatalogFunction& u, const Parameters& P, const IntegralOptions& opt) {
  require_nm(P);
  require_p(P);
  if (!u.is_radial())
    throw std::invalid_argument("energy: catalog member '" + u.label + "' is not radial");
  if (!u.is_max_type) return energy_of_profile(*u.radial, P, opt.quad);

  std::vector<std::pair<double, double>> ladder;
  for (double eps : opt.eps_ladder) {
    RadialProfile prof = u.radial_at_eps(eps);
    EnergyValue v = energy_of_profile(prof, P, opt.quad);
    if (v.divergent) return v;
    ladder.emplace_back(eps, v.value);
  }
  return richardson_from_ladder(ladder);
}

EnergyValue lq_integral(const CatalogFunction& u, double q, const Parameters& P,
                        const IntegralOptions& opt) {
  require_q_positive(q);
  if (!u.is_radial())
    throw std::invalid_argument("lq_norm: catalog member '" + u.label + "' is not radial");
  const RadialProfile& prof = u.exact_profile();
  auto f = [&prof, q](double t) { return std::pow(std::abs(prof.g(t)), q); };
  return radial_integral(f, P.n, with_profile_hints(opt.quad, prof));
}

EnergyValue lq_norm(const CatalogFunction& u, double q, const Parameters& P,
                    const IntegralOptions& opt) {
  EnergyValue raw = lq_integral(u, q, P, opt);
  if (raw.divergent) return raw;
  EnergyValue out = raw;
  out.value = std::pow(raw.value, 1.0 / q);
  // d(v^(1/q)) = v^(1/q - 1)/q dv
  out.abs_error_estimate =
      raw.value > 0.0 ? out.value / raw.value / q * raw.abs_error_estimate : 0.0;
  return out;
}

EnergyValue mixed_energy(const CatalogFunction& u0, std::span<const CatalogFunction> us,
                         const Parameters& P, const IntegralOptions& opt) {
  require_nm(P);
  require_p(P);
  if (us.size() != static_cast<size_t>(P.m))
    throw std::invalid_argument("mixed_energy: need exactly m inputs");
  if (!u0.is_radial())
    throw std::invalid_argument("mixed_energy: weight function must be radial");
  for (const auto& u : us)
    if (!u.is_radial())
      throw std::invalid_argument("mixed_energy: input '" + u.label +
                                  "' is not radial; mixed products are supported on the "
                                  "common-eigenbasis (radial) family only");

  const double norm = hessian_normalization(P.n, P.m);
  bool any_max = u0.is_max_type;
  for (const auto& u : us) any_max = any_max || u.is_max_type;

  auto run_at = [&](double eps) -> EnergyValue {
    RadialProfile w = (u0.is_max_type && u0.radial_at_eps) ? u0.radial_at_eps(eps) : *u0.radial;
    std::vector<RadialProfile> profs;
    profs.reserve(us.size());
    for (const auto& u : us)
      profs.push_back((u.is_max_type && u.radial_at_eps) ? u.radial_at_eps(eps) : *u.radial);
    QuadratureOptions q = with_profile_hints(opt.quad, w);
    for (const auto& pr : profs) q = with_profile_hints(q, pr);
    auto f = [&](double t) {
      std::vector<Spectrum> spectra;
      spectra.reserve(profs.size());
      for (const auto& pr : profs) spectra.push_back(radial_hessian_spectrum(pr, P.n, t));
      return neg_part_pow(w.g(t), P.p) * norm *
             polarized_sigma(P.m, std::span<const Spectrum>(spectra));
    };
    return radial_integral(f, P.n, q);
  };

  if (!any_max) return run_at(0.0);
  std::vector<std::pair<double, double>> ladder;
  for (double eps : opt.eps_ladder) {
    EnergyValue v = run_at(eps);
    if (v.divergent) return v;
    ladder.emplace_back(eps, v.value);
  }
  return richardson_from_ladder(ladder);
}

EnergyValue monte_carlo_integral(const std::function<double(const Point&)>& f, int n,
                                 uint64_t seed, size_t samples) {
  if (n < 1) throw std::invalid_argument("monte_carlo_integral: n must be >= 1");
  if (samples == 0) throw std::invalid_argument("monte_carlo_integral: need samples > 0");
  std::mt19937_64 rng(seed);
  auto u01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  constexpr double kPi = 3.14159265358979323846;

  double sum = 0.0, sumsq = 0.0;
  Point z(static_cast<size_t>(n));
  std::vector<double> g(static_cast<size_t>(2 * n));
  for (size_t i = 0; i < samples; ++i) {
    double norm = 0.0;
    do {
      for (int c = 0; c < n; ++c) {
        double a = u01(), b = u01();
        if (a < 1e-300) a = 1e-300;
        double r = std::sqrt(-2.0 * std::log(a));
        g[static_cast<size_t>(2 * c)] = r * std::cos(2.0 * kPi * b);
        g[static_cast<size_t>(2 * c) + 1] = r * std::sin(2.0 * kPi * b);
      }
      norm = 0.0;
      for (double v : g) norm += v * v;
      norm = std::sqrt(norm);
    } while (norm < 1e-12);
    double r = std::pow(u01(), 1.0 / (2.0 * n));
    for (int c = 0; c < n; ++c)
      z[static_cast<size_t>(c)] = complexd{r * g[static_cast<size_t>(2 * c)] / norm,
                                           r * g[static_cast<size_t>(2 * c) + 1] / norm};
    double v = f(z);
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / static_cast<double>(samples);
  double var = std::max(0.0, sumsq / static_cast<double>(samples) - mean * mean);
  double vol = ball_volume(n);
  EnergyValue out;
  out.method = IntegralMethod::monte_carlo;
  out.value = vol * mean;
  out.abs_error_estimate = vol * std::sqrt(var / static_cast<double>(samples));
  return out;
}

SublevelVolume sublevel_volume(const CatalogFunction& u, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("sublevel_volume: s must be > 0");
  if (!u.is_radial())
    throw std::invalid_argument("sublevel_volume: radial members only");
  const RadialProfile& prof = u.exact_profile();
  const double target = -s;
  // {g < -s} = [0, t0) for nondecreasing g; find the crossing by bisection.
  double ghi = prof.g(1.0);
  if (ghi < target) {
    // whole ball (cannot happen for members vanishing on the boundary)
    return {s, ball_volume(u.n)};
  }
  double lo = 1e-300, hi = 1.0;
  double glo = prof.g(lo);
  if (!(glo < target)) return {s, 0.0};  // empty sublevel set
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (prof.g(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  double t0 = 0.5 * (lo + hi);
  double vol = ball_volume(u.n);
  for (int i = 0; i < u.n; ++i) vol *= t0;
  return {s, vol};
}

}  // namespace mhess
