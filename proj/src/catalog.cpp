#include "mhess/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mhess {

double smooth_max(double a, double b, double eps) {
  double hi = std::max(a, b);
  double gap = std::abs(a - b);
  if (gap > 1e150) return hi;
  double r = std::hypot(gap, eps);
  return hi + eps * eps / (2.0 * (r + gap));
}

double smooth_max_da(double a, double b, double eps) {
  double gap = a - b;
  if (gap > 1e150) return 1.0;
  if (gap < -1e150) return 0.0;
  double r = std::hypot(gap, eps);
  return 0.5 * (1.0 + gap / r);
}

double smooth_max_daa(double a, double b, double eps) {
  double r = std::hypot(a - b, eps);
  double q = eps / r;
  return 0.5 * q * q / r;
}

namespace {

double pow_int(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

double squared_norm(const Point& z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return s;
}

RadialProfile make_smooth(std::function<double(double)> g, std::function<double(double)> g1,
                          std::function<double(double)> g2, std::string label,
                          bool singular = false) {
  RadialProfile p;
  p.g = std::move(g);
  p.g1 = std::move(g1);
  p.g2 = std::move(g2);
  p.label = std::move(label);
  p.singular_at_zero = singular;
  return p;
}

/// Truncated fundamental-solution shape: pref * max(1 - t^a, level) with
/// a = 1 - n/m < 0 and level < 0 or < 1. The smoothed profile replaces max
/// by smooth_max with width eps and carries split hints around the
/// switching sphere t_s = (1 - level)^(1/a).
struct MaxFamilyShape {
  double pref;
  double level;
  double a;
  std::string label;

  double t_switch() const { return std::pow(1.0 - level, 1.0 / a); }

  RadialProfile smoothed(double eps) const {
    double aa = a;
    double lv = level;
    double pf = pref;
    double ts = t_switch();
    RadialProfile p;
    p.g = [=](double t) { return pf * smooth_max(1.0 - std::pow(t, aa), lv, eps); };
    p.g1 = [=](double t) {
      double A = 1.0 - std::pow(t, aa);
      double A1 = -aa * std::pow(t, aa - 1.0);
      return pf * smooth_max_da(A, lv, eps) * A1;
    };
    p.g2 = [=](double t) {
      double A = 1.0 - std::pow(t, aa);
      double A1 = -aa * std::pow(t, aa - 1.0);
      double A2 = -aa * (aa - 1.0) * std::pow(t, aa - 2.0);
      return pf * (smooth_max_daa(A, lv, eps) * A1 * A1 + smooth_max_da(A, lv, eps) * A2);
    };
    p.label = label + " [eps=" + std::to_string(eps) + "]";
    p.singular_at_zero = true;  // derivative spike wanders toward 0 with the level
    // switching-zone half width: |A - level| <= eps  <=>  |t - ts| <= eps/|A'(ts)|
    double half = eps * ts / (std::abs(aa) * (1.0 - lv));
    for (double w : {80.0, 8.0, 1.0}) {
      double lo = ts - w * half, hi = ts + w * half;
      if (lo > 1e-14 && lo < 1.0) p.breakpoints.push_back(lo);
      if (hi > 1e-14 && hi < 1.0) p.breakpoints.push_back(hi);
    }
    p.breakpoints.push_back(ts);
    std::sort(p.breakpoints.begin(), p.breakpoints.end());
    return p;
  }

  RadialProfile exact() const {
    double aa = a;
    double lv = level;
    double pf = pref;
    double ts = t_switch();
    RadialProfile p;
    p.g = [=](double t) { return pf * std::max(1.0 - std::pow(t, aa), lv); };
    p.g1 = [=](double t) {
      if (std::abs(t - ts) < 1e-12 * (1.0 + ts))
        throw std::domain_error("derivative requested at the switching kink t = " +
                                std::to_string(ts) + "; use the smoothed profile");
      return t < ts ? 0.0 : -aa * std::pow(t, aa - 1.0);
    };
    p.g2 = [=](double t) {
      if (std::abs(t - ts) < 1e-12 * (1.0 + ts))
        throw std::domain_error("derivative requested at the switching kink t = " +
                                std::to_string(ts) + "; use the smoothed profile");
      return t < ts ? 0.0 : -aa * (aa - 1.0) * std::pow(t, aa - 2.0);
    };
    p.label = label;
    p.kink = ts;
    p.breakpoints.push_back(ts);
    return p;
  }
};

CatalogFunction from_max_shape(const MaxFamilyShape& shape, int n, double eps) {
  CatalogFunction f;
  f.label = shape.label;
  f.n = n;
  f.is_max_type = true;
  f.radial = shape.smoothed(eps);
  f.radial_exact = shape.exact();
  f.radial_at_eps = [shape](double e) { return shape.smoothed(e); };
  f.eval = [shape](const Point& z) {
    double t = squared_norm(z);
    return shape.pref * std::max(1.0 - std::pow(t, shape.a), shape.level);
  };
  // |u| peaks at the center where the truncation is active
  f.sup_norm = shape.pref * (-shape.level);
  return f;
}

HermitianMatrix radial_hessian_matrix(const RadialProfile& prof, int n, const Point& z) {
  double t = squared_norm(z);
  double d1 = prof.g1(t);
  double d2 = prof.g2(t);
  HermitianMatrix h(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      complexd v = d2 * std::conj(z[static_cast<size_t>(j)]) * z[static_cast<size_t>(k)];
      if (j == k) v += d1;
      h.at(j, k) = v;
    }
  }
  return h;
}

}  // namespace

RadialProfile truncated_fundamental_profile(int n, int m, double pref, double level,
                                            double eps) {
  Parameters P;
  P.n = n;
  P.m = m;
  require_m_strict(P);
  if (!(eps > 0.0)) throw std::invalid_argument("smoothing width eps must be > 0");
  if (!(level < 1.0)) throw std::invalid_argument("truncation level must be < 1");
  MaxFamilyShape shape{pref, level, 1.0 - static_cast<double>(n) / m,
                       "truncated_fundamental"};
  return shape.smoothed(eps);
}

CatalogFunction catalog_function(const std::string& name, const Parameters& P,
                                 const FamilyParams& fam, const std::vector<double>& coeffs) {
  const int n = P.n;
  if (n < 2) throw std::invalid_argument("catalog functions live on the ball in C^n, n >= 2");

  if (name == "quadratic_exhaustion") {
    CatalogFunction f;
    f.label = name;
    f.n = n;
    f.radial = make_smooth([](double t) { return t - 1.0; }, [](double) { return 1.0; },
                           [](double) { return 0.0; }, name);
    f.eval = [](const Point& z) { return squared_norm(z) - 1.0; };
    f.analytic_hessian = [n, prof = *f.radial](const Point& z) {
      return radial_hessian_matrix(prof, n, z);
    };
    f.sup_norm = 1.0;
    return f;
  }

  if (name == "fundamental_solution") {
    require_m_strict(P);
    double a = 1.0 - static_cast<double>(n) / P.m;
    CatalogFunction f;
    f.label = name;
    f.n = n;
    f.radial = make_smooth([a](double t) { return 1.0 - std::pow(t, a); },
                           [a](double t) { return -a * std::pow(t, a - 1.0); },
                           [a](double t) { return -a * (a - 1.0) * std::pow(t, a - 2.0); },
                           name, /*singular=*/true);
    f.eval = [a](const Point& z) { return 1.0 - std::pow(squared_norm(z), a); };
    f.analytic_hessian = [n, prof = *f.radial](const Point& z) {
      return radial_hessian_matrix(prof, n, z);
    };
    f.sup_norm = std::numeric_limits<double>::infinity();
    return f;
  }

  if (name == "ex1_family" || name == "ex2_family" || name == "ex3_family") {
    require_m_strict(P);
    require_p(P);
    if (fam.j < 1) throw std::invalid_argument("family index j must be >= 1");
    if (!(fam.eps > 0.0)) throw std::invalid_argument("smoothing width eps must be > 0");
    double a = 1.0 - static_cast<double>(n) / P.m;
    double j = fam.j;
    MaxFamilyShape shape;
    shape.a = a;
    if (name == "ex1_family") {
      if (!(fam.alpha >= 0.0) || !(fam.beta > 0.0))
        throw std::invalid_argument("ex1_family needs alpha >= 0 and beta > 0");
      if (P.p > 0.0 && !(fam.beta > fam.alpha * (P.p + P.m) / P.p))
        throw std::invalid_argument(
            "ex1_family regime requires beta > alpha*(p+m)/p when p > 0 (got beta = " +
            std::to_string(fam.beta) + ", alpha*(p+m)/p = " +
            std::to_string(fam.alpha * (P.p + P.m) / P.p) + ")");
      shape.pref = std::pow(j, -fam.alpha);
      shape.level = 1.0 - std::pow(j, fam.beta);
      shape.label = "ex1_family[j=" + std::to_string(fam.j) + "]";
    } else if (name == "ex2_family") {
      shape.pref = std::pow(j, -P.p / (P.m + P.p));
      shape.level = -j;
      shape.label = "ex2_family[j=" + std::to_string(fam.j) + "]";
    } else {
      shape.pref = j;
      shape.level = -1.0 / j;
      shape.label = "ex3_family[j=" + std::to_string(fam.j) + "]";
    }
    return from_max_shape(shape, n, fam.eps);
  }

  if (name == "smooth_radial_polynomial") {
    std::vector<double> c = coeffs.empty() ? std::vector<double>{1.0} : coeffs;
    for (double ck : c)
      if (ck < 0.0)
        throw std::invalid_argument("smooth_radial_polynomial needs coefficients >= 0");
    CatalogFunction f;
    f.label = name;
    f.n = n;
    auto g = [c](double t) {
      double s = 0.0;
      for (size_t k = 0; k < c.size(); ++k) s += c[k] * (pow_int(t, static_cast<int>(k) + 1) - 1.0);
      return s;
    };
    auto g1 = [c](double t) {
      double s = 0.0;
      for (size_t k = 0; k < c.size(); ++k)
        s += c[k] * (static_cast<double>(k) + 1.0) * pow_int(t, static_cast<int>(k));
      return s;
    };
    auto g2 = [c](double t) {
      double s = 0.0;
      for (size_t k = 1; k < c.size(); ++k)
        s += c[k] * (static_cast<double>(k) + 1.0) * static_cast<double>(k) *
             pow_int(t, static_cast<int>(k) - 1);
      return s;
    };
    f.radial = make_smooth(g, g1, g2, name);
    f.eval = [g](const Point& z) { return g(squared_norm(z)); };
    f.analytic_hessian = [n, prof = *f.radial](const Point& z) {
      return radial_hessian_matrix(prof, n, z);
    };
    double s = 0.0;
    for (double ck : c) s += ck;
    f.sup_norm = s;  // |g(0)|
    return f;
  }

  if (name == "pluriharmonic_probe") {
    CatalogFunction f;
    f.label = name;
    f.n = n;
    f.eval = [](const Point& z) { return (z[0] * z[0]).real(); };
    f.analytic_hessian = [n](const Point&) { return HermitianMatrix(n); };
    f.sup_norm = 1.0;
    return f;
  }

  if (name == "anisotropic_quadratic") {
    std::vector<double> c = coeffs;
    if (c.empty()) {
      c.assign(static_cast<size_t>(n), -1.0);
      c[0] = 2.0;
    }
    if (c.size() != static_cast<size_t>(n))
      throw std::invalid_argument("anisotropic_quadratic needs one coefficient per variable");
    CatalogFunction f;
    f.label = name;
    f.n = n;
    f.eval = [c](const Point& z) {
      double s = 0.0;
      for (size_t j = 0; j < z.size(); ++j) s += c[j] * std::norm(z[j]);
      return s;
    };
    f.analytic_hessian = [c, n](const Point&) { return HermitianMatrix::diagonal(c); };
    return f;
  }

  throw std::invalid_argument("unknown catalog function: " + name);
}

CatalogFunction scaled(const CatalogFunction& u, double c) {
  if (!u.is_radial()) throw std::invalid_argument("scaled: radial members only");
  if (c < 0.0) throw std::invalid_argument("scaled: factor must be >= 0");
  CatalogFunction f;
  f.label = std::to_string(c) + "*" + u.label;
  f.n = u.n;
  f.is_max_type = u.is_max_type;
  auto scale_profile = [c](const RadialProfile& p, const std::string& lbl) {
    RadialProfile q = p;
    q.g = [c, g = p.g](double t) { return c * g(t); };
    q.g1 = [c, g1 = p.g1](double t) { return c * g1(t); };
    q.g2 = [c, g2 = p.g2](double t) { return c * g2(t); };
    q.label = lbl;
    return q;
  };
  f.radial = scale_profile(*u.radial, f.label);
  if (u.radial_exact) f.radial_exact = scale_profile(*u.radial_exact, f.label);
  if (u.radial_at_eps)
    f.radial_at_eps = [c, base = u.radial_at_eps, scale_profile, lbl = f.label](double e) {
      return scale_profile(base(e), lbl);
    };
  f.eval = [c, ev = u.eval](const Point& z) { return c * ev(z); };
  if (u.sup_norm) f.sup_norm = c * *u.sup_norm;
  return f;
}

CatalogFunction radial_sum(const CatalogFunction& u, const CatalogFunction& v) {
  if (!u.is_radial() || !v.is_radial())
    throw std::invalid_argument("radial_sum: radial members only");
  if (u.n != v.n) throw std::invalid_argument("radial_sum: dimension mismatch");
  CatalogFunction f;
  f.label = u.label + " + " + v.label;
  f.n = u.n;
  f.is_max_type = u.is_max_type || v.is_max_type;
  auto sum_profiles = [](const RadialProfile& a, const RadialProfile& b,
                         const std::string& lbl) {
    RadialProfile p;
    p.g = [ga = a.g, gb = b.g](double t) { return ga(t) + gb(t); };
    p.g1 = [ga = a.g1, gb = b.g1](double t) { return ga(t) + gb(t); };
    p.g2 = [ga = a.g2, gb = b.g2](double t) { return ga(t) + gb(t); };
    p.singular_at_zero = a.singular_at_zero || b.singular_at_zero;
    p.label = lbl;
    p.breakpoints = a.breakpoints;
    p.breakpoints.insert(p.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end());
    std::sort(p.breakpoints.begin(), p.breakpoints.end());
    return p;
  };
  f.radial = sum_profiles(*u.radial, *v.radial, f.label);
  if (u.radial_at_eps || v.radial_at_eps) {
    auto ua = u.radial_at_eps ? u.radial_at_eps
                              : [p = *u.radial](double) { return p; };
    auto va = v.radial_at_eps ? v.radial_at_eps
                              : [p = *v.radial](double) { return p; };
    f.radial_at_eps = [ua, va, sum_profiles, lbl = f.label](double e) {
      return sum_profiles(ua(e), va(e), lbl);
    };
  }
  f.eval = [eu = u.eval, ev = v.eval](const Point& z) { return eu(z) + ev(z); };
  return f;
}

Spectrum radial_hessian_spectrum(const RadialProfile& profile, int n, double t) {
  if (!(t > 0.0) || t > 1.0)
    throw std::invalid_argument("radial_hessian_spectrum: t must lie in (0, 1]");
  if (profile.kink && std::abs(t - *profile.kink) < 1e-12 * (1.0 + *profile.kink))
    throw std::domain_error("t hits the kink of a piecewise profile at t = " +
                            std::to_string(*profile.kink) +
                            "; use the smoothed profile for Hessian quantities");
  double tangential = profile.g1(t);
  double radial = tangential + t * profile.g2(t);
  Spectrum s;
  s.values.assign(static_cast<size_t>(n - 1), tangential);
  s.values.push_back(radial);
  std::sort(s.values.begin(), s.values.end());
  return s;
}

PointHessian fd_hessian(const std::function<double(const Point&)>& u, const Point& point,
                        double h) {
  const int n = static_cast<int>(point.size());
  if (n < 1) throw std::invalid_argument("fd_hessian: empty point");
  if (!(h > 0.0)) throw std::invalid_argument("fd_hessian: step must be > 0");
  double norm = 0.0;
  for (const auto& c : point) norm += std::norm(c);
  norm = std::sqrt(norm);
  if (norm + 4.0 * h > 1.0)
    throw std::invalid_argument("fd_hessian: point too close to the boundary for the stencil "
                                "(need |z| + 4h <= 1)");

  // real coordinates: 2j -> x_j, 2j+1 -> y_j
  auto shifted = [&](int c1, double d1, int c2, double d2) {
    Point z = point;
    auto bump = [&z](int c, double d) {
      auto& entry = z[static_cast<size_t>(c / 2)];
      if (c % 2 == 0)
        entry += complexd{d, 0.0};
      else
        entry += complexd{0.0, d};
    };
    bump(c1, d1);
    if (c2 >= 0) bump(c2, d2);
    return u(z);
  };

  const double u0 = u(point);
  const int dim2 = 2 * n;
  // second partials over real coordinates
  std::vector<double> d2(static_cast<size_t>(dim2) * dim2, 0.0);
  for (int a = 0; a < dim2; ++a) {
    for (int b = a; b < dim2; ++b) {
      double v;
      if (a == b) {
        v = (shifted(a, h, -1, 0.0) - 2.0 * u0 + shifted(a, -h, -1, 0.0)) / (h * h);
      } else {
        v = (shifted(a, h, b, h) - shifted(a, h, b, -h) - shifted(a, -h, b, h) +
             shifted(a, -h, b, -h)) /
            (4.0 * h * h);
      }
      d2[static_cast<size_t>(a) * dim2 + b] = v;
      d2[static_cast<size_t>(b) * dim2 + a] = v;
    }
  }
  auto dxx = [&](int a, int b) { return d2[static_cast<size_t>(a) * dim2 + b]; };

  PointHessian ph{point, HermitianMatrix(n), Spectrum{}, 0.0};
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      double re = 0.25 * (dxx(2 * j, 2 * k) + dxx(2 * j + 1, 2 * k + 1));
      double im = 0.25 * (dxx(2 * j, 2 * k + 1) - dxx(2 * j + 1, 2 * k));
      ph.matrix.at(j, k) = complexd{re, im};
    }
  }
  ph.asymmetry_defect = ph.matrix.max_asymmetry();
  ph.matrix.hermitize();
  ph.spectrum = eigenvalues(ph.matrix);
  return ph;
}

}  // namespace mhess
