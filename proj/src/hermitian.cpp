#include "mhess/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mhess {

NotHermitianError::NotHermitianError(double max_asym, double tol)
    : std::invalid_argument("matrix is not Hermitian: max |a_jk - conj(a_kj)| = " +
                            std::to_string(max_asym) + " exceeds tolerance " +
                            std::to_string(tol)),
      max_asymmetry(max_asym),
      tolerance(tol) {}

EigenConvergenceError::EigenConvergenceError(double off_norm)
    : std::runtime_error("Jacobi iteration did not converge; off-diagonal norm " +
                         std::to_string(off_norm)),
      off_diagonal_norm(off_norm) {}

HermitianMatrix::HermitianMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
  a_.assign(static_cast<size_t>(dim) * dim, complexd{0.0, 0.0});
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  HermitianMatrix m(static_cast<int>(d.size()));
  for (int j = 0; j < m.dim(); ++j) m.at(j, j) = d[static_cast<size_t>(j)];
  return m;
}

double HermitianMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (int j = 0; j < dim_; ++j)
    for (int k = j; k < dim_; ++k)
      worst = std::max(worst, std::abs(at(j, k) - std::conj(at(k, j))));
  return worst;
}

void HermitianMatrix::hermitize() {
  for (int j = 0; j < dim_; ++j) {
    for (int k = j + 1; k < dim_; ++k) {
      complexd avg = 0.5 * (at(j, k) + std::conj(at(k, j)));
      at(j, k) = avg;
      at(k, j) = std::conj(avg);
    }
    at(j, j) = complexd{at(j, j).real(), 0.0};
  }
}

double HermitianMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (int j = 0; j < dim_; ++j) t += at(j, j).real();
  return t;
}

double HermitianMatrix::determinant() const {
  std::vector<complexd> lu = a_;
  const int n = dim_;
  complexd det{1.0, 0.0};
  auto idx = [n](int j, int k) { return static_cast<size_t>(j) * n + k; };
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(lu[idx(col, col)]);
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(lu[idx(r, col)]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(lu[idx(pivot, c)], lu[idx(col, c)]);
      det = -det;
    }
    det *= lu[idx(col, col)];
    for (int r = col + 1; r < n; ++r) {
      complexd f = lu[idx(r, col)] / lu[idx(col, col)];
      for (int c = col + 1; c < n; ++c) lu[idx(r, c)] -= f * lu[idx(col, c)];
    }
  }
  return det.real();
}

double Spectrum::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

namespace {

double off_diagonal_norm(const HermitianMatrix& m) {
  double s = 0.0;
  for (int j = 0; j < m.dim(); ++j)
    for (int k = 0; k < m.dim(); ++k)
      if (j != k) s += std::norm(m.at(j, k));
  return std::sqrt(s);
}

}  // namespace

Spectrum eigenvalues(const HermitianMatrix& input, const EigenOptions& opt) {
  double asym = input.max_asymmetry();
  if (asym > opt.hermitian_tol) throw NotHermitianError(asym, opt.hermitian_tol);

  HermitianMatrix a = input;
  a.hermitize();
  const int n = a.dim();
  const double threshold = opt.convergence_factor * (1.0 + a.frobenius_norm());

  if (n == 1) return Spectrum{{a.at(0, 0).real()}};

  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) < threshold) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        complexd apq = a.at(p, q);
        double mag = std::abs(apq);
        if (mag == 0.0) continue;
        double app = a.at(p, p).real();
        double aqq = a.at(q, q).real();

        // Phase that makes the pivot real, then a real Jacobi rotation.
        complexd phase = apq / mag;
        double theta = 0.5 * std::atan2(2.0 * mag, app - aqq);
        double c = std::cos(theta);
        complexd s = std::sin(theta) * std::conj(phase);

        // Columns: A <- A J with J = [[c, -conj(s)], [s, c]] acting on (p,q).
        for (int r = 0; r < n; ++r) {
          complexd arp = a.at(r, p), arq = a.at(r, q);
          a.at(r, p) = c * arp + s * arq;
          a.at(r, q) = -std::conj(s) * arp + c * arq;
        }
        // Rows: A <- J^* A.
        for (int r = 0; r < n; ++r) {
          complexd apr = a.at(p, r), aqr = a.at(q, r);
          a.at(p, r) = c * apr + std::conj(s) * aqr;
          a.at(q, r) = -s * apr + c * aqr;
        }
        a.at(p, q) = complexd{0.0, 0.0};
        a.at(q, p) = complexd{0.0, 0.0};
      }
    }
  }

  double off = off_diagonal_norm(a);
  if (off >= threshold) throw EigenConvergenceError(off);

  Spectrum s;
  s.values.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) s.values.push_back(a.at(j, j).real());
  std::sort(s.values.begin(), s.values.end());
  return s;
}

std::vector<double> sigma_all(std::span<const double> values) {
  const size_t n = values.size();
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  size_t used = 0;
  for (double x : values) {
    ++used;
    for (size_t k = used; k >= 1; --k) e[k] += x * e[k - 1];
  }
  return e;
}

double sigma_k(int k, std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  if (k < 0 || k > n)
    throw std::invalid_argument("sigma_k: k = " + std::to_string(k) +
                                " out of range [0, " + std::to_string(n) + "]");
  return sigma_all(values)[static_cast<size_t>(k)];
}

double sigma_k(int k, const Spectrum& s) { return sigma_k(k, std::span(s.values)); }

double polarized_sigma(int m, std::span<const Spectrum> vs) {
  if (m < 1 || static_cast<size_t>(m) != vs.size())
    throw std::invalid_argument("polarized_sigma: need exactly m spectra");
  const size_t n = vs[0].values.size();
  for (const auto& v : vs)
    if (v.values.size() != n)
      throw std::invalid_argument("polarized_sigma: spectra of mismatched length");
  if (static_cast<size_t>(m) > n)
    throw std::invalid_argument("polarized_sigma: m exceeds spectrum length");

  double acc = 0.0;
  std::vector<double> sum(n);
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::fill(sum.begin(), sum.end(), 0.0);
    int bits = 0;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        ++bits;
        for (size_t j = 0; j < n; ++j) sum[j] += vs[static_cast<size_t>(i)].values[j];
      }
    }
    double sign = ((m - bits) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * sigma_k(m, std::span<const double>(sum));
  }
  double mfact = 1.0;
  for (int i = 2; i <= m; ++i) mfact *= i;
  return acc / mfact;
}

}  // namespace mhess
