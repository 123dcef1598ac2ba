#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhess {

using complexd = std::complex<double>;

/// Thrown when a matrix handed to the spectral routines is not Hermitian
/// within tolerance. Carries the worst offending |a_jk - conj(a_kj)|.
class NotHermitianError : public std::invalid_argument {
public:
  NotHermitianError(double max_asymmetry, double tolerance);
  double max_asymmetry;
  double tolerance;
};

/// Thrown when the Jacobi sweep cap is reached before the off-diagonal
/// norm drops below the convergence threshold.
class EigenConvergenceError : public std::runtime_error {
public:
  explicit EigenConvergenceError(double off_diagonal_norm);
  double off_diagonal_norm;
};

/// Dense complex matrix, row-major, intended to hold a Hermitian matrix
/// (a_jk = conj(a_kj)); small dimensions only (n <= 8 in practice).
class HermitianMatrix {
public:
  explicit HermitianMatrix(int dim);
  static HermitianMatrix diagonal(const std::vector<double>& d);

  int dim() const { return dim_; }
  complexd& at(int j, int k) { return a_[static_cast<size_t>(j) * dim_ + k]; }
  const complexd& at(int j, int k) const {
    return a_[static_cast<size_t>(j) * dim_ + k];
  }

  /// max_jk |a_jk - conj(a_kj)|
  double max_asymmetry() const;
  /// Replace by (A + A^*)/2.
  void hermitize();

  double frobenius_norm() const;
  /// Real part of the trace (diagonal is real for Hermitian input).
  double trace() const;
  /// Determinant by LU with partial pivoting; real part returned
  /// (imaginary part is roundoff for Hermitian input).
  double determinant() const;

private:
  int dim_;
  std::vector<complexd> a_;
};

/// Eigenvalues of a Hermitian matrix, sorted ascending.
struct Spectrum {
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  double sum() const;
};

struct EigenOptions {
  double hermitian_tol = 1e-9;  // rejection threshold on max asymmetry
  int max_sweeps = 100;
  double convergence_factor = 1e-13;  // off(A) < factor * (1 + ||A||_F)
};

/// Full spectrum via cyclic complex Jacobi rotations. The input is
/// Hermitian-symmetrized internally after the asymmetry check.
Spectrum eigenvalues(const HermitianMatrix& m, const EigenOptions& opt = {});

/// k-th elementary symmetric polynomial of the entries, via the
/// coefficient recursion e_k <- e_k + x * e_{k-1} (one pass, no subset
/// enumeration). sigma_0 = 1.
double sigma_k(int k, std::span<const double> values);
double sigma_k(int k, const Spectrum& s);

/// All of sigma_0..sigma_n in one pass.
std::vector<double> sigma_all(std::span<const double> values);

/// Symmetric multilinear polarization of sigma_m, evaluated on m spectra
/// of equal length via inclusion-exclusion:
///   Pol(v_1,...,v_m) = (1/m!) sum_{S != empty} (-1)^{m-|S|} sigma_m(sum_{i in S} v_i).
/// Diagonal recovers sigma_m: Pol(v,...,v) = sigma_m(v).
double polarized_sigma(int m, std::span<const Spectrum> vs);

}  // namespace mhess
