#pragma once

#include <stdexcept>
#include <string>

namespace mhess {

/// Problem parameters: dimension n, Hessian order m (or a Poincare pair
/// l < k), energy weight exponent p, Lebesgue exponent q.
struct Parameters {
  int n = 2;
  int m = 1;
  int l = 0;  // Poincare pair, active when l >= 1
  int k = 0;
  double p = 0.0;
  double q = 0.0;
};

inline void require_nm(const Parameters& P) {
  if (P.n < 2) throw std::invalid_argument("n must be >= 2, got " + std::to_string(P.n));
  if (P.m < 1 || P.m > P.n)
    throw std::invalid_argument("m must satisfy 1 <= m <= n, got m = " +
                                std::to_string(P.m) + ", n = " + std::to_string(P.n));
}

/// Families built on the fundamental solution need m < n (the exponent
/// 2 - 2n/m must be negative).
inline void require_m_strict(const Parameters& P) {
  require_nm(P);
  if (P.m == P.n)
    throw std::invalid_argument(
        "m = n makes the fundamental-solution exponent 2 - 2n/m degenerate "
        "(zero); these families need 1 <= m < n");
}

inline void require_lk(const Parameters& P) {
  if (P.n < 2) throw std::invalid_argument("n must be >= 2");
  if (P.l < 1 || P.l >= P.k || P.k > P.n)
    throw std::invalid_argument("Poincare pair must satisfy 1 <= l < k <= n, got l = " +
                                std::to_string(P.l) + ", k = " + std::to_string(P.k));
}

inline void require_p(const Parameters& P) {
  if (P.p < 0.0) throw std::invalid_argument("p must be >= 0, got " + std::to_string(P.p));
}

inline void require_q_positive(double q) {
  if (!(q > 0.0)) throw std::invalid_argument("q must be > 0, got " + std::to_string(q));
}

}  // namespace mhess
