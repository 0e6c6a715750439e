#pragma once

namespace ellipdrive {

/// Values of the three Jacobi elliptic functions at one phase.
struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// Elliptic modulus k in [0, 1]. Construction rejects anything else.
class EllipticModulus {
 public:
  explicit EllipticModulus(double k);
  double value() const noexcept { return k_; }
  /// Complementary parameter 1 - k^2, computed as (1-k)(1+k).
  double complementary() const noexcept { return (1.0 - k_) * (1.0 + k_); }

 private:
  double k_;
};

/**
 * Jacobi elliptic functions sn(u,k), cn(u,k), dn(u,k).
 *
 * Uses Bulirsch's descending Gauss (AGM) transformation in the
 * complementary parameter, which stays accurate as k -> 1. At k = 1
 * exactly the hyperbolic forms (tanh, sech, sech) are returned.
 * The phase u is the already-multiplied product omega * t.
 */
JacobiTriple jacobi(double u, EllipticModulus k);
JacobiTriple jacobi(double u, double k);

/// Complete elliptic integral of the first kind K(k), by the AGM.
/// Throws DomainError for k outside [0,1) (k = 1 diverges).
double quarter_period(EllipticModulus k);
double quarter_period(double k);

}  // namespace ellipdrive
