#pragma once

#include <array>

#include "ellipdrive/elliptic.hpp"
#include "ellipdrive/su3.hpp"

namespace ellipdrive {

/// Drive H = H0 + a cn(wt,k) [S4]_t + x dn(wt,k) [S7]_t.
struct DriveParams {
  double a = 0.3;      // cn-drive amplitude (energy)
  double x = 1.6;      // dn-drive amplitude (energy)
  double omega = 1.0;  // inverse time
  double k = 0.25;     // elliptic modulus
  double hbar = 1.0;
};

struct DerivedConstants {
  double B = 0.0;  // 2 k^2 hbar omega
  double T = 0.0;  // sqrt(a^2 + k^4 x^2)
  /// T^2 - B^2 - a^2 (1 - k^2); vanishes when the drive condition holds.
  double identity_residual = 0.0;
};

/// 4k^2(hbar w)^2 - a^2 - k^2 x^2.
double condition_residual(const DriveParams& p);

/**
 * Checks the drive parameters and returns (B, T).
 *
 * Rejects (DomainError) non-finite fields, k outside (0,1], negative
 * amplitudes, and a = 0 with k < 1 (R(t) would vanish at quarter periods).
 * Throws ValidationError carrying the residual when
 * |4k^2(hbar w)^2 - a^2 - k^2 x^2| > 1e-10 (hbar w)^2.
 */
DerivedConstants validate(const DriveParams& p);

/// Positive x solving the drive condition for given a. DomainError if a > 2k hbar w or k <= 0.
double complete_x(double a, double k, double omega, double hbar);

enum class BasisLabel { zero = 0, plus = 1, minus = 2 };
inline constexpr std::array<BasisLabel, 3> kBasisLabels{BasisLabel::zero, BasisLabel::plus,
                                                        BasisLabel::minus};
const char* to_string(BasisLabel l);

/// Level occupations |psi_j|^2.
std::array<double, 3> occupations(const ComplexVec3& psi);

struct SolutionOptions {
  /// Debug switch: evaluate psi_+- with phi(t) forced to zero.
  bool suppress_phase = false;
};

/**
 * The closed-form orthonormal solution basis psi_0, psi_+, psi_- of
 * i hbar psi' = H(t) psi and everything built from it.
 *
 * Methods taking an explicit `phi` let callers that already accumulate
 * the phase along a time grid avoid re-integrating from t = 0.
 */
class ClosedFormSolution {
 public:
  ClosedFormSolution(const DriveParams& p, const FreeHamiltonian& h0, SolutionOptions opts = {});

  const DriveParams& params() const noexcept { return p_; }
  const DerivedConstants& constants() const noexcept { return c_; }
  const FreeHamiltonian& free_hamiltonian() const noexcept { return h0_; }
  const SolutionOptions& options() const noexcept { return opts_; }
  /// Drive period 4K(k)/omega; infinite at k = 1.
  double drive_period() const noexcept { return period_; }

  JacobiTriple jacobi_at(double t) const;

  /// sqrt(2) T sqrt(a^2(1-k^2) + B^2 cn^2).
  double amplitude_R(double t) const;
  /// sqrt(2) T sqrt(T^2 - B^2 sn^2); same value, other algebraic route.
  double amplitude_R_via_sn(double t) const;

  /// d(phi)/dt, the integrand of the phase.
  double phase_rate(double t) const;
  /// phi(t), by panelled adaptive Simpson quadrature from 0.
  double phase(double t) const;
  /// phi(t1) - phi(t0).
  double phase_increment(double t0, double t1) const;

  ComplexVec3 basis_state(BasisLabel l, double t) const;
  ComplexVec3 basis_state(BasisLabel l, double t, double phi) const;
  std::array<ComplexVec3, 3> basis(double t, double phi) const;

  /// Coefficients c_j = <psi_j(0), initial>. DomainError unless |initial| = 1 within 1e-8.
  std::array<Complex, 3> decompose(const ComplexVec3& initial) const;
  /// decompose() without the normalization precondition.
  std::array<Complex, 3> project(const ComplexVec3& initial) const;

  ComplexVec3 evolve(const ComplexVec3& initial, double t) const;
  ComplexVec3 evolve(const std::array<Complex, 3>& coeffs, double t, double phi) const;

  /// H0 + a cn [S4]_t + x dn [S7]_t.
  ComplexMat3 hamiltonian(double t) const;

 private:
  double phase_integral(double t0, double t1) const;

  DriveParams p_;
  DerivedConstants c_;
  FreeHamiltonian h0_;
  SolutionOptions opts_;
  EllipticModulus k_;
  double period_;
  double phase_prefactor_;
  ComplexMat3 s4_;
  ComplexMat3 s7_;
};

}  // namespace ellipdrive
