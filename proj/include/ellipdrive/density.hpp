#pragma once

#include <array>

#include "ellipdrive/elliptic.hpp"
#include "ellipdrive/su3.hpp"

namespace ellipdrive {

/**
 * Real coefficients of the elliptic density-matrix solution
 *
 *   rho(t) = I/3 + A cn [S4]_t + B sn [S1]_t + C dn [S7]_t
 *
 * together with the parameters they were solved for. T = sqrt(A^2 + C^2).
 */
struct DensityCoeffs {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double T = 0.0;
  double k = 0.0;
  double omega = 1.0;
  double hbar = 1.0;
  double mu = 0.0;
  double lambda = 0.0;

  /// Residuals of  hbar w B = mu A C,  2 hbar w k^2 C = (lambda+mu) A B,
  /// -2 hbar w A = (lambda-mu) B C  (left minus right).
  std::array<double, 3> condition_residuals() const;
  /// Spectrum {1/3 - T/2, 1/3, 1/3 + T/2}, ascending.
  std::array<double, 3> eigenvalues() const;
  /// False when 1/3 - T/2 < 0, i.e. rho is not a state.
  bool physical() const { return 1.0 / 3.0 - 0.5 * T >= 0.0; }
};

/**
 * Solves the coefficient conditions for 0 < |lambda| < mu with the branch
 * A, C > 0 and B = mu A C / (hbar w). DomainError otherwise, and for
 * k = 0 (A = 0 with k < 1 makes G(t) singular).
 */
DensityCoeffs solve_coeffs(double mu, double lambda, double omega, double k, double hbar);

/**
 * Level order of the static Hamiltonian framing rho(t).
 *
 * `printed` is (2/3) diag(-mu, mu, lambda). `swapped` exchanges levels 1 and
 * 2, (2/3) diag(mu, -mu, lambda); only under this order do the coefficient
 * conditions above make rho(t) a solution of the nonlinear equation.
 */
enum class FreeHamiltonianOrder { printed, swapped };
const char* to_string(FreeHamiltonianOrder o);

FreeHamiltonian density_free_hamiltonian(const DensityCoeffs& c, FreeHamiltonianOrder order);

/// Hermitian, unit-trace 3x3 matrix.
class DensityMatrix {
 public:
  /// DomainError unless Hermitian and trace one within `tol`.
  explicit DensityMatrix(const ComplexMat3& m, double tol = 1e-12);
  const ComplexMat3& matrix() const noexcept { return m_; }

 private:
  ComplexMat3 m_;
};

/// The two candidate right-hand sides: i hbar rho' = [H0, rho^2] or (3/2)[{H0,rho},rho].
enum class VonNeumannForm { plain, three_halves };
const char* to_string(VonNeumannForm f);

/// rho' for the chosen form, i.e. the bracket divided by i hbar.
ComplexMat3 nonlinear_rhs(const ComplexMat3& rho, const ComplexMat3& h0, double hbar,
                          VonNeumannForm form);

/// (3/2){H0, rho}: the linear Hamiltonian that rho(t) also evolves under.
ComplexMat3 effective_hamiltonian(const ComplexMat3& rho, const ComplexMat3& h0);

class DensitySolution {
 public:
  explicit DensitySolution(const DensityCoeffs& c,
                           FreeHamiltonianOrder order = FreeHamiltonianOrder::swapped);

  const DensityCoeffs& coeffs() const noexcept { return c_; }
  const FreeHamiltonian& free_hamiltonian() const noexcept { return h0_; }
  FreeHamiltonianOrder order() const noexcept { return order_; }
  double drive_period() const noexcept { return period_; }

  /// The bracketed matrix before the interaction-picture conjugation.
  ComplexMat3 rotating_frame_rho(double t) const;
  DensityMatrix rho(double t) const;

  /// sqrt(A^2 cn^2 + C^2 dn^2).
  double r_function(double t) const;
  /// Unitary whose columns diagonalize rotating_frame_rho(t), eigenvalue order (1/3, 1/3-T/2, 1/3+T/2).
  ComplexMat3 g_matrix(double t) const;
  /// exp(-itH0/hbar) G(t) G(0)^dagger, so that rho(t) = V rho(0) V^dagger.
  ComplexMat3 v_matrix(double t) const;

 private:
  DensityCoeffs c_;
  FreeHamiltonianOrder order_;
  FreeHamiltonian h0_;
  EllipticModulus k_;
  double period_;
  ComplexMat3 g0_adjoint_;
};

}  // namespace ellipdrive
