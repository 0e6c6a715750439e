#include "ellipdrive/density.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ellipdrive/errors.hpp"

namespace ellipdrive {

std::array<double, 3> DensityCoeffs::condition_residuals() const {
  const double hw = hbar * omega;
  return {hw * B - mu * A * C, 2.0 * hw * k * k * C - (lambda + mu) * A * B,
          -2.0 * hw * A - (lambda - mu) * B * C};
}

std::array<double, 3> DensityCoeffs::eigenvalues() const {
  return {1.0 / 3.0 - 0.5 * T, 1.0 / 3.0, 1.0 / 3.0 + 0.5 * T};
}

DensityCoeffs solve_coeffs(double mu, double lambda, double omega, double k, double hbar) {
  if (!(mu > 0.0)) throw DomainError("solve_coeffs: mu must be positive");
  if (!(lambda != 0.0 && std::abs(lambda) < mu)) {
    throw DomainError("solve_coeffs: requires 0 < |lambda| < mu");
  }
  if (!(omega > 0.0) || !(hbar > 0.0)) throw DomainError("solve_coeffs: omega, hbar must be positive");
  EllipticModulus modulus(k);
  if (k == 0.0) throw DomainError("solve_coeffs: k = 0 gives A = 0 and a singular G(t)");

  const double hw = hbar * omega;
  DensityCoeffs c;
  c.k = modulus.value();
  c.omega = omega;
  c.hbar = hbar;
  c.mu = mu;
  c.lambda = lambda;
  c.A = std::sqrt(2.0 * hw * hw * k * k / (mu * (lambda + mu)));
  c.C = std::sqrt(2.0 * hw * hw / (mu * (mu - lambda)));
  c.B = mu * c.A * c.C / hw;
  c.T = std::hypot(c.A, c.C);
  return c;
}

const char* to_string(FreeHamiltonianOrder o) {
  return o == FreeHamiltonianOrder::printed ? "printed" : "swapped";
}

FreeHamiltonian density_free_hamiltonian(const DensityCoeffs& c, FreeHamiltonianOrder order) {
  const double s = order == FreeHamiltonianOrder::printed ? 1.0 : -1.0;
  const ComplexMat3 h = ComplexMat3::diagonal(-s * 2.0 * c.mu / 3.0, s * 2.0 * c.mu / 3.0,
                                              2.0 * c.lambda / 3.0);
  return FreeHamiltonian(h, c.hbar);
}

DensityMatrix::DensityMatrix(const ComplexMat3& m, double tol) : m_(m) {
  if (!m.is_hermitian(tol)) throw DomainError("density matrix must be Hermitian");
  if (std::abs(m.trace() - 1.0) > tol) throw DomainError("density matrix must have unit trace");
}

const char* to_string(VonNeumannForm f) {
  return f == VonNeumannForm::plain ? "plain" : "three_halves";
}

ComplexMat3 nonlinear_rhs(const ComplexMat3& rho, const ComplexMat3& h0, double hbar,
                          VonNeumannForm form) {
  const Complex factor = Complex{0.0, -1.0} / hbar;
  if (form == VonNeumannForm::plain) return factor * commutator(h0, rho * rho);
  return (1.5 * factor) * commutator(anticommutator(h0, rho), rho);
}

ComplexMat3 effective_hamiltonian(const ComplexMat3& rho, const ComplexMat3& h0) {
  return 1.5 * anticommutator(h0, rho);
}

DensitySolution::DensitySolution(const DensityCoeffs& c, FreeHamiltonianOrder order)
    : c_(c), order_(order), h0_(density_free_hamiltonian(c, order)), k_(c.k) {
  if (c.A == 0.0 && c.k < 1.0) throw SingularityError("A = 0 with k < 1: R(t) vanishes");
  period_ = c.k < 1.0 ? 4.0 * quarter_period(k_) / c.omega : std::numeric_limits<double>::infinity();
  g0_adjoint_ = g_matrix(0.0).adjoint();
}

ComplexMat3 DensitySolution::rotating_frame_rho(double t) const {
  const auto [sn, cn, dn] = jacobi(c_.omega * t, k_);
  const Complex i{0.0, 1.0};
  const double third = 1.0 / 3.0;
  return ComplexMat3({{{third, 0.5 * c_.B * sn, 0.5 * c_.A * cn},
                       {0.5 * c_.B * sn, third, -0.5 * i * c_.C * dn},
                       {0.5 * c_.A * cn, 0.5 * i * c_.C * dn, third}}});
}

DensityMatrix DensitySolution::rho(double t) const {
  return DensityMatrix(h0_.to_interaction(rotating_frame_rho(t), t));
}

double DensitySolution::r_function(double t) const {
  const auto j = jacobi(c_.omega * t, k_);
  return std::hypot(c_.A * j.cn, c_.C * j.dn);
}

ComplexMat3 DensitySolution::g_matrix(double t) const {
  const auto [sn, cn, dn] = jacobi(c_.omega * t, k_);
  const double r = std::hypot(c_.A * cn, c_.C * dn);
  if (!(r > 0.0)) throw SingularityError("G(t): R(t) vanishes");
  const Complex i{0.0, 1.0};
  const double A = c_.A, B = c_.B, C = c_.C, T = c_.T;
  const double s2 = std::numbers::sqrt2;
  ComplexMat3 g({{{i * s2 * C * r * dn, -A * T * cn - i * B * C * sn * dn, A * T * cn - i * B * C * sn * dn},
                  {-s2 * A * r * cn, A * B * sn * cn + i * C * T * dn, A * B * sn * cn - i * C * T * dn},
                  {s2 * B * r * sn, r * r, r * r}}});
  return (1.0 / (s2 * T * r)) * g;
}

ComplexMat3 DensitySolution::v_matrix(double t) const {
  return h0_.propagator(t) * g_matrix(t) * g0_adjoint_;
}

}  // namespace ellipdrive
