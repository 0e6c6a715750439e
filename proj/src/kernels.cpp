#include "ellipdrive/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ellipdrive {

double gram_deviation(const std::array<ComplexVec3, 3>& b) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, std::abs(inner(b[i], b[j]) - (i == j ? 1.0 : 0.0)));
  return worst;
}

namespace {

TrajectorySample make_sample(const ClosedFormSolution& sol, const std::array<Complex, 3>& coeffs,
                             double t, double phi) {
  TrajectorySample s;
  s.t = t;
  s.phi = phi;
  s.jacobi = sol.jacobi_at(t);
  s.psi = sol.evolve(coeffs, t, phi);
  s.occupations = occupations(s.psi);
  return s;
}

DensitySample make_density_sample(const DensitySolution& sol, const ComplexMat3& rho0, double t) {
  DensitySample s;
  s.t = t;
  s.rho = sol.rho(t).matrix();
  s.eigenvalues = hermitian_eigensystem(s.rho).values;
  const ComplexMat3 v = sol.v_matrix(t);
  s.conjugation_residual = (s.rho - v * rho0 * v.adjoint()).norm();
  return s;
}

double dft_bin(std::span<const double> x, std::size_t m) {
  const std::size_t n = x.size();
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // Reduce m*j mod n so the angle stays small and exact.
    const double angle = -2.0 * std::numbers::pi * static_cast<double>((m * j) % n) / n;
    re += x[j] * std::cos(angle);
    im += x[j] * std::sin(angle);
  }
  return std::hypot(re, im);
}

}  // namespace

namespace serial {

std::vector<double> phase_on_grid(const ClosedFormSolution& sol, std::span<const double> grid) {
  std::vector<double> phi(grid.size());
  if (grid.empty()) return phi;
  phi[0] = sol.phase(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    phi[i] = phi[i - 1] + sol.phase_increment(grid[i - 1], grid[i]);
  }
  return phi;
}

std::vector<TrajectorySample> sample_trajectory(const ClosedFormSolution& sol,
                                                const std::array<Complex, 3>& coeffs,
                                                std::span<const double> grid) {
  const auto phi = phase_on_grid(sol, grid);
  std::vector<TrajectorySample> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out.push_back(make_sample(sol, coeffs, grid[i], phi[i]));
  return out;
}

double max_gram_deviation(const ClosedFormSolution& sol, std::span<const double> grid) {
  const auto phi = phase_on_grid(sol, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, gram_deviation(sol.basis(grid[i], phi[i])));
  }
  return worst;
}

std::vector<DensitySample> sample_density(const DensitySolution& sol, std::span<const double> grid) {
  const ComplexMat3 rho0 = sol.rho(0.0).matrix();
  std::vector<DensitySample> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back(make_density_sample(sol, rho0, t));
  return out;
}

std::vector<double> dft_magnitude(std::span<const double> x) {
  std::vector<double> mag(x.size() / 2 + 1);
  for (std::size_t m = 0; m < mag.size(); ++m) mag[m] = dft_bin(x, m);
  return mag;
}

}  // namespace serial

namespace parallel {

std::vector<double> phase_on_grid(const ClosedFormSolution& sol, std::span<const double> grid) {
  const long n = static_cast<long>(grid.size());
  std::vector<double> phi(grid.size());
  if (n == 0) return phi;
  std::vector<double> increment(grid.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (long i = 1; i < n; ++i) increment[i] = sol.phase_increment(grid[i - 1], grid[i]);
  phi[0] = sol.phase(grid[0]);
  for (long i = 1; i < n; ++i) phi[i] = phi[i - 1] + increment[i];
  return phi;
}

std::vector<TrajectorySample> sample_trajectory(const ClosedFormSolution& sol,
                                                const std::array<Complex, 3>& coeffs,
                                                std::span<const double> grid) {
  const auto phi = phase_on_grid(sol, grid);
  const long n = static_cast<long>(grid.size());
  std::vector<TrajectorySample> out(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = make_sample(sol, coeffs, grid[i], phi[i]);
  return out;
}

double max_gram_deviation(const ClosedFormSolution& sol, std::span<const double> grid) {
  const auto phi = phase_on_grid(sol, grid);
  const long n = static_cast<long>(grid.size());
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (long i = 0; i < n; ++i) worst = std::max(worst, gram_deviation(sol.basis(grid[i], phi[i])));
  return worst;
}

std::vector<DensitySample> sample_density(const DensitySolution& sol, std::span<const double> grid) {
  const ComplexMat3 rho0 = sol.rho(0.0).matrix();
  const long n = static_cast<long>(grid.size());
  std::vector<DensitySample> out(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = make_density_sample(sol, rho0, grid[i]);
  return out;
}

std::vector<double> dft_magnitude(std::span<const double> x) {
  const long bins = static_cast<long>(x.size() / 2 + 1);
  std::vector<double> mag(bins);
#pragma omp parallel for schedule(static)
  for (long m = 0; m < bins; ++m) mag[m] = dft_bin(x, static_cast<std::size_t>(m));
  return mag;
}

}  // namespace parallel

}  // namespace ellipdrive
