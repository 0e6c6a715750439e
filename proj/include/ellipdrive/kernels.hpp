#pragma once

#include <array>
#include <span>
#include <vector>

#include "ellipdrive/density.hpp"
#include "ellipdrive/drive.hpp"

namespace ellipdrive {

/// One row of a sampled trajectory.
struct TrajectorySample {
  double t = 0.0;
  ComplexVec3 psi;
  std::array<double, 3> occupations{};
  double phi = 0.0;
  JacobiTriple jacobi{};
};

struct DensitySample {
  double t = 0.0;
  ComplexMat3 rho;
  std::array<double, 3> eigenvalues{};
  double conjugation_residual = 0.0;  // ||rho_t - V rho_0 V^dagger||
};

/// max_{ij} |<b_i, b_j> - delta_ij|.
double gram_deviation(const std::array<ComplexVec3, 3>& basis);

// The serial and parallel kernels compute identical per-interval phase
// increments and sum them in the same order, so their results agree
// bit for bit. The serial versions are the reference for tests and the
// benchmark.

namespace serial {

std::vector<double> phase_on_grid(const ClosedFormSolution& sol, std::span<const double> grid);
std::vector<TrajectorySample> sample_trajectory(const ClosedFormSolution& sol,
                                                const std::array<Complex, 3>& coeffs,
                                                std::span<const double> grid);
double max_gram_deviation(const ClosedFormSolution& sol, std::span<const double> grid);
std::vector<DensitySample> sample_density(const DensitySolution& sol, std::span<const double> grid);
/// |X_m| of the plain DFT X_m = sum_n x_n e^{-2 pi i m n / N}, m = 0..N/2.
std::vector<double> dft_magnitude(std::span<const double> x);

}  // namespace serial

namespace parallel {

std::vector<double> phase_on_grid(const ClosedFormSolution& sol, std::span<const double> grid);
std::vector<TrajectorySample> sample_trajectory(const ClosedFormSolution& sol,
                                                const std::array<Complex, 3>& coeffs,
                                                std::span<const double> grid);
double max_gram_deviation(const ClosedFormSolution& sol, std::span<const double> grid);
std::vector<DensitySample> sample_density(const DensitySolution& sol, std::span<const double> grid);
std::vector<double> dft_magnitude(std::span<const double> x);

}  // namespace parallel

}  // namespace ellipdrive
