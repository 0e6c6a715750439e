#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ellipdrive/density.hpp"
#include "ellipdrive/drive.hpp"
#include "ellipdrive/ode.hpp"
#include "ellipdrive/su3.hpp"

namespace ellipdrive {

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  std::vector<double> t_grid;

  /// Tolerances in (0, 1e-2], max_step > 0, grid strictly ascending from 0.
  void validate() const;
  StepControl step_control() const;
};

/// Uniform grid of `samples` points on [0, t_max].
std::vector<double> uniform_grid(double t_max, int samples);

using HamiltonianFn = std::function<ComplexMat3(double)>;

struct StateTrajectory {
  std::vector<double> t;
  std::vector<ComplexVec3> psi;
  StepStats stats;
};

struct DensityTrajectory {
  std::vector<double> t;
  std::vector<ComplexMat3> rho;
  StepStats stats;
};

/// Integrates i hbar psi' = H(t) psi on cfg.t_grid.
StateTrajectory integrate_schrodinger(const HamiltonianFn& h, const ComplexVec3& psi0, double hbar,
                                      const IntegratorConfig& cfg);

/// Integrates the nonlinear von Neumann equation of the chosen form on cfg.t_grid.
DensityTrajectory integrate_vonneumann(const ComplexMat3& h0, double hbar, const DensityMatrix& rho0,
                                       VonNeumannForm form, const IntegratorConfig& cfg);

/// Outcome of the finite-difference test of one von Neumann form against analytic rho(t).
struct FormResidual {
  double fd_residual = 0.0;       // max over probes of |rho'_fd(h) - rhs|
  double fd_residual_half = 0.0;  // same with h/2
  double oracle_deviation = 0.0;  // max |rho_integrated - rho_analytic| over the grid
  bool oracle_ok = true;
  /// Residual small and shrinking ~4x when h halves.
  bool second_order() const;
};

/**
 * Tests one von Neumann form against the analytic rho(t) two ways: central
 * differences at step h and h/2 on seven probes in the first drive period, and an
 * independent integration from rho(0) over cfg.t_grid. At k = 1 (no period)
 * both use the window [0, 2 pi / omega] instead.
 */
FormResidual evaluate_form(const DensitySolution& sol, VonNeumannForm form, const IntegratorConfig& cfg,
                           double fd_step = 1e-5);

/// The one form that agrees both ways within 1e-6 at second order, if exactly one does.
std::optional<VonNeumannForm> matched_form(const std::array<FormResidual, 2>& r);

struct DensityReport {
  bool available = false;
  std::string note;
  DensityCoeffs coeffs;
  double max_eigenvalue_drift = 0.0;
  double max_conjugation_residual = 0.0;
  double max_unitarity_deviation = 0.0;  // over G(t) and V(t)
  std::array<FormResidual, 2> swapped;   // indexed by VonNeumannForm
  std::array<FormResidual, 2> printed;
  std::optional<VonNeumannForm> matched;
  std::optional<VonNeumannForm> matched_printed_order;
};

struct ResidualRow {
  double t;
  std::array<double, 4> state_deviation;  // zero, plus, minus, ground
  double gram_deviation;
};

struct VerificationReport {
  bool validation_ok = true;
  std::string validation_message;
  double condition_residual = 0.0;
  bool phase_identically_zero = false;

  double max_state_deviation = 0.0;
  std::array<double, 4> state_deviation{};  // zero, plus, minus, ground
  double max_gram_deviation = 0.0;
  double max_norm_drift = 0.0;
  DensityReport density;

  std::vector<ResidualRow> residuals;
  std::vector<std::string> failures;  // integration failures, one per failed check

  /// Largest residual that verify compares against its tolerance.
  double worst_residual() const;
  bool integration_failed() const { return !failures.empty(); }
};

struct VerifyOptions {
  bool suppress_phase = false;
  double fd_step = 1e-5;
};

/**
 * Runs every residual check: the three basis states and the ground-state
 * superposition against integrated trajectories, the Gram matrix, and, when
 * the free Hamiltonian is a ladder (0 < |lambda| < mu), the density-matrix
 * family with both von Neumann forms. Independent checks run concurrently;
 * the report does not depend on scheduling.
 */
VerificationReport verify_all(const DriveParams& p, const H0Params& h0, const IntegratorConfig& cfg,
                              const VerifyOptions& opts = {});

}  // namespace ellipdrive
