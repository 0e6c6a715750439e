#include "ellipdrive/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ellipdrive/errors.hpp"
#include "ellipdrive/kernels.hpp"

namespace ellipdrive {

namespace {

using Vec3State = std::array<Complex, 3>;
using Mat3State = std::array<Complex, 9>;

ComplexMat3 from_state(const Mat3State& s) {
  ComplexMat3 m;
  m.data() = s;
  return m;
}

constexpr double kStateAgreement = 1e-6;

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2) || !(abs_tol > 0.0 && abs_tol <= 1e-2)) {
    throw DomainError("integrator tolerances must lie in (0, 1e-2]");
  }
  if (!(max_step > 0.0)) throw DomainError("max_step must be positive");
  if (t_grid.size() < 2 || t_grid.front() != 0.0) {
    throw DomainError("time grid needs at least two points and must start at 0");
  }
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("time grid must be strictly ascending");
  }
}

StepControl IntegratorConfig::step_control() const {
  StepControl ctl;
  ctl.rel_tol = rel_tol;
  ctl.abs_tol = abs_tol;
  ctl.max_step = max_step;
  ctl.initial_step = std::min(1e-3, max_step);
  return ctl;
}

std::vector<double> uniform_grid(double t_max, int samples) {
  if (samples < 2) throw DomainError("grid needs at least two samples");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be positive");
  std::vector<double> g(samples);
  for (int i = 0; i < samples; ++i) g[i] = t_max * static_cast<double>(i) / (samples - 1);
  g.back() = t_max;
  return g;
}

StateTrajectory integrate_schrodinger(const HamiltonianFn& h, const ComplexVec3& psi0, double hbar,
                                      const IntegratorConfig& cfg) {
  cfg.validate();
  if (std::abs(psi0.norm() - 1.0) > 1e-8) throw DomainError("initial state must be normalized");
  for (double probe : {cfg.t_grid.front(), cfg.t_grid.back()}) {
    const ComplexMat3 m = h(probe);
    if (!m.is_hermitian(1e-10 * std::max(1.0, m.norm()))) {
      throw DomainError("Hamiltonian is not Hermitian at probe time");
    }
  }
  const Complex factor = Complex{0.0, -1.0} / hbar;
  auto rhs = [&](double t, const Vec3State& y) {
    const ComplexVec3 d = factor * (h(t) * ComplexVec3{y});
    return d.v;
  };
  StateTrajectory out;
  out.t = cfg.t_grid;
  const auto ys = integrate_dopri<3>(rhs, psi0.v, cfg.t_grid, cfg.step_control(), &out.stats);
  out.psi.reserve(ys.size());
  for (const auto& y : ys) out.psi.push_back(ComplexVec3{y});
  return out;
}

DensityTrajectory integrate_vonneumann(const ComplexMat3& h0, double hbar, const DensityMatrix& rho0,
                                       VonNeumannForm form, const IntegratorConfig& cfg) {
  cfg.validate();
  auto rhs = [&](double, const Mat3State& y) {
    return nonlinear_rhs(from_state(y), h0, hbar, form).data();
  };
  DensityTrajectory out;
  out.t = cfg.t_grid;
  const auto ys = integrate_dopri<9>(rhs, rho0.matrix().data(), cfg.t_grid, cfg.step_control(), &out.stats);
  out.rho.reserve(ys.size());
  for (const auto& y : ys) out.rho.push_back(from_state(y));
  return out;
}

bool FormResidual::second_order() const {
  if (!(fd_residual <= 1e-6)) return false;
  if (fd_residual_half == 0.0) return fd_residual == 0.0;
  const double ratio = fd_residual / fd_residual_half;
  return ratio >= 2.5 && ratio <= 6.5;
}

double VerificationReport::worst_residual() const {
  if (!validation_ok) return std::numeric_limits<double>::infinity();
  double w = std::max(max_state_deviation, max_gram_deviation);
  if (density.available) {
    if (!density.matched) return std::numeric_limits<double>::infinity();
    const auto& m = density.swapped[static_cast<int>(*density.matched)];
    w = std::max({w, density.max_eigenvalue_drift, density.max_conjugation_residual,
                  density.max_unitarity_deviation, m.oracle_deviation, m.fd_residual});
  }
  return w;
}

namespace {

double fd_form_residual(const DensitySolution& sol, VonNeumannForm form, double h,
                        const std::vector<double>& probes) {
  const ComplexMat3& h0 = sol.free_hamiltonian().matrix();
  const double hbar = sol.coeffs().hbar;
  double worst = 0.0;
  for (double t : probes) {
    // Difference the representable neighbours, not t +- h, so rounding of t
    // does not leak into the quotient.
    const double up = t + h;
    const double down = t - h;
    const ComplexMat3 d = (1.0 / (up - down)) * (sol.rho(up).matrix() - sol.rho(down).matrix());
    const ComplexMat3 rhs = nonlinear_rhs(sol.rho(t).matrix(), h0, hbar, form);
    worst = std::max(worst, (d - rhs).norm());
  }
  return worst;
}

}  // namespace

FormResidual evaluate_form(const DensitySolution& sol, VonNeumannForm form, const IntegratorConfig& cfg,
                           double fd_step) {
  cfg.validate();
  // At k = 1 the orbit is a separatrix: integration errors grow like
  // exp(omega t), so both checks stop after one nominal cycle 2 pi / omega.
  const double cycle = std::isfinite(sol.drive_period()) ? sol.drive_period()
                                                         : 2.0 * std::numbers::pi / sol.coeffs().omega;
  // Probes stay within one cycle: at large t the rounding of the free
  // phases t E / hbar, divided by h, would swamp the O(h^2) term.
  const double span = std::min(cfg.t_grid.back(), cycle);
  std::vector<double> probes;
  for (int i = 1; i <= 7; ++i) probes.push_back(span * i / 8.0);

  IntegratorConfig oracle_cfg = cfg;
  if (!std::isfinite(sol.drive_period())) {
    auto& g = oracle_cfg.t_grid;
    g.erase(std::upper_bound(g.begin(), g.end(), cycle), g.end());
    if (g.back() < cycle && cfg.t_grid.back() > cycle) g.push_back(cycle);
  }

  FormResidual r;
  r.fd_residual = fd_form_residual(sol, form, fd_step, probes);
  r.fd_residual_half = fd_form_residual(sol, form, 0.5 * fd_step, probes);
  try {
    const auto& grid = oracle_cfg.t_grid;
    const auto traj = integrate_vonneumann(sol.free_hamiltonian().matrix(), sol.coeffs().hbar,
                                           sol.rho(0.0), form, oracle_cfg);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      r.oracle_deviation = std::max(r.oracle_deviation, (traj.rho[i] - sol.rho(grid[i]).matrix()).norm());
    }
  } catch (const IntegrationError&) {
    // A wrong form may run away; that is a non-match, not a harness failure.
    r.oracle_ok = false;
    r.oracle_deviation = std::numeric_limits<double>::infinity();
  }
  return r;
}

std::optional<VonNeumannForm> matched_form(const std::array<FormResidual, 2>& r) {
  std::optional<VonNeumannForm> found;
  int count = 0;
  for (VonNeumannForm f : {VonNeumannForm::plain, VonNeumannForm::three_halves}) {
    const auto& x = r[static_cast<int>(f)];
    if (x.oracle_ok && x.oracle_deviation <= kStateAgreement && x.second_order()) {
      found = f;
      ++count;
    }
  }
  return count == 1 ? found : std::nullopt;
}

VerificationReport verify_all(const DriveParams& p, const H0Params& h0p, const IntegratorConfig& cfg,
                              const VerifyOptions& opts) {
  VerificationReport rep;
  rep.condition_residual = condition_residual(p);
  try {
    validate(p);
    cfg.validate();
  } catch (const std::exception& e) {
    rep.validation_ok = false;
    rep.validation_message = e.what();
    return rep;
  }
  rep.phase_identically_zero = p.k == 1.0;

  const FreeHamiltonian h0(h0p);
  const ClosedFormSolution sol(p, h0, SolutionOptions{opts.suppress_phase});
  const std::vector<double>& grid = cfg.t_grid;
  const std::vector<double> phases = parallel::phase_on_grid(sol, grid);

  const ComplexVec3 ground{{1.0, 0.0, 0.0}};
  const auto ground_coeffs = sol.decompose(ground);
  auto analytic = [&](int which, std::size_t i) {
    if (which < 3) return sol.basis_state(kBasisLabels[which], grid[i], phases[i]);
    return sol.evolve(ground_coeffs, grid[i], phases[i]);
  };

  // Density family, solved for the drive's omega and k.
  std::optional<DensityCoeffs> coeffs;
  try {
    if (h0p.classify() == LevelConfiguration::ladder) {
      coeffs = solve_coeffs(h0p.mu, h0p.lambda, p.omega, p.k, p.hbar);
    } else {
      rep.density.note = "free Hamiltonian is not a ladder configuration";
    }
  } catch (const std::exception& e) {
    rep.density.note = e.what();
  }
  rep.density.available = coeffs.has_value();
  if (coeffs) rep.density.coeffs = *coeffs;

  std::vector<std::vector<double>> state_dev(4, std::vector<double>(grid.size(), 0.0));
  std::array<double, 4> norm_drift{};
  std::vector<double> gram_dev(grid.size(), 0.0);
  std::array<std::string, 10> failure;

  constexpr int kTasks = 10;
#pragma omp parallel for schedule(dynamic, 1)
  for (int task = 0; task < kTasks; ++task) {
    try {
      if (task < 4) {
        const auto traj = integrate_schrodinger([&sol](double t) { return sol.hamiltonian(t); },
                                                analytic(task, 0), p.hbar, cfg);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          state_dev[task][i] = (traj.psi[i] - analytic(task, i)).norm();
          norm_drift[task] = std::max(norm_drift[task], std::abs(traj.psi[i].norm() - 1.0));
        }
      } else if (task == 4) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
          gram_dev[i] = gram_deviation(sol.basis(grid[i], phases[i]));
        }
      } else if (coeffs && task < 9) {
        const int idx = task - 5;
        const auto order = idx < 2 ? FreeHamiltonianOrder::swapped : FreeHamiltonianOrder::printed;
        const auto form = idx % 2 == 0 ? VonNeumannForm::plain : VonNeumannForm::three_halves;
        const DensitySolution dsol(*coeffs, order);
        auto& slot = (order == FreeHamiltonianOrder::swapped ? rep.density.swapped
                                                              : rep.density.printed)[static_cast<int>(form)];
        slot = evaluate_form(dsol, form, cfg, opts.fd_step);
      } else if (coeffs && task == 9) {
        const DensitySolution dsol(*coeffs);
        const auto expected = coeffs->eigenvalues();
        const ComplexMat3 rho0 = dsol.rho(0.0).matrix();
        double drift = 0.0, conj = 0.0, unit = 0.0;
        for (double t : grid) {
          const ComplexMat3 rho = dsol.rho(t).matrix();
          const auto eig = hermitian_eigensystem(rho).values;
          for (int j = 0; j < 3; ++j) drift = std::max(drift, std::abs(eig[j] - expected[j]));
          const ComplexMat3 v = dsol.v_matrix(t);
          const ComplexMat3 g = dsol.g_matrix(t);
          conj = std::max(conj, (rho - v * rho0 * v.adjoint()).norm());
          unit = std::max({unit, (v * v.adjoint() - ComplexMat3::identity()).norm(),
                           (g * g.adjoint() - ComplexMat3::identity()).norm()});
        }
        rep.density.max_eigenvalue_drift = drift;
        rep.density.max_conjugation_residual = conj;
        rep.density.max_unitarity_deviation = unit;
      }
    } catch (const IntegrationError& e) {
      failure[task] = "check " + std::to_string(task) + ": " + e.what() + " at t=" +
                      std::to_string(e.last_good_time());
    } catch (const std::exception& e) {
      failure[task] = "check " + std::to_string(task) + ": " + e.what();
    }
  }

  for (const auto& f : failure)
    if (!f.empty()) rep.failures.push_back(f);

  rep.residuals.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rep.residuals[i] = {grid[i], {state_dev[0][i], state_dev[1][i], state_dev[2][i], state_dev[3][i]},
                        gram_dev[i]};
    rep.max_gram_deviation = std::max(rep.max_gram_deviation, gram_dev[i]);
  }
  for (int j = 0; j < 4; ++j) {
    rep.state_deviation[j] = *std::max_element(state_dev[j].begin(), state_dev[j].end());
    rep.max_state_deviation = std::max(rep.max_state_deviation, rep.state_deviation[j]);
    rep.max_norm_drift = std::max(rep.max_norm_drift, norm_drift[j]);
  }
  if (coeffs) {
    rep.density.matched = matched_form(rep.density.swapped);
    rep.density.matched_printed_order = matched_form(rep.density.printed);
  }
  return rep;
}

}  // namespace ellipdrive
