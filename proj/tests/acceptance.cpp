// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ellipdrive/analysis.hpp"
#include "ellipdrive/cli.hpp"
#include "ellipdrive/density.hpp"
#include "ellipdrive/drive.hpp"
#include "ellipdrive/errors.hpp"
#include "ellipdrive/kernels.hpp"
#include "ellipdrive/oracle.hpp"

using namespace ellipdrive;

namespace {

const DriveParams kPaper{0.3, 1.6, 1.0, 0.25, 1.0};
const H0Params kLadder{10.0, 5.0, 1.0};
constexpr double kTMax = 60.0;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("[%s] %2d %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  if (!pass) ++failures;
}

void info(const std::string& detail) { std::printf("[INFO]    %s\n", detail.c_str()); }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ClosedFormSolution paper_solution() { return ClosedFormSolution(kPaper, FreeHamiltonian(kLadder)); }

std::vector<TrajectorySample> ground_run(const ClosedFormSolution& sol, int samples) {
  const auto coeffs = sol.decompose(ComplexVec3{{1.0, 0.0, 0.0}});
  return parallel::sample_trajectory(sol, coeffs, uniform_grid(kTMax, samples));
}

void state_agreement() {
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-9;
  cfg.t_grid = uniform_grid(kTMax, 601);
  const auto rep = verify_all(kPaper, kLadder, cfg);
  const bool pass = rep.validation_ok && !rep.integration_failed() && rep.max_state_deviation <= 1e-6;
  report(1, pass,
         "state agreement: max |psi_analytic - psi_oracle| = " + num(rep.max_state_deviation) +
             " (zero " + num(rep.state_deviation[0]) + ", plus " + num(rep.state_deviation[1]) +
             ", minus " + num(rep.state_deviation[2]) + ", ground " + num(rep.state_deviation[3]) +
             ") <= 1e-06");
}

void orthonormality() {
  const auto sol = paper_solution();
  const double dev = parallel::max_gram_deviation(sol, uniform_grid(kTMax, 600));
  report(2, dev <= 1e-10, "orthonormality: max Gram deviation on 600 points = " + num(dev) + " <= 1e-10");
}

void condition_gate() {
  const double lhs = 4 * kPaper.k * kPaper.k * kPaper.hbar * kPaper.omega * kPaper.hbar * kPaper.omega;
  const double rhs = kPaper.a * kPaper.a + kPaper.k * kPaper.k * kPaper.x * kPaper.x;
  bool valid = true;
  try {
    validate(kPaper);
  } catch (const std::exception&) {
    valid = false;
  }
  bool tripped = false;
  DriveParams perturbed = kPaper;
  perturbed.x += 1e-3;
  try {
    validate(perturbed);
  } catch (const ValidationError&) {
    tripped = true;
  }
  const bool pass = valid && tripped && std::abs(lhs - 0.25) <= 1e-15 && std::abs(rhs - 0.25) <= 1e-15;
  report(3, pass,
         "drive condition: lhs = " + num(lhs) + ", rhs = " + num(rhs) + ", x + 1e-3 rejected: " +
             (tripped ? "yes" : "no"));
}

void half_occupation(const std::vector<TrajectorySample>& rows) {
  double min_p1 = 1.0;
  for (const auto& r : rows) min_p1 = std::min(min_p1, r.occupations[0]);
  const double p1_0 = rows.front().occupations[0];
  report(4, min_p1 >= 0.5 && std::abs(p1_0 - 1.0) <= 1e-12,
         "half-occupation floor: min p1 on [0, 60] = " + num(min_p1) + " >= 0.5, |p1(0) - 1| = " +
             num(std::abs(p1_0 - 1.0)));
}

void beat_period(const ClosedFormSolution& sol, const std::vector<TrajectorySample>& rows) {
  std::vector<double> t, p1;
  for (const auto& r : rows) {
    t.push_back(r.t);
    p1.push_back(r.occupations[0]);
  }
  const double target = 5 * sol.drive_period();
  const auto est = estimate_beat_period(t, p1, sol.drive_period());
  std::string minima;
  for (const auto& m : est.envelope_minima) minima += " " + num(m.t);
  const bool pass = std::isfinite(est.period) && std::abs(est.period - target) <= 0.25 * target;
  report(5, pass,
         "beat period: envelope minima at" + minima + ", period " + num(est.period) + " vs 5 drive periods " +
             num(target) + " +-25%");
}

void phase_slowness(const ClosedFormSolution& sol) {
  const double mean = mean_phase_rate(sol, sol.drive_period());
  const double drive = 2 * std::numbers::pi / sol.drive_period();
  report(6, mean < drive, "phase slowness: mean dphi/dt = " + num(mean) + " < 2 pi / period = " + num(drive));
}

void frequency_doubling(const ClosedFormSolution& sol) {
  constexpr std::size_t n = 4096;
  const double dt = kTMax / n;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = dt * static_cast<double>(i);
  const auto coeffs = sol.decompose(ComplexVec3{{1.0, 0.0, 0.0}});
  const auto rows = parallel::sample_trajectory(sol, coeffs, grid);
  std::vector<double> p3(n);
  for (std::size_t i = 0; i < n; ++i) p3[i] = rows[i].occupations[2];

  // Beat detrending: remove the moving average over one drive period.
  const auto window = static_cast<std::size_t>(std::lround(sol.drive_period() / dt));
  const auto detrended = subtract_moving_average(p3, window);
  const auto peak = dominant_peak(parallel::dft_magnitude(detrended), n, dt);
  const double target = 2.0 / sol.drive_period();
  const double bins_off = std::abs(peak.frequency - target) / peak.bin_width;
  report(7, bins_off <= 1.0,
         "frequency doubling: p3 peak at " + num(peak.frequency) + " vs 2 f_drive = " + num(target) + " (" +
             num(bins_off) + " bins off, bin width " + num(peak.bin_width) + ", allowed 1)");

  std::vector<double> p1(n);
  for (std::size_t i = 0; i < n; ++i) p1[i] = rows[i].occupations[0];
  const auto p1_peak = dominant_peak(parallel::dft_magnitude(subtract_moving_average(p1, window)), n, dt);
  info("p1 dominant line at " + num(p1_peak.frequency) + " (" +
       num(std::abs(p1_peak.frequency - target) / p1_peak.bin_width) + " bins from 2 f_drive)");
}

DensityCoeffs density_coeffs() { return solve_coeffs(10.0, 5.0, 1.0, std::sqrt(0.5), 1.0); }

void density_coefficients() {
  const auto c = density_coeffs();
  double worst = 0.0;
  for (double r : c.condition_residuals()) worst = std::max(worst, std::abs(r));
  const DensitySolution sol(c);
  const auto want = c.eigenvalues();
  double drift = 0.0;
  for (const auto& s : parallel::sample_density(sol, uniform_grid(3 * sol.drive_period(), 301)))
    for (int j = 0; j < 3; ++j) drift = std::max(drift, std::abs(s.eigenvalues[j] - want[j]));
  report(8, worst <= 1e-12 && drift <= 1e-10,
         "density coefficients: A = " + num(c.A) + ", B = " + num(c.B) + ", C = " + num(c.C) +
             ", max condition residual " + num(worst) + " <= 1e-12, eigenvalue drift over 3 periods " +
             num(drift) + " <= 1e-10");
}

void conjugation() {
  const DensitySolution sol(density_coeffs());
  const auto grid = uniform_grid(3 * sol.drive_period(), 200);
  double conj = 0.0, unit = 0.0;
  for (const auto& s : parallel::sample_density(sol, grid)) {
    conj = std::max(conj, s.conjugation_residual);
    const auto v = sol.v_matrix(s.t);
    const auto g = sol.g_matrix(s.t);
    unit = std::max({unit, (v * v.adjoint() - ComplexMat3::identity()).norm(),
                     (g * g.adjoint() - ComplexMat3::identity()).norm()});
  }
  report(9, conj <= 1e-10 && unit <= 1e-10,
         "conjugation: max |rho_t - V rho_0 V^+| on 200 points = " + num(conj) +
             ", max unitarity deviation of V, G = " + num(unit) + ", both <= 1e-10");
}

void variant_resolution() {
  const auto c = density_coeffs();
  IntegratorConfig cfg;
  cfg.t_grid = uniform_grid(kTMax, 601);

  std::array<FormResidual, 2> swapped, printed;
  const DensitySolution sol(c, FreeHamiltonianOrder::swapped);
  const DensitySolution sol_printed(c, FreeHamiltonianOrder::printed);
  for (auto f : {VonNeumannForm::plain, VonNeumannForm::three_halves}) {
    swapped[static_cast<int>(f)] = evaluate_form(sol, f, cfg, 1e-5);
    printed[static_cast<int>(f)] = evaluate_form(sol_printed, f, cfg, 1e-5);
  }
  const auto match = matched_form(swapped);

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  auto random_hermitian = [&] {
    ComplexMat3 m;
    for (int r = 0; r < 3; ++r) {
      m(r, r) = d(rng);
      for (int col = r + 1; col < 3; ++col) {
        m(r, col) = {d(rng), d(rng)};
        m(col, r) = std::conj(m(r, col));
      }
    }
    return m;
  };
  double identity = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto rho = random_hermitian();
    const auto h0 = 5.0 * random_hermitian();
    const auto diff = 1.5 * nonlinear_rhs(rho, h0, 1.0, VonNeumannForm::plain) -
                      nonlinear_rhs(rho, h0, 1.0, VonNeumannForm::three_halves);
    identity = std::max(identity, diff.max_abs());
  }

  const auto& plain = swapped[0];
  const auto& halves = swapped[1];
  report(10, match.has_value() && identity <= 1e-12,
         std::string("variant resolution: matched ") + (match ? to_string(*match) : "neither") +
             " (fd residual h, h/2: plain " + num(plain.fd_residual) + ", " + num(plain.fd_residual_half) +
             "; three_halves " + num(halves.fd_residual) + ", " + num(halves.fd_residual_half) +
             "), identity deviation " + num(identity) + " <= 1e-12");
  const auto printed_match = matched_form(printed);
  info(std::string("with the free Hamiltonian in its printed level order the matched form is ") +
       (printed_match ? to_string(*printed_match) : "neither") + " (fd residual plain " +
       num(printed[0].fd_residual) + ", three_halves " + num(printed[1].fd_residual) + ")");
}

void elliptic_suite() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> du(-50.0, 50.0);
  std::uniform_real_distribution<double> dk(0.0, 1.0);
  double identities = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = du(rng), k = dk(rng);
    const auto j = jacobi(u, k);
    identities = std::max({identities, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0),
                           std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0)});
  }

  double periodicity = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double u = du(rng) / 5, k = 0.999 * dk(rng);
    const auto a = jacobi(u, k);
    const auto b = jacobi(u + 4 * quarter_period(k), k);
    periodicity = std::max({periodicity, std::abs(a.sn - b.sn), std::abs(a.cn - b.cn), std::abs(a.dn - b.dn)});
  }

  double low = 0.0, high = 0.0;
  for (double u = -5.0; u <= 5.0; u += 0.05) {
    for (double k : {0.0, 1e-8}) {
      const auto j = jacobi(u, k);
      low = std::max({low, std::abs(j.sn - std::sin(u)), std::abs(j.cn - std::cos(u)), std::abs(j.dn - 1.0)});
    }
    for (double k : {1.0, 1.0 - 1e-8}) {
      const auto j = jacobi(u, k);
      const double sech = 1.0 / std::cosh(u);
      high = std::max({high, std::abs(j.sn - std::tanh(u)), std::abs(j.cn - sech), std::abs(j.dn - sech)});
    }
  }

  auto derivative_error = [](double h) {
    double worst = 0.0;
    for (double k : {0.25, 0.7, 0.95})
      for (double u = -5.0; u <= 5.0; u += 0.1) {
        const auto j = jacobi(u, k), p = jacobi(u + h, k), m = jacobi(u - h, k);
        worst = std::max({worst, std::abs((p.sn - m.sn) / (2 * h) - j.cn * j.dn),
                          std::abs((p.cn - m.cn) / (2 * h) + j.sn * j.dn),
                          std::abs((p.dn - m.dn) / (2 * h) + k * k * j.sn * j.cn)});
      }
    return worst;
  };
  const double ratio = derivative_error(1e-2) / derivative_error(1e-3);
  const bool second_order = ratio > 80.0 && ratio < 120.0;

  report(11, identities <= 1e-12 && periodicity <= 1e-10 && low <= 1e-7 && high <= 1e-6 && second_order,
         "elliptic substrate: identities " + num(identities) + " <= 1e-12, periodicity " + num(periodicity) +
             " <= 1e-10, k->0 " + num(low) + " <= 1e-7, k->1 " + num(high) +
             " <= 1e-6, derivative error ratio for 10x step " + num(ratio) + " (~100)");
}

void determinism() {
  auto simulate = [] {
    const char* argv[] = {"ellipdrive", "simulate", "--a", "0.3", "--k", "0.25", "--t-max", "60"};
    std::ostringstream out, err;
    const int code = run_cli(8, argv, out, err);
    return std::make_pair(code, out.str());
  };
  const auto first = simulate();
  const auto second = simulate();
  report(12, first.first == 0 && second.first == 0 && first.second == second.second && !first.second.empty(),
         "determinism: two simulate runs produce " + std::string(first.second == second.second ? "identical" : "different") +
             " CSV (" + std::to_string(first.second.size()) + " bytes)");
}

}  // namespace

int main() {
  const auto sol = paper_solution();
  const auto rows = ground_run(sol, 6001);

  state_agreement();
  orthonormality();
  condition_gate();
  half_occupation(rows);
  beat_period(sol, rows);
  phase_slowness(sol);
  frequency_doubling(sol);
  density_coefficients();
  conjugation();
  variant_resolution();
  elliptic_suite();
  determinism();

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
