#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "ellipdrive/kernels.hpp"
#include "ellipdrive/oracle.hpp"

using namespace ellipdrive;

namespace {

const H0Params kLadder{10.0, 5.0, 1.0};

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(const Complex& a, const Complex& b) {
  return same_bits(a.real(), b.real()) && same_bits(a.imag(), b.imag());
}

}  // namespace

TEST_CASE("serial and parallel kernels agree bit for bit") {
  const ClosedFormSolution sol(DriveParams{}, FreeHamiltonian(kLadder));
  const auto grid = uniform_grid(60.0, 1201);
  const auto coeffs = sol.decompose(ComplexVec3{{1.0, 0.0, 0.0}});

  const auto ps = serial::phase_on_grid(sol, grid);
  const auto pp = parallel::phase_on_grid(sol, grid);
  REQUIRE(ps.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(same_bits(ps[i], pp[i]));

  const auto ts = serial::sample_trajectory(sol, coeffs, grid);
  const auto tp = parallel::sample_trajectory(sol, coeffs, grid);
  REQUIRE(ts.size() == tp.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(same_bits(ts[i].phi, tp[i].phi));
    for (int j = 0; j < 3; ++j) {
      CHECK(same_bits(ts[i].psi[j], tp[i].psi[j]));
      CHECK(same_bits(ts[i].occupations[j], tp[i].occupations[j]));
    }
  }

  CHECK(same_bits(serial::max_gram_deviation(sol, grid), parallel::max_gram_deviation(sol, grid)));

  const DensitySolution dsol(solve_coeffs(10.0, 5.0, 1.0, std::sqrt(0.5), 1.0));
  const auto ds = serial::sample_density(dsol, grid);
  const auto dp = parallel::sample_density(dsol, grid);
  REQUIRE(ds.size() == dp.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(same_bits(ds[i].conjugation_residual, dp[i].conjugation_residual));
    for (int j = 0; j < 3; ++j) CHECK(same_bits(ds[i].eigenvalues[j], dp[i].eigenvalues[j]));
    for (int j = 0; j < 9; ++j) CHECK(same_bits(ds[i].rho.data()[j], dp[i].rho.data()[j]));
  }

  std::vector<double> signal(1000);
  for (std::size_t i = 0; i < signal.size(); ++i) signal[i] = ts[i].occupations[2];
  const auto ms = serial::dft_magnitude(signal);
  const auto mp = parallel::dft_magnitude(signal);
  REQUIRE(ms.size() == 501);
  for (std::size_t i = 0; i < ms.size(); ++i) CHECK(same_bits(ms[i], mp[i]));
}

TEST_CASE("phase on a grid matches direct evaluation") {
  const ClosedFormSolution sol(DriveParams{}, FreeHamiltonian(kLadder));
  const auto grid = uniform_grid(30.0, 301);
  const auto phi = serial::phase_on_grid(sol, grid);
  CHECK(phi[0] == 0.0);
  for (std::size_t i = 0; i < grid.size(); i += 37) CHECK(std::abs(phi[i] - sol.phase(grid[i])) <= 1e-10);
}

TEST_CASE("trajectory rows") {
  const ClosedFormSolution sol(DriveParams{}, FreeHamiltonian(kLadder));
  const auto grid = uniform_grid(60.0, 601);
  const auto rows = parallel::sample_trajectory(sol, sol.decompose(ComplexVec3{{1.0, 0.0, 0.0}}), grid);
  CHECK(std::abs(rows[0].occupations[0] - 1.0) <= 1e-12);
  for (const auto& r : rows) {
    CHECK(std::abs(r.occupations[0] + r.occupations[1] + r.occupations[2] - 1.0) <= 1e-10);
    const auto j = jacobi(r.t, 0.25);
    CHECK(r.jacobi.sn == j.sn);
    CHECK(r.jacobi.cn == j.cn);
  }
}

TEST_CASE("DFT of pure tones") {
  const std::size_t n = 256;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 3.0 * std::cos(2 * std::numbers::pi * 5.0 * i / n) + 0.5;
  const auto mag = serial::dft_magnitude(x);
  CHECK(mag[0] == doctest::Approx(0.5 * n));
  CHECK(mag[5] == doctest::Approx(1.5 * n));
  for (std::size_t m = 1; m < mag.size(); ++m)
    if (m != 5) CHECK(mag[m] < 1e-9);
}

TEST_CASE("gram deviation") {
  const ComplexVec3 e0{{1.0, 0.0, 0.0}}, e1{{0.0, 1.0, 0.0}}, e2{{0.0, 0.0, 1.0}};
  CHECK(gram_deviation({e0, e1, e2}) == 0.0);
  CHECK(gram_deviation({e0, e1, Complex{2.0} * e2}) == doctest::Approx(3.0));
  CHECK(gram_deviation({e0, e0, e2}) == doctest::Approx(1.0));
}
