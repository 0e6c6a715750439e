#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ellipdrive/analysis.hpp"
#include "ellipdrive/errors.hpp"
#include "ellipdrive/oracle.hpp"

using namespace ellipdrive;

TEST_CASE("parabola vertex") {
  auto f = [](double t) { return 2.0 * (t - 1.3) * (t - 1.3) - 0.7; };
  const auto v = parabola_vertex(1.0, f(1.0), 1.2, f(1.2), 1.5, f(1.5));
  CHECK(v.t == doctest::Approx(1.3).epsilon(1e-13));
  CHECK(v.value == doctest::Approx(-0.7).epsilon(1e-13));
  const auto flat = parabola_vertex(0.0, 1.0, 1.0, 2.0, 2.0, 3.0);
  CHECK(flat.t == 1.0);
}

TEST_CASE("windowed minima of a cosine") {
  std::vector<double> t(1001), y(1001);
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = 0.02 * i;
    y[i] = std::cos(2 * std::numbers::pi * t[i] / 4.0);
  }
  const auto m = windowed_minima(t, y, 20);
  REQUIRE(m.size() == 5);
  for (std::size_t j = 0; j < m.size(); ++j) {
    CHECK(m[j].t == doctest::Approx(2.0 + 4.0 * j).epsilon(1e-5));
    CHECK(m[j].value == doctest::Approx(-1.0).epsilon(1e-5));
  }
  CHECK_THROWS_AS(windowed_minima(t, std::span(y).first(10), 3), DomainError);
}

TEST_CASE("beat period of a modulated oscillation") {
  const double fast = 6.0, beat = 30.0;
  std::vector<double> t(3001), y(3001);
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = 0.03 * i;
    const double envelope = 0.25 * (1.0 + std::cos(2 * std::numbers::pi * (t[i] - 10.0) / beat));
    y[i] = 1.0 - envelope * (1.0 - std::cos(2 * std::numbers::pi * t[i] / fast));
  }
  const auto est = estimate_beat_period(t, y, fast);
  REQUIRE(est.envelope_minima.size() >= 2);
  CHECK(est.period == doctest::Approx(beat).epsilon(0.05));
  CHECK(est.envelope_minima[0].t == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("moving average removal") {
  std::vector<double> y(100, 4.0);
  for (double v : subtract_moving_average(y, 11)) CHECK(std::abs(v) <= 1e-14);
  std::vector<double> ramp(100);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 0.5 * i;
  const auto r = subtract_moving_average(ramp, 11);
  for (std::size_t i = 5; i + 5 < ramp.size(); ++i) CHECK(std::abs(r[i]) <= 1e-12);
}

TEST_CASE("dominant peak") {
  const std::vector<double> mag{100.0, 1.0, 7.0, 3.0, 9.0, 2.0};
  const auto p = dominant_peak(mag, 10, 0.5);
  CHECK(p.bin == 4);
  CHECK(p.bin_width == doctest::Approx(0.2));
  CHECK(p.frequency == doctest::Approx(0.8));
  CHECK(p.magnitude == 9.0);
}

TEST_CASE("mean phase rate against trapezoid average of the rate") {
  const ClosedFormSolution sol(DriveParams{}, FreeHamiltonian(H0Params{}));
  const double period = sol.drive_period();
  // The rate is smooth and periodic, so the trapezoid rule converges spectrally.
  const int n = 4000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sol.phase_rate(period * i / n);
  const double want = sum / n;
  CHECK(mean_phase_rate(sol, period) == doctest::Approx(want).epsilon(1e-10));
  CHECK(want == doctest::Approx(0.77513).epsilon(1e-4));
  CHECK(want < 2 * std::numbers::pi / period);
  CHECK_THROWS_AS(mean_phase_rate(sol, INFINITY), DomainError);
}
