#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "ellipdrive/errors.hpp"

namespace ellipdrive {

struct StepStats {
  long accepted = 0;
  long rejected = 0;
};

struct StepControl {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double initial_step = 1e-3;
  long max_steps = 50'000'000;
};

/**
 * Dormand-Prince 5(4) integration of y' = f(t, y) for a complex state of
 * fixed size, sampled at `grid` (strictly monotone, either direction; the
 * first point is the initial time). Steps are shortened to land exactly on
 * grid points. PI step-size control with safety factor 0.9. No
 * renormalization of any kind is applied to the state.
 */
template <std::size_t N, class Rhs>
std::vector<std::array<std::complex<double>, N>> integrate_dopri(
    const Rhs& f, const std::array<std::complex<double>, N>& y0, std::span<const double> grid,
    const StepControl& ctl, StepStats* stats = nullptr) {
  using State = std::array<std::complex<double>, N>;

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  // Each step's error estimate is held to this fraction of the tolerance,
  // which keeps the accumulated norm drift over ~10^4 steps within 10 rel_tol.
  static constexpr double kLocalFraction = 0.2;

  std::vector<State> out;
  out.reserve(grid.size());
  if (grid.empty()) return out;
  out.push_back(y0);
  if (grid.size() == 1) return out;

  const double dir = grid[1] > grid[0] ? 1.0 : -1.0;
  double t = grid[0];
  State y = y0;
  State k1 = f(t, y);
  double h = std::min(ctl.initial_step, ctl.max_step);
  double err_prev = 1e-4;
  long steps = 0;

  auto combine = [](const State& base, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State r = base;
    for (const auto& [w, k] : terms) {
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < N; ++i) r[i] += (h * w) * (*k)[i];
    }
    return r;
  };

  for (std::size_t g = 1; g < grid.size(); ++g) {
    const double target = grid[g];
    while (dir * (target - t) > 0.0) {
      if (++steps > ctl.max_steps) throw IntegrationError("step budget exhausted", t);
      const double remaining = std::abs(target - t);
      // Steps within a hair of the target land on it, so t never stops an ulp short.
      const bool last = h * (1.0 + 1e-8) >= remaining;
      const double step = last ? remaining : h;
      if (step < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
        throw IntegrationError("step size underflow", t);
      }
      const double hs = dir * step;

      const State k2 = f(t + c2 * hs, combine(y, hs, {{a21, &k1}}));
      const State k3 = f(t + c3 * hs, combine(y, hs, {{a31, &k1}, {a32, &k2}}));
      const State k4 = f(t + c4 * hs, combine(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const State k5 = f(t + c5 * hs, combine(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      const State k6 = f(t + hs, combine(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      const State y_new = combine(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      const double t_new = last ? target : t + hs;
      const State k7 = f(t_new, y_new);

      double acc = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const std::complex<double> e =
            hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double scale =
            kLocalFraction * (ctl.abs_tol + ctl.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i])));
        acc = std::max(acc, std::abs(e) / scale);
      }
      const double err = acc;

      if (err <= 1.0) {
        t = t_new;
        y = y_new;
        k1 = k7;
        if (stats) ++stats->accepted;
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
        fac = std::clamp(fac, 0.2, 5.0);
        err_prev = std::max(err, 1e-4);
        // A step shortened to hit the grid does not shrink the proposal.
        h = std::min(ctl.max_step, (last ? std::max(h, step) : step) * fac);
      } else {
        if (stats) ++stats->rejected;
        h = step * std::max(0.2, 0.9 * std::pow(err, -0.2));
      }
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace ellipdrive
