#include "ellipdrive/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ellipdrive/errors.hpp"

namespace ellipdrive {

double mean_phase_rate(const ClosedFormSolution& sol, double period) {
  if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("mean_phase_rate: bad period");
  return sol.phase_increment(0.0, period) / period;
}

Extremum parabola_vertex(double t0, double y0, double t1, double y1, double t2, double y2) {
  const double d01 = (y1 - y0) / (t1 - t0);
  const double d12 = (y2 - y1) / (t2 - t1);
  const double curvature = (d12 - d01) / (t2 - t0);
  if (curvature == 0.0) return {t1, y1};
  // y = y1 + d (t - t1) + curvature (t - t1)^2 with d the slope at t1.
  const double slope = d01 + curvature * (t1 - t0);
  const double dt = -slope / (2.0 * curvature);
  return {t1 + dt, y1 + slope * dt + curvature * dt * dt};
}

std::vector<Extremum> windowed_minima(std::span<const double> t, std::span<const double> y,
                                      std::size_t half_window) {
  if (t.size() != y.size()) throw DomainError("windowed_minima: size mismatch");
  std::vector<Extremum> out;
  const std::size_t n = y.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] < y[i - 1] && y[i] <= y[i + 1])) continue;
    const std::size_t lo = i > half_window ? i - half_window : 0;
    const std::size_t hi = std::min(n - 1, i + half_window);
    const double window_min = *std::min_element(y.begin() + lo, y.begin() + hi + 1);
    if (y[i] != window_min) continue;
    out.push_back(parabola_vertex(t[i - 1], y[i - 1], t[i], y[i], t[i + 1], y[i + 1]));
  }
  return out;
}

BeatEstimate estimate_beat_period(std::span<const double> t, std::span<const double> y,
                                  double drive_period) {
  if (t.size() < 3) throw DomainError("estimate_beat_period: too few samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  const auto half = static_cast<std::size_t>(std::max(1.0, std::floor(0.25 * drive_period / dt)));

  BeatEstimate est;
  est.fast_minima = windowed_minima(t, y, half);
  const auto& f = est.fast_minima;
  for (std::size_t j = 1; j + 1 < f.size(); ++j) {
    if (f[j].value < f[j - 1].value && f[j].value <= f[j + 1].value) {
      est.envelope_minima.push_back(
          parabola_vertex(f[j - 1].t, f[j - 1].value, f[j].t, f[j].value, f[j + 1].t, f[j + 1].value));
    }
  }
  const auto& e = est.envelope_minima;
  est.period = e.size() >= 2 ? (e.back().t - e.front().t) / static_cast<double>(e.size() - 1)
                             : std::numeric_limits<double>::quiet_NaN();
  return est;
}

std::vector<double> subtract_moving_average(std::span<const double> y, std::size_t window) {
  const std::size_t n = y.size();
  const std::size_t half = window / 2;
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + y[i];
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i > half ? i - half : 0;
    const std::size_t hi = std::min(n, i + half + 1);
    out[i] = y[i] - (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }
  return out;
}

SpectralPeak dominant_peak(std::span<const double> magnitude, std::size_t n, double dt) {
  if (magnitude.size() < 2) throw DomainError("dominant_peak: spectrum too short");
  SpectralPeak p;
  p.bin_width = 1.0 / (static_cast<double>(n) * dt);
  for (std::size_t m = 1; m < magnitude.size(); ++m) {
    if (magnitude[m] > p.magnitude) {
      p.magnitude = magnitude[m];
      p.bin = m;
    }
  }
  p.frequency = static_cast<double>(p.bin) * p.bin_width;
  return p;
}

}  // namespace ellipdrive
