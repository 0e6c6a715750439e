#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ellipdrive/drive.hpp"

namespace ellipdrive {

struct Extremum {
  double t;
  double value;
};

/// Mean of d(phi)/dt over [0, period].
double mean_phase_rate(const ClosedFormSolution& sol, double period);

/// Vertex of the parabola through three points.
Extremum parabola_vertex(double t0, double y0, double t1, double y1, double t2, double y2);

/**
 * Local minima of y that are also the minimum of a moving window of
 * +-half_window samples, each refined by a parabola through its neighbours.
 */
std::vector<Extremum> windowed_minima(std::span<const double> t, std::span<const double> y,
                                      std::size_t half_window);

struct BeatEstimate {
  std::vector<Extremum> fast_minima;      // lower envelope samples
  std::vector<Extremum> envelope_minima;  // minima of the lower envelope
  double period = 0.0;                    // mean spacing of envelope minima, NaN if < 2
};

/**
 * Beat period of a fast oscillation: the lower envelope is traced by the
 * windowed minima (window a quarter drive period either side), and the
 * beat period is the spacing of the envelope's own parabola-refined minima.
 */
BeatEstimate estimate_beat_period(std::span<const double> t, std::span<const double> y,
                                  double drive_period);

/// y minus its centred moving average over `window` samples (truncated at the ends).
std::vector<double> subtract_moving_average(std::span<const double> y, std::size_t window);

struct SpectralPeak {
  std::size_t bin = 0;
  double frequency = 0.0;
  double magnitude = 0.0;
  double bin_width = 0.0;
};

/// Largest non-DC bin of a one-sided magnitude spectrum of n samples spaced dt.
SpectralPeak dominant_peak(std::span<const double> magnitude, std::size_t n, double dt);

}  // namespace ellipdrive
