#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ellipdrive/kernels.hpp"

namespace ellipdrive {

inline constexpr std::string_view kTrajectoryHeader =
    "t,re_psi1,im_psi1,re_psi2,im_psi2,re_psi3,im_psi3,p1,p2,p3,phi,sn,cn,dn";
inline constexpr std::string_view kPhaseHeader = "t,phi,sin_phi";

/// `precision` significant digits in general notation,
/// '.' decimal point regardless of locale, and no negative zero.
std::string format_number(double v, int precision);

void write_trajectory_csv(std::ostream& os, std::span<const TrajectorySample> rows, int precision);
void write_phase_csv(std::ostream& os, std::span<const double> t, std::span<const double> phi,
                     int precision);
/// Columns: t, re/im of the 9 entries row major, eig1..eig3, conj_residual.
void write_density_csv(std::ostream& os, std::span<const DensitySample> rows, int precision);

struct Series {
  std::string name;
  std::vector<double> values;
};

/// Minimal SVG line chart of several series sharing one time axis.
void write_svg(std::ostream& os, std::string_view title, std::span<const double> t,
               std::span<const Series> series);

}  // namespace ellipdrive
