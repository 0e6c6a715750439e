#include "ellipdrive/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace ellipdrive {

std::string format_number(double v, int precision) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general,
                                 precision);
  return std::string(buf.data(), res.ptr);
}

void write_trajectory_csv(std::ostream& os, std::span<const TrajectorySample> rows, int precision) {
  os << kTrajectoryHeader << '\n';
  auto f = [precision](double v) { return format_number(v, precision); };
  for (const auto& r : rows) {
    os << f(r.t);
    for (int j = 0; j < 3; ++j) os << ',' << f(r.psi[j].real()) << ',' << f(r.psi[j].imag());
    for (double p : r.occupations) os << ',' << f(p);
    os << ',' << f(r.phi) << ',' << f(r.jacobi.sn) << ',' << f(r.jacobi.cn) << ',' << f(r.jacobi.dn)
       << '\n';
  }
}

void write_phase_csv(std::ostream& os, std::span<const double> t, std::span<const double> phi,
                     int precision) {
  os << kPhaseHeader << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << format_number(t[i], precision) << ',' << format_number(phi[i], precision) << ','
       << format_number(std::sin(phi[i]), precision) << '\n';
  }
}

void write_density_csv(std::ostream& os, std::span<const DensitySample> rows, int precision) {
  os << 't';
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) os << ",re_rho" << r << c << ",im_rho" << r << c;
  os << ",eig1,eig2,eig3,conj_residual\n";
  auto f = [precision](double v) { return format_number(v, precision); };
  for (const auto& s : rows) {
    os << f(s.t);
    for (const auto& z : s.rho.data()) os << ',' << f(z.real()) << ',' << f(z.imag());
    for (double e : s.eigenvalues) os << ',' << f(e);
    os << ',' << f(s.conjugation_residual) << '\n';
  }
}

void write_svg(std::ostream& os, std::string_view title, std::span<const double> t,
               std::span<const Series> series) {
  constexpr double width = 800, height = 400, margin = 50;
  static constexpr std::array<const char*, 4> colors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  double lo = 0.0, hi = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (double v : s.values) {
      if (first) lo = hi = v, first = false;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi == lo) hi = lo + 1.0;
  const double t0 = t.empty() ? 0.0 : t.front();
  const double t1 = t.empty() || t.back() == t0 ? t0 + 1.0 : t.back();
  auto px = [&](double x) { return margin + (x - t0) / (t1 - t0) * (width - 2 * margin); };
  auto py = [&](double y) { return height - margin - (y - lo) / (hi - lo) * (height - 2 * margin); };
  auto f = [](double v) { return format_number(v, 6); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << margin << "\" y=\"25\" font-family=\"sans-serif\" font-size=\"14\">" << title
     << "</text>\n";
  os << "<polyline fill=\"none\" stroke=\"black\" points=\"" << margin << ',' << margin << ' ' << margin
     << ',' << height - margin << ' ' << width - margin << ',' << height - margin << "\"/>\n";
  os << "<text x=\"" << margin << "\" y=\"" << height - 20 << "\" font-size=\"11\">t=" << f(t0)
     << "</text><text x=\"" << width - margin - 40 << "\" y=\"" << height - 20
     << "\" font-size=\"11\">t=" << f(t1) << "</text>\n";
  os << "<text x=\"5\" y=\"" << margin << "\" font-size=\"11\">" << f(hi) << "</text><text x=\"5\" y=\""
     << height - margin << "\" font-size=\"11\">" << f(lo) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = colors[k % colors.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
    const auto& v = series[k].values;
    for (std::size_t i = 0; i < std::min(v.size(), t.size()); ++i) {
      os << f(px(t[i])) << ',' << f(py(v[i])) << (i + 1 < v.size() ? " " : "");
    }
    os << "\"/>\n";
    os << "<text x=\"" << width - margin - 60 << "\" y=\"" << 25 + 15 * k << "\" font-size=\"12\" fill=\""
       << color << "\">" << series[k].name << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace ellipdrive
