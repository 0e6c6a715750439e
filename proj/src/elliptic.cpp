#include "ellipdrive/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ellipdrive/errors.hpp"

namespace ellipdrive {

namespace {

constexpr int kMaxLandenDepth = 13;

// sqrt(eps/100): the AGM converges quadratically, so one more step
// after this threshold reaches full double precision.
const double kAgmTolerance = std::sqrt(std::numeric_limits<double>::epsilon() * 0.01);

}  // namespace

EllipticModulus::EllipticModulus(double k) : k_(k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw DomainError("elliptic modulus must lie in [0, 1], got " + std::to_string(k));
  }
}

JacobiTriple jacobi(double u, EllipticModulus modulus) {
  if (!std::isfinite(u)) throw DomainError("jacobi: phase must be finite");

  double mc = modulus.complementary();
  if (mc == 0.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }

  std::array<double, kMaxLandenDepth> m{};
  std::array<double, kMaxLandenDepth> n{};
  double a = 1.0;
  double c = 1.0;
  int depth = 0;
  for (; depth < kMaxLandenDepth; ++depth) {
    m[depth] = a;
    mc = std::sqrt(mc);
    n[depth] = mc;
    c = 0.5 * (a + mc);
    if (!(std::abs(a - mc) > kAgmTolerance * a)) {
      ++depth;
      break;
    }
    mc *= a;
    a = c;
  }

  const double x = u * c;
  double sn = std::sin(x);
  double cn = std::cos(x);
  double dn = 1.0;
  if (sn != 0.0) {
    double ratio = cn / sn;
    c *= ratio;
    while (depth-- > 0) {
      const double b = m[depth];
      ratio *= c;
      c *= dn;
      dn = (n[depth] + ratio) / (b + ratio);
      ratio = c / b;
    }
    const double s = 1.0 / std::sqrt(c * c + 1.0);
    sn = sn < 0.0 ? -s : s;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

JacobiTriple jacobi(double u, double k) { return jacobi(u, EllipticModulus(k)); }

double quarter_period(EllipticModulus modulus) {
  const double mc = modulus.complementary();
  if (mc == 0.0) throw DomainError("quarter_period: K(k) diverges at k = 1");
  double a = 1.0;
  double b = std::sqrt(mc);
  for (int i = 0; i < 64 && std::abs(a - b) > 4.0 * std::numeric_limits<double>::epsilon() * a; ++i) {
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return std::numbers::pi / (a + b);
}

double quarter_period(double k) { return quarter_period(EllipticModulus(k)); }

}  // namespace ellipdrive
