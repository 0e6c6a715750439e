#include "ellipdrive/drive.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ellipdrive/errors.hpp"

namespace ellipdrive {

namespace {

constexpr double kPanelTolerance = 1e-13;
constexpr int kMaxSimpsonDepth = 48;

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace

double condition_residual(const DriveParams& p) {
  const double hw = p.hbar * p.omega;
  return 4.0 * p.k * p.k * hw * hw - p.a * p.a - p.k * p.k * p.x * p.x;
}

DerivedConstants validate(const DriveParams& p) {
  if (!std::isfinite(p.a) || !std::isfinite(p.x) || !std::isfinite(p.omega) ||
      !std::isfinite(p.k) || !std::isfinite(p.hbar)) {
    throw DomainError("drive parameters must be finite");
  }
  if (!(p.hbar > 0.0)) throw DomainError("hbar must be positive");
  if (!(p.omega > 0.0)) throw DomainError("omega must be positive");
  if (p.k == 0.0) {
    throw DomainError("degenerate modulus k = 0: the drive condition forces a = 0 and T = 0");
  }
  EllipticModulus modulus(p.k);
  if (p.a < 0.0 || p.x < 0.0) throw DomainError("drive amplitudes a and x must be non-negative");
  if (p.a == 0.0 && p.k < 1.0) {
    throw DomainError("a = 0 with k < 1 makes R(t) vanish at quarter periods");
  }

  const double hw = p.hbar * p.omega;
  const double residual = condition_residual(p);
  if (std::abs(residual) > 1e-10 * hw * hw) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "drive condition 4k^2(hbar w)^2 = a^2 + k^2 x^2 violated, residual " << residual;
    throw ValidationError(msg.str(), residual);
  }

  const double k2 = p.k * p.k;
  DerivedConstants c;
  c.B = 2.0 * k2 * hw;
  c.T = std::sqrt(p.a * p.a + k2 * k2 * p.x * p.x);
  c.identity_residual = c.T * c.T - c.B * c.B - p.a * p.a * modulus.complementary();
  if (!(c.T > 0.0)) throw DomainError("T vanishes");
  return c;
}

double complete_x(double a, double k, double omega, double hbar) {
  if (!(k > 0.0) || k > 1.0) throw DomainError("complete_x: k must lie in (0, 1]");
  if (a < 0.0) throw DomainError("complete_x: a must be non-negative");
  const double bound = 2.0 * k * hbar * omega;
  if (a > bound) throw DomainError("complete_x: a > 2 k hbar omega, no real x exists");
  return std::sqrt((bound - a) * (bound + a)) / k;
}

const char* to_string(BasisLabel l) {
  switch (l) {
    case BasisLabel::zero: return "zero";
    case BasisLabel::plus: return "plus";
    case BasisLabel::minus: return "minus";
  }
  return "unknown";
}

std::array<double, 3> occupations(const ComplexVec3& psi) {
  return {std::norm(psi[0]), std::norm(psi[1]), std::norm(psi[2])};
}

ClosedFormSolution::ClosedFormSolution(const DriveParams& p, const FreeHamiltonian& h0,
                                       SolutionOptions opts)
    : p_(p),
      c_(validate(p)),
      h0_(h0),
      opts_(opts),
      k_(p.k),
      s4_(generator(4)),
      s7_(generator(7)) {
  if (std::abs(h0.hbar() - p.hbar) > 1e-15 * p.hbar) {
    throw DomainError("drive and free Hamiltonian disagree on hbar");
  }
  period_ = p.k < 1.0 ? 4.0 * quarter_period(k_) / p.omega
                      : std::numeric_limits<double>::infinity();
  phase_prefactor_ = 0.5 * p.a * p.x * c_.T * k_.complementary() / p.hbar;
}

JacobiTriple ClosedFormSolution::jacobi_at(double t) const { return jacobi(p_.omega * t, k_); }

double ClosedFormSolution::amplitude_R(double t) const {
  const double cn = jacobi_at(t).cn;
  return std::numbers::sqrt2 * c_.T *
         std::sqrt(p_.a * p_.a * k_.complementary() + c_.B * c_.B * cn * cn);
}

double ClosedFormSolution::amplitude_R_via_sn(double t) const {
  const double sn = jacobi_at(t).sn;
  return std::numbers::sqrt2 * c_.T * std::sqrt(c_.T * c_.T - c_.B * c_.B * sn * sn);
}

double ClosedFormSolution::phase_rate(double t) const {
  if (phase_prefactor_ == 0.0) return 0.0;
  const double cn = jacobi_at(t).cn;
  return phase_prefactor_ / (p_.a * p_.a * k_.complementary() + c_.B * c_.B * cn * cn);
}

double ClosedFormSolution::phase_integral(double t0, double t1) const {
  const auto f = [this](double s) { return phase_rate(s); };
  // Panels no longer than half a quarter period keep the Simpson start-up
  // sampling from aliasing the periodic integrand.
  const double panel = 0.5 * quarter_period(k_) / p_.omega;
  const int n = std::max(1, static_cast<int>(std::ceil((t1 - t0) / panel)));
  const double h = (t1 - t0) / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = t0 + i * h;
    const double b = i + 1 == n ? t1 : t0 + (i + 1) * h;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    sum += adaptive_simpson(f, a, b, fa, fm, fb, whole, kPanelTolerance, kMaxSimpsonDepth);
  }
  return sum;
}

double ClosedFormSolution::phase_increment(double t0, double t1) const {
  if (phase_prefactor_ == 0.0 || t0 == t1) return 0.0;
  if (t1 < t0) return -phase_integral(t1, t0);
  return phase_integral(t0, t1);
}

double ClosedFormSolution::phase(double t) const { return phase_increment(0.0, t); }

ComplexVec3 ClosedFormSolution::basis_state(BasisLabel l, double t) const {
  return basis_state(l, t, l == BasisLabel::zero ? 0.0 : phase(t));
}

ComplexVec3 ClosedFormSolution::basis_state(BasisLabel l, double t, double phi) const {
  const Complex i{0.0, 1.0};
  const auto [sn, cn, dn] = jacobi_at(t);
  const double a = p_.a;
  const double k2x = p_.k * p_.k * p_.x;
  const double B = c_.B;
  const double T = c_.T;

  ComplexVec3 v;
  if (l == BasisLabel::zero) {
    v = ComplexVec3{{i * a * dn, k2x * cn, B * sn}};
    v *= 1.0 / T;
  } else {
    const double s = l == BasisLabel::plus ? 1.0 : -1.0;
    const double r = std::numbers::sqrt2 * T *
                     std::sqrt(a * a * k_.complementary() + B * B * cn * cn);
    v = ComplexVec3{{k2x * T * cn + s * i * a * B * sn * dn,
                     s * k2x * B * sn * cn + i * a * T * dn,
                     -s * (k2x * k2x * cn * cn + a * a * dn * dn)}};
    const double angle = opts_.suppress_phase ? 0.0 : -s * phi;
    v *= std::polar(1.0 / r, angle);
  }
  return h0_.propagate(v, t);
}

std::array<ComplexVec3, 3> ClosedFormSolution::basis(double t, double phi) const {
  return {basis_state(BasisLabel::zero, t, phi), basis_state(BasisLabel::plus, t, phi),
          basis_state(BasisLabel::minus, t, phi)};
}

std::array<Complex, 3> ClosedFormSolution::project(const ComplexVec3& initial) const {
  const auto b = basis(0.0, 0.0);
  return {inner(b[0], initial), inner(b[1], initial), inner(b[2], initial)};
}

std::array<Complex, 3> ClosedFormSolution::decompose(const ComplexVec3& initial) const {
  if (std::abs(initial.norm() - 1.0) > 1e-8) {
    throw DomainError("decompose: initial state must be normalized");
  }
  return project(initial);
}

ComplexVec3 ClosedFormSolution::evolve(const std::array<Complex, 3>& coeffs, double t,
                                       double phi) const {
  const auto b = basis(t, phi);
  ComplexVec3 out;
  for (int j = 0; j < 3; ++j) out += coeffs[j] * b[j];
  return out;
}

ComplexVec3 ClosedFormSolution::evolve(const ComplexVec3& initial, double t) const {
  return evolve(decompose(initial), t, phase(t));
}

ComplexMat3 ClosedFormSolution::hamiltonian(double t) const {
  const auto j = jacobi_at(t);
  ComplexMat3 drive = (p_.a * j.cn) * s4_ + (p_.x * j.dn) * s7_;
  return h0_.matrix() + h0_.to_interaction(drive, t);
}

}  // namespace ellipdrive
