#include "ellipdrive/su3.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ellipdrive/errors.hpp"

namespace ellipdrive {

ComplexVec3& ComplexVec3::operator+=(const ComplexVec3& o) {
  for (int i = 0; i < 3; ++i) v[i] += o.v[i];
  return *this;
}

ComplexVec3& ComplexVec3::operator-=(const ComplexVec3& o) {
  for (int i = 0; i < 3; ++i) v[i] -= o.v[i];
  return *this;
}

ComplexVec3& ComplexVec3::operator*=(Complex s) {
  for (auto& x : v) x *= s;
  return *this;
}

double ComplexVec3::squared_norm() const {
  return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
}

double ComplexVec3::norm() const { return std::sqrt(squared_norm()); }

ComplexVec3 operator+(ComplexVec3 a, const ComplexVec3& b) { return a += b; }
ComplexVec3 operator-(ComplexVec3 a, const ComplexVec3& b) { return a -= b; }
ComplexVec3 operator*(Complex s, ComplexVec3 a) { return a *= s; }

Complex inner(const ComplexVec3& a, const ComplexVec3& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

ComplexMat3::ComplexMat3(const std::array<std::array<Complex, 3>, 3>& rows) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) (*this)(r, c) = rows[r][c];
}

ComplexMat3 ComplexMat3::identity() { return diagonal(1.0, 1.0, 1.0); }

ComplexMat3 ComplexMat3::diagonal(Complex d0, Complex d1, Complex d2) {
  ComplexMat3 m;
  m(0, 0) = d0;
  m(1, 1) = d1;
  m(2, 2) = d2;
  return m;
}

ComplexMat3& ComplexMat3::operator+=(const ComplexMat3& o) {
  for (int i = 0; i < 9; ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMat3& ComplexMat3::operator-=(const ComplexMat3& o) {
  for (int i = 0; i < 9; ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMat3& ComplexMat3::operator*=(Complex s) {
  for (auto& x : a_) x *= s;
  return *this;
}

ComplexMat3 ComplexMat3::adjoint() const {
  ComplexMat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = std::conj((*this)(c, r));
  return m;
}

Complex ComplexMat3::trace() const { return a_[0] + a_[4] + a_[8]; }

ComplexVec3 ComplexMat3::column(int c) const {
  return ComplexVec3{{(*this)(0, c), (*this)(1, c), (*this)(2, c)}};
}

void ComplexMat3::set_column(int c, const ComplexVec3& col) {
  for (int r = 0; r < 3; ++r) (*this)(r, c) = col[r];
}

double ComplexMat3::norm() const {
  double s = 0.0;
  for (const auto& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

double ComplexMat3::max_abs() const {
  double m = 0.0;
  for (const auto& x : a_) m = std::max(m, std::abs(x));
  return m;
}

bool ComplexMat3::is_hermitian(double tol) const { return (*this - adjoint()).norm() <= tol; }

bool ComplexMat3::is_unitary(double tol) const {
  return (*this * adjoint() - identity()).norm() <= tol;
}

ComplexMat3 operator+(ComplexMat3 a, const ComplexMat3& b) { return a += b; }
ComplexMat3 operator-(ComplexMat3 a, const ComplexMat3& b) { return a -= b; }
ComplexMat3 operator*(Complex s, ComplexMat3 a) { return a *= s; }

ComplexMat3 operator*(const ComplexMat3& a, const ComplexMat3& b) {
  ComplexMat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
  return m;
}

ComplexVec3 operator*(const ComplexMat3& m, const ComplexVec3& x) {
  ComplexVec3 y;
  for (int r = 0; r < 3; ++r) y[r] = m(r, 0) * x[0] + m(r, 1) * x[1] + m(r, 2) * x[2];
  return y;
}

ComplexMat3 commutator(const ComplexMat3& a, const ComplexMat3& b) { return a * b - b * a; }
ComplexMat3 anticommutator(const ComplexMat3& a, const ComplexMat3& b) { return a * b + b * a; }

ComplexMat3 generator(int j) {
  const Complex i{0.0, 1.0};
  ComplexMat3 m;
  switch (j) {
    case 1: m(0, 1) = m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -i; m(1, 0) = i; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    case 4: m(0, 2) = m(2, 0) = 1.0; break;
    case 5: m(0, 2) = -i; m(2, 0) = i; break;
    case 6: m(1, 2) = m(2, 1) = 1.0; break;
    case 7: m(1, 2) = -i; m(2, 1) = i; break;
    case 8: {
      const double s = 1.0 / std::sqrt(3.0);
      m(0, 0) = s;
      m(1, 1) = s;
      m(2, 2) = -2.0 * s;
      break;
    }
    default:
      throw DomainError("generator index must be in 1..8, got " + std::to_string(j));
  }
  return 0.5 * m;
}

const char* to_string(LevelConfiguration c) {
  switch (c) {
    case LevelConfiguration::vee: return "vee";
    case LevelConfiguration::ladder: return "ladder";
    case LevelConfiguration::lambda: return "Lambda";
  }
  return "unknown";
}

LevelConfiguration H0Params::classify() const {
  if (!(mu > 0.0)) throw DomainError("H0: mu must be positive");
  if (lambda < -mu) return LevelConfiguration::vee;
  if (std::abs(lambda) < mu) return LevelConfiguration::ladder;
  if (lambda > mu) return LevelConfiguration::lambda;
  throw DomainError("H0: |lambda| == mu is a boundary between configurations");
}

ComplexMat3 h0_matrix(const H0Params& p) {
  return ComplexMat3::diagonal(-2.0 * p.mu / 3.0, 2.0 * p.mu / 3.0, 2.0 * p.lambda / 3.0);
}

Eigensystem hermitian_eigensystem(const ComplexMat3& m) {
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > 1e-10 * scale) {
    throw DomainError("hermitian_eigensystem: matrix is not Hermitian");
  }
  // Symmetrize so rounding in the input cannot leave complex diagonals.
  ComplexMat3 a = 0.5 * (m + m.adjoint());
  ComplexMat3 q = ComplexMat3::identity();

  auto off = [&a] { return std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2)); };
  const double tiny = 1e-32 * std::max(1e-300, a.norm() * a.norm());
  for (int sweep = 0; sweep < 50 && off() > tiny; ++sweep) {
    for (int p = 0; p < 2; ++p) {
      for (int r = p + 1; r < 3; ++r) {
        const double mag = std::abs(a(p, r));
        if (mag == 0.0) continue;
        // Rotate the (p,r) pair: a phase makes the pivot real, then a real Jacobi rotation.
        const Complex phase = a(p, r) / mag;
        const double app = a(p, p).real();
        const double arr = a(r, r).real();
        const double theta = (arr - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, r) plane.
        ComplexMat3 j = ComplexMat3::identity();
        j(p, p) = c;
        j(p, r) = s;
        j(r, p) = -s * std::conj(phase);
        j(r, r) = c * std::conj(phase);
        a = j.adjoint() * a * j;
        q = q * j;
        a(p, r) = 0.0;
        a(r, p) = 0.0;
      }
    }
  }

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&a](int x, int y) { return a(x, x).real() < a(y, y).real(); });

  Eigensystem out;
  for (int c = 0; c < 3; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    ComplexVec3 v = q.column(order[c]);
    int big = 0;
    for (int r = 1; r < 3; ++r)
      if (std::abs(v[r]) > std::abs(v[big])) big = r;
    const double mag = std::abs(v[big]);
    if (mag > 0.0) v *= std::conj(v[big]) / mag;
    v[big] = std::abs(v[big]);
    out.vectors.set_column(c, v);
  }
  return out;
}

FreeHamiltonian::FreeHamiltonian(const H0Params& p) : FreeHamiltonian(h0_matrix(p), p.hbar) {}

FreeHamiltonian::FreeHamiltonian(const ComplexMat3& h, double hbar) : h_(h), hbar_(hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("hbar must be positive and finite");
  if (!h.is_hermitian(1e-10 * std::max(1.0, h.norm()))) {
    throw DomainError("free Hamiltonian must be Hermitian");
  }
  diagonal_ = h(0, 1) == 0.0 && h(0, 2) == 0.0 && h(1, 2) == 0.0 && h(1, 0) == 0.0 &&
              h(2, 0) == 0.0 && h(2, 1) == 0.0;
  if (!diagonal_) eig_ = hermitian_eigensystem(h);
}

ComplexMat3 FreeHamiltonian::propagator(double t) const {
  const Complex i{0.0, 1.0};
  if (diagonal_) {
    return ComplexMat3::diagonal(std::exp(-i * t * h_(0, 0).real() / hbar_),
                                 std::exp(-i * t * h_(1, 1).real() / hbar_),
                                 std::exp(-i * t * h_(2, 2).real() / hbar_));
  }
  const ComplexMat3 phases = ComplexMat3::diagonal(std::exp(-i * t * eig_.values[0] / hbar_),
                                                   std::exp(-i * t * eig_.values[1] / hbar_),
                                                   std::exp(-i * t * eig_.values[2] / hbar_));
  return eig_.vectors * phases * eig_.vectors.adjoint();
}

ComplexMat3 FreeHamiltonian::to_interaction(const ComplexMat3& s, double t) const {
  if (diagonal_) {
    // Entry (r,c) picks up exp(-it(h_r - h_c)/hbar).
    const Complex i{0.0, 1.0};
    ComplexMat3 out = s;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        if (r != c) out(r, c) *= std::exp(-i * t * (h_(r, r).real() - h_(c, c).real()) / hbar_);
    return out;
  }
  const ComplexMat3 u = propagator(t);
  return u * s * u.adjoint();
}

ComplexVec3 FreeHamiltonian::propagate(const ComplexVec3& x, double t) const {
  return propagator(t) * x;
}

}  // namespace ellipdrive
