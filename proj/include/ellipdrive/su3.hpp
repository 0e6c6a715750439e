#pragma once

#include <array>
#include <complex>

namespace ellipdrive {

using Complex = std::complex<double>;

/// Three complex amplitudes (a state vector in the level basis).
struct ComplexVec3 {
  std::array<Complex, 3> v{};

  Complex& operator[](int i) { return v[i]; }
  const Complex& operator[](int i) const { return v[i]; }

  ComplexVec3& operator+=(const ComplexVec3& o);
  ComplexVec3& operator-=(const ComplexVec3& o);
  ComplexVec3& operator*=(Complex s);
  double squared_norm() const;
  double norm() const;
};

ComplexVec3 operator+(ComplexVec3 a, const ComplexVec3& b);
ComplexVec3 operator-(ComplexVec3 a, const ComplexVec3& b);
ComplexVec3 operator*(Complex s, ComplexVec3 a);
/// <a, b>, conjugate-linear in the first argument.
Complex inner(const ComplexVec3& a, const ComplexVec3& b);

/// Dense 3x3 complex matrix, row major.
class ComplexMat3 {
 public:
  ComplexMat3() = default;
  explicit ComplexMat3(const std::array<std::array<Complex, 3>, 3>& rows);

  static ComplexMat3 identity();
  static ComplexMat3 diagonal(Complex d0, Complex d1, Complex d2);

  Complex& operator()(int r, int c) { return a_[3 * r + c]; }
  const Complex& operator()(int r, int c) const { return a_[3 * r + c]; }
  const std::array<Complex, 9>& data() const { return a_; }
  std::array<Complex, 9>& data() { return a_; }

  ComplexMat3& operator+=(const ComplexMat3& o);
  ComplexMat3& operator-=(const ComplexMat3& o);
  ComplexMat3& operator*=(Complex s);

  ComplexMat3 adjoint() const;
  Complex trace() const;
  ComplexVec3 column(int c) const;
  void set_column(int c, const ComplexVec3& col);

  /// Frobenius norm.
  double norm() const;
  /// Largest entry modulus.
  double max_abs() const;

  bool is_hermitian(double tol = 1e-12) const;
  bool is_unitary(double tol = 1e-12) const;

 private:
  std::array<Complex, 9> a_{};
};

ComplexMat3 operator+(ComplexMat3 a, const ComplexMat3& b);
ComplexMat3 operator-(ComplexMat3 a, const ComplexMat3& b);
ComplexMat3 operator*(Complex s, ComplexMat3 a);
ComplexMat3 operator*(const ComplexMat3& a, const ComplexMat3& b);
ComplexVec3 operator*(const ComplexMat3& m, const ComplexVec3& x);

ComplexMat3 commutator(const ComplexMat3& a, const ComplexMat3& b);
ComplexMat3 anticommutator(const ComplexMat3& a, const ComplexMat3& b);

/// S_j = lambda_j / 2, j = 1..8 (half the Gell-Mann matrices).
ComplexMat3 generator(int j);

enum class LevelConfiguration { vee, ladder, lambda };
const char* to_string(LevelConfiguration c);

/// Parameters of the static Hamiltonian (2/3) diag(-mu, mu, lambda).
struct H0Params {
  double mu = 10.0;
  double lambda = 5.0;
  double hbar = 1.0;

  /// vee iff lambda < -mu < 0, ladder iff |lambda| < mu, Lambda iff lambda > mu > 0.
  /// Boundary cases and mu <= 0 throw DomainError.
  LevelConfiguration classify() const;
};

ComplexMat3 h0_matrix(const H0Params& p);

struct Eigensystem {
  std::array<double, 3> values;  // ascending
  ComplexMat3 vectors;           // columns are eigenvectors
};

/**
 * Eigen-decomposition M = Q diag(values) Q^dagger of a Hermitian matrix by
 * cyclic complex Jacobi rotations. Eigenvalues ascend; each eigenvector's
 * largest-modulus component (first one on ties) is made real positive.
 * Throws DomainError when ||M - M^dagger|| exceeds 1e-10.
 */
Eigensystem hermitian_eigensystem(const ComplexMat3& m);

/**
 * Time-independent Hermitian Hamiltonian with its propagator
 * exp(-i t H / hbar). The diagonal case is evaluated in closed form;
 * anything else goes through the eigensystem once at construction.
 */
class FreeHamiltonian {
 public:
  explicit FreeHamiltonian(const H0Params& p);
  FreeHamiltonian(const ComplexMat3& h, double hbar);

  const ComplexMat3& matrix() const noexcept { return h_; }
  double hbar() const noexcept { return hbar_; }
  bool is_diagonal() const noexcept { return diagonal_; }

  ComplexMat3 propagator(double t) const;
  /// [S]_t = exp(-itH/hbar) S exp(itH/hbar).
  ComplexMat3 to_interaction(const ComplexMat3& s, double t) const;
  ComplexVec3 propagate(const ComplexVec3& x, double t) const;

 private:
  ComplexMat3 h_;
  double hbar_;
  bool diagonal_;
  Eigensystem eig_;
};

inline ComplexMat3 free_propagator(const H0Params& p, double t) {
  return FreeHamiltonian(p).propagator(t);
}

inline ComplexMat3 interaction_picture(const ComplexMat3& s, const H0Params& p, double t) {
  return FreeHamiltonian(p).to_interaction(s, t);
}

}  // namespace ellipdrive
