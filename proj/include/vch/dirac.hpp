#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "vch/constants.hpp"

// Minimal Dirac algebra in the Dirac representation (2x2 upper/lower
// spinor blocks), used by the helicity amplitudes and by the trace
// oracle. Metric (+,-,-,-).

namespace vch {

using cplx = std::complex<double>;

struct FourVector {
  cplx t{}, x{}, y{}, z{};
};

inline cplx minkowski_dot(const FourVector& a, const FourVector& b) {
  return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

using Mat4 = std::array<std::array<cplx, 4>, 4>;

inline Mat4 zero_mat4() { return Mat4{}; }

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 r = zero_mat4();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const cplx aik = a[i][k];
      if (aik == cplx{}) continue;
      for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
    }
  return r;
}

inline Mat4 operator+(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

inline Mat4 scaled(const Mat4& a, cplx s) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] * s;
  return r;
}

inline const Mat4& gamma0() {
  static const Mat4 g = [] {
    Mat4 m = zero_mat4();
    m[0][0] = m[1][1] = 1.0;
    m[2][2] = m[3][3] = -1.0;
    return m;
  }();
  return g;
}

inline const Mat4& gamma(int i) {
  static const std::array<Mat4, 3> g = [] {
    std::array<Mat4, 3> a{zero_mat4(), zero_mat4(), zero_mat4()};
    const cplx I(0.0, 1.0);
    // gamma^i = [[0, sigma_i], [-sigma_i, 0]]
    // sigma_x
    a[0][0][3] = 1.0; a[0][1][2] = 1.0; a[0][2][1] = -1.0; a[0][3][0] = -1.0;
    // sigma_y
    a[1][0][3] = -I; a[1][1][2] = I; a[1][2][1] = I; a[1][3][0] = -I;
    // sigma_z
    a[2][0][2] = 1.0; a[2][1][3] = -1.0; a[2][2][0] = -1.0; a[2][3][1] = 1.0;
    return a;
  }();
  if (i < 1 || i > 3) throw std::domain_error("spatial gamma index in 1..3");
  return g[i - 1];
}

// a_mu gamma^mu
inline Mat4 feynman_slash(const FourVector& a) {
  Mat4 r = scaled(gamma0(), a.t);
  r = r + scaled(gamma(1), -a.x);
  r = r + scaled(gamma(2), -a.y);
  r = r + scaled(gamma(3), -a.z);
  return r;
}

inline Mat4 identity_mat4() {
  Mat4 m = zero_mat4();
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

inline cplx trace(const Mat4& a) {
  return a[0][0] + a[1][1] + a[2][2] + a[3][3];
}

// Spin z-projection operator s_z = (1/2) diag(sigma_z, sigma_z).
inline const Mat4& spin_z() {
  static const Mat4 m = [] {
    Mat4 s = zero_mat4();
    s[0][0] = 0.5; s[1][1] = -0.5; s[2][2] = 0.5; s[3][3] = -0.5;
    return s;
  }();
  return m;
}

using Bispinor = std::array<cplx, 4>;

// Basis bispinor U^(sigma)(E, lambda): upper components sqrt(E+m) w,
// lower 2 lambda sqrt(E-m) w. Eigenstate of s_z with eigenvalue sigma.
inline Bispinor basis_bispinor(double energy, int two_lambda, int two_sigma) {
  if (energy < electron_mass_ev)
    throw std::domain_error("electron energy below rest mass");
  if ((two_lambda != 1 && two_lambda != -1) ||
      (two_sigma != 1 && two_sigma != -1))
    throw std::domain_error("spin-1/2 projections must be +-1 (doubled)");
  const double up = std::sqrt(energy + electron_mass_ev);
  const double lo = two_lambda * std::sqrt(energy - electron_mass_ev);
  Bispinor u{};
  const int i = two_sigma == 1 ? 0 : 1;
  u[i] = up;
  u[i + 2] = lo;
  return u;
}

// ubar = u^dagger gamma^0
inline Bispinor dirac_adjoint(const Bispinor& u) {
  return {std::conj(u[0]), std::conj(u[1]), -std::conj(u[2]), -std::conj(u[3])};
}

inline cplx bilinear(const Bispinor& ubar, const Mat4& m, const Bispinor& u) {
  cplx r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r += ubar[i] * m[i][j] * u[j];
  return r;
}

inline Bispinor apply(const Mat4& m, const Bispinor& u) {
  Bispinor r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += m[i][j] * u[j];
  return r;
}

} // namespace vch
