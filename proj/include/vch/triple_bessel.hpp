#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "vch/dirac.hpp"
#include "vch/wigner.hpp"

// Closed form of the triple-Bessel radial integral
// I_{ll'} = integral of J_l(k r) J_l'(k' r) J_{l-l'}(k_gamma r) r dr
// and the reduced all-twisted S-matrix kernel built on it.

namespace vch {

enum class TriangleStatus { ok, no_triangle, degenerate };

// Transverse-momentum triangle with sides (kappa, kappa', kappa_gamma).
struct TransverseTriangle {
  double kappa = 0.0, kappa_f = 0.0, kappa_g = 0.0;
  double area = 0.0;       // [eV^2]
  double beta = 0.0;       // angle opposite kappa
  double beta_f = 0.0;     // angle opposite kappa'
  TriangleStatus status = TriangleStatus::no_triangle;
};

inline TransverseTriangle triangle_geometry(double kappa, double kappa_f,
                                            double kappa_g) {
  if (!(kappa > 0.0) || !(kappa_f > 0.0) || !(kappa_g > 0.0))
    throw std::domain_error("triangle sides must be positive");
  TransverseTriangle t;
  t.kappa = kappa;
  t.kappa_f = kappa_f;
  t.kappa_g = kappa_g;
  const double s = 0.5 * (kappa + kappa_f + kappa_g);
  const double h = s * (s - kappa) * (s - kappa_f) * (s - kappa_g);
  if (h < 0.0) {
    t.status = TriangleStatus::no_triangle;
    return t;
  }
  if (h == 0.0) {
    t.status = TriangleStatus::degenerate;
    return t;
  }
  t.status = TriangleStatus::ok;
  t.area = std::sqrt(h);
  t.beta = std::acos(
      (kappa_f * kappa_f + kappa_g * kappa_g - kappa * kappa) /
      (2.0 * kappa_f * kappa_g));
  t.beta_f = std::acos(
      (kappa * kappa + kappa_g * kappa_g - kappa_f * kappa_f) /
      (2.0 * kappa * kappa_g));
  return t;
}

// I_{ll'} = (-1)^l' cos(l beta' + l' beta) / (2 pi Delta); zero when the
// sides cannot form a triangle, divergent when they are collinear.
inline double triple_bessel_closed(int l, int lp, double kappa, double kappa_f,
                                   double kappa_g) {
  const TransverseTriangle t = triangle_geometry(kappa, kappa_f, kappa_g);
  if (t.status == TriangleStatus::no_triangle) return 0.0;
  if (t.status == TriangleStatus::degenerate)
    throw std::domain_error("degenerate transverse triangle: integral diverges");
  const double sign = (lp & 1) ? -1.0 : 1.0;
  return sign * std::cos(l * t.beta_f + lp * t.beta) / (2.0 * pi * t.area);
}

// Reduced all-twisted S-matrix kernel: the factor multiplying the
// conserved-quantity delta functions and the normalization constants.
// Quantum numbers m, m', lambda, lambda' are doubled; m_gamma integer.
struct TwistedKernelArgs {
  int two_m = 1, two_mf = -1;
  int m_gamma = 1;
  int two_lambda = 1, two_lambda_f = 1;
  int lambda_gamma = 1;
  double energy = 0.0, energy_final = 0.0;
  double theta_p = 0.0, theta_pf = 0.0, theta_k = 0.0;
  double kappa = 0.0, kappa_f = 0.0, kappa_g = 0.0;
};

inline double s3tw_kernel(const TwistedKernelArgs& a) {
  if ((a.two_m - a.two_lambda) % 2 != 0 || (a.two_mf - a.two_lambda_f) % 2 != 0)
    throw std::domain_error("m - lambda must be an integer");
  // TAM conservation m = m' + m_gamma; violated -> exact zero
  if (a.two_m != a.two_mf + 2 * a.m_gamma) return 0.0;
  const double m_e = electron_mass_ev;
  if (a.energy < m_e || a.energy_final < m_e)
    throw std::domain_error("electron energy below rest mass");
  const double bracket =
      a.two_lambda * std::sqrt((a.energy - m_e) * (a.energy_final + m_e)) +
      a.two_lambda_f * std::sqrt((a.energy_final - m_e) * (a.energy + m_e));
  const WignerDHalf dp(a.theta_p);
  const WignerDHalf dpf(a.theta_pf);
  const WignerDOne dk(a.theta_k);
  double sum = 0.0;
  for (int two_s = -1; two_s <= 1; two_s += 2)
    for (int two_sf = -1; two_sf <= 1; two_sf += 2) {
      const int sg = (two_s - two_sf) / 2;
      const int l = (a.two_m - two_s) / 2;
      const int lf = (a.two_mf - two_sf) / 2;
      const double spin =
          two_s == two_sf ? static_cast<double>(two_s) : -std::sqrt(2.0) * two_s;
      sum += dp(two_s, a.two_lambda) * dpf(two_sf, a.two_lambda_f) *
             dk(sg, a.lambda_gamma) *
             triple_bessel_closed(l, lf, a.kappa, a.kappa_f, a.kappa_g) * spin;
    }
  return bracket * std::sqrt(a.kappa * a.kappa_f * a.kappa_g) * sum;
}

} // namespace vch
