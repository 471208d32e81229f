#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "vch/kinematics.hpp"
#include "vch/planewave.hpp"

// Bessel vortex electrons: the annular angular kernel F, the two-root
// azimuth delta, the polarization factor K, vortex spectral-angular
// densities, the two-state superposition asymmetry, and the matched
// "concentrator" regime.

namespace vch {

// Bessel electron with transverse momentum kappa, longitudinal p_z,
// total angular momentum projection m (half-integer, stored doubled)
// and helicity lambda.
struct VortexState {
  double kappa = 0.0; // [eV], > 0
  double pz = 0.0;    // [eV], > 0
  int two_m = 1;      // 2m, odd
  int two_lambda = 1; // 2*lambda in {-1, +1}

  VortexState(double kappa_, double pz_, int two_m_, int two_lambda_)
      : kappa(kappa_), pz(pz_), two_m(two_m_), two_lambda(two_lambda_) {
    if (!(kappa > 0.0) || !(pz > 0.0))
      throw std::domain_error("kappa and p_z must be positive");
    if (two_lambda != 1 && two_lambda != -1)
      throw std::domain_error("helicity must be +-1/2 (doubled +-1)");
    if ((two_m - two_lambda) % 2 != 0)
      throw std::domain_error("m - lambda must be an integer");
  }

  static VortexState from_angle(double energy, double theta_p, int two_m,
                                int two_lambda) {
    if (!(theta_p > 0.0) || !(theta_p < 0.5 * pi))
      throw std::domain_error("opening angle must be in (0, pi/2)");
    const double p = std::sqrt((energy - electron_mass_ev) *
                               (energy + electron_mass_ev));
    return {p * std::sin(theta_p), p * std::cos(theta_p), two_m, two_lambda};
  }

  double opening_angle() const { return std::atan2(kappa, pz); }
  double energy() const {
    return std::sqrt(kappa * kappa + pz * pz +
                     electron_mass_ev * electron_mass_ev);
  }
  ElectronState electron() const {
    ElectronState e;
    e.total_energy = energy();
    e.velocity = std::sqrt(kappa * kappa + pz * pz) / e.total_energy;
    return e;
  }
};

// Two vortex components with the same kappa and p_z; weights are
// normalized on construction.
struct SuperpositionState {
  VortexState base; // carries kappa, p_z, helicity; m of component 1
  int two_m2;
  double abs_c1 = 0.0, abs_c2 = 0.0;
  double dalpha = 0.0; // arg c2 - arg c1

  SuperpositionState(const VortexState& component1, int two_m2_, double c1_abs,
                     double c2_abs, double dalpha_)
      : base(component1), two_m2(two_m2_), dalpha(dalpha_) {
    if ((two_m2 - base.two_m) % 2 != 0 || two_m2 == base.two_m)
      throw std::domain_error("Delta m must be a nonzero integer");
    const double norm = std::hypot(c1_abs, c2_abs);
    if (!(norm > 0.0)) throw std::domain_error("weights must not both vanish");
    abs_c1 = c1_abs / norm;
    abs_c2 = c2_abs / norm;
  }

  int delta_m() const { return (two_m2 - base.two_m) / 2; }
};

// Emission annulus |theta_p - theta_0| < theta_k < theta_p + theta_0.
struct AnnulusGeometry {
  double theta_min = 0.0;
  double theta_max = 0.0;
  bool backward_emission = false;

  AnnulusGeometry(double theta_p, double theta_0)
      : theta_min(std::abs(theta_p - theta_0)),
        theta_max(theta_p + theta_0),
        backward_emission(theta_p + theta_0 > 0.5 * pi) {}

  bool contains(double theta_k) const {
    return theta_k > theta_min && theta_k < theta_max;
  }
  bool contains_closed(double theta_k, double tol = 1e-12) const {
    return theta_k >= theta_min - tol && theta_k <= theta_max + tol;
  }
};

// Azimuthal offset of the two plane-wave components that can emit into
// direction theta_k: phi_p = phi_k +- delta.
inline double delta_angle(double theta_k, double theta_p, double theta_0) {
  const AnnulusGeometry ann(theta_p, theta_0);
  if (!ann.contains_closed(theta_k))
    throw OutsideAnnulus("theta_k outside the emission annulus");
  const double num = std::cos(theta_0) - std::cos(theta_k) * std::cos(theta_p);
  return clamped_acos(num / (std::sin(theta_k) * std::sin(theta_p)), 1e-9);
}

// Angular kernel F, symmetric in its three arguments; zero outside the
// annulus and (integrably) divergent at its borders.
inline double F_kernel(double theta_k, double theta_p, double theta_0) {
  const double a = std::cos(theta_p + theta_0);
  const double b = std::cos(theta_p - theta_0);
  const double x = std::cos(theta_k);
  const double prod = (x - a) * (b - x);
  if (prod < 0.0) return 0.0;
  if (prod == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (pi * std::sqrt(prod));
}

// Kinematic modification of the linear polarization degree, in [-1, 1].
inline double K_factor(double theta_k, double theta_p, double theta_0) {
  const AnnulusGeometry ann(theta_p, theta_0);
  if (!ann.contains_closed(theta_k))
    throw OutsideAnnulus("theta_k outside the emission annulus");
  const double num = std::cos(theta_k) * std::cos(theta_0) - std::cos(theta_p);
  const double den = std::sin(theta_k) * std::sin(theta_0);
  const double r = num / den;
  return 2.0 * r * r - 1.0;
}

// P_l^tw = K / (1 + d) = K P_l^pw; negative values mean polarization
// orthogonal to the overall scattering plane.
inline double linear_polarization_tw(double theta_k, double theta_p,
                                     double theta_0, double d) {
  return K_factor(theta_k, theta_p, theta_0) / (1.0 + d);
}

// dGamma_tw/domega dOmega split by linear polarization (units of alpha,
// per unit omega and steradian).
inline PolarizedRatePair spectral_angular_tw(const VortexState& vs,
                                             const Medium& med, double omega,
                                             double theta_k) {
  const ElectronState e = vs.electron();
  const double theta_0 = cherenkov_angle(e, med, omega);
  const double theta_p = vs.opening_angle();
  const double F = F_kernel(theta_k, theta_p, theta_0);
  PolarizedRatePair r;
  if (F == 0.0) return r;
  if (std::isinf(F)) { // integrable border divergence
    r.parallel = r.perpendicular = F;
    return r;
  }
  const double K = K_factor(theta_k, theta_p, theta_0);
  const double n = med.refraction_index;
  const double E = e.total_energy;
  const double v = e.velocity;
  const double st0 = std::sin(theta_0);
  const double in_plane = v * v * st0 * st0; // <|p e|^2> / E^2 summed
  const double flip = omega * omega * (n * n - 1.0) / (4.0 * E * E);
  const double pref = F / (2.0 * pi * v);
  r.parallel = pref * (0.5 * in_plane * (1.0 + K) + flip);
  r.perpendicular = pref * (0.5 * in_plane * (1.0 - K) + flip);
  return r;
}

// Spectral density of the vortex electron; identical to the plane-wave
// result for matching (E, v) and independent of kappa and m.
inline SpectralValue spectral_density_tw(const VortexState& vs,
                                         const Medium& med, double omega) {
  return spectral_density_pw(vs.electron(), med, omega);
}

// Azimuthal factor Phi(phi_k) for a two-state superposition, normalized
// so that it integrates to 1 over phi_k.
inline double superposition_factor(double phi_k, double delta,
                                   const SuperpositionState& sup) {
  const int dm = sup.delta_m();
  const double A =
      2.0 * sup.abs_c1 * sup.abs_c2 * std::cos(delta * dm);
  return (1.0 + A * std::cos(dm * (phi_k - 0.5 * pi) + sup.dalpha)) /
         (2.0 * pi);
}

// Polarization-summed dGamma/domega dOmega for the superposition
// (units of alpha); carries the azimuthal asymmetry through Phi.
inline double spectral_angular_superposition(const SuperpositionState& sup,
                                             const Medium& med, double omega,
                                             double theta_k, double phi_k) {
  const ElectronState e = sup.base.electron();
  const double theta_0 = cherenkov_angle(e, med, omega);
  const double theta_p = sup.base.opening_angle();
  const double F = F_kernel(theta_k, theta_p, theta_0);
  if (F == 0.0) return 0.0;
  if (std::isinf(F)) return F; // integrable border divergence
  const double delta = delta_angle(theta_k, theta_p, theta_0);
  const double n = med.refraction_index;
  const double E = e.total_energy;
  const double v = e.velocity;
  const double st0 = std::sin(theta_0);
  const double bracket = v * st0 * st0 +
                         omega * omega * (n * n - 1.0) / (2.0 * v * E * E);
  return bracket * F * superposition_factor(phi_k, delta, sup);
}

// Matched case theta_p = theta_0: F over the full disk, ~1/theta_k near
// the axis.
inline double concentrator_kernel(double theta_k, double theta_0) {
  const double sh = std::sin(0.5 * theta_k);
  const double s0 = std::sin(theta_0);
  const double under = (s0 - sh) * (s0 + sh);
  if (under <= 0.0 || theta_k <= 0.0) return 0.0;
  return 1.0 / (2.0 * pi * sh * std::sqrt(under));
}

inline double concentrator_small_angle(double theta_k, double theta_0) {
  return 1.0 / (pi * std::sin(theta_0) * theta_k);
}

// Semiclassical point-charge-plus-magnetic-moment model; kept for
// comparison, the full treatment is m-independent.
inline double semiclassical_spectral(const ElectronState& e, const Medium& med,
                                     double omega, double m_oam) {
  const double cl = classical_frank_tamm(e, med);
  const double q = m_oam * omega * med.refraction_index /
                   (2.0 * e.total_energy * e.velocity);
  return cl * (1.0 + q * q);
}

} // namespace vch
