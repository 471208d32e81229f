#pragma once

#include <array>
#include <cmath>

#include "vch/kinematics.hpp"

// Plane-wave electron observables: spectral and spectral-angular
// densities, the quantum correction, the cut-off step, and the
// linear/circular polarization degrees. All rate densities are
// returned in units of alpha.

namespace vch {

struct PolarizedRatePair {
  double parallel = 0.0;      // photon polarized in the scattering plane
  double perpendicular = 0.0; // orthogonal to it

  double total() const { return parallel + perpendicular; }
};

// zeta = twice the mean electron spin in its rest frame; z axis along p.
struct SpinVector {
  double x = 0.0, y = 0.0, z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double mean_helicity() const { return 0.5 * z; }
};

struct SpectralValue {
  double value = 0.0;
  bool above_cutoff = false;
};

// Frank-Tamm: v [1 - 1/(vn)^2], frequency-independent for constant n.
inline double classical_frank_tamm(const ElectronState& e, const Medium& med) {
  require_radiating(e, med);
  const double vn = e.velocity * med.refraction_index;
  return e.velocity * (1.0 - 1.0 / (vn * vn));
}

// Relative size of the quantum corrections; dGamma_pw = dGamma_cl (1 - eta).
inline double quantum_correction_eta(const ElectronState& e, const Medium& med,
                                     double omega) {
  require_radiating(e, med);
  const double n = med.refraction_index;
  const double E = e.total_energy;
  const double vn2 = e.velocity * e.velocity * n * n;
  return (omega / E) * (n * n - 1.0) / (vn2 - 1.0) -
         (omega * omega / (4.0 * E * E)) * (n * n * n * n - 1.0) / (vn2 - 1.0);
}

// Spectral density just below the cut-off (the step height).
inline double cutoff_spectral_density(const ElectronState& e,
                                      const Medium& med) {
  require_radiating(e, med);
  const double n = med.refraction_index;
  const double vn1 = e.velocity * n - 1.0;
  return (2.0 / e.velocity) * vn1 * vn1 / (n * n - 1.0);
}

// dGamma_pw/domega. Above the cut-off the density vanishes; the flag is
// set so spectrum sweeps can show the discontinuity.
inline SpectralValue spectral_density_pw(const ElectronState& e,
                                         const Medium& med, double omega) {
  require_radiating(e, med);
  if (omega >= cutoff_frequency(e, med)) return {0.0, true};
  const double n = med.refraction_index;
  const double E = e.total_energy;
  const double v = e.velocity;
  const double val = (1.0 / (v * n * n)) *
                     (v * v * n * n - 1.0 - (omega / E) * (n * n - 1.0) +
                      (omega * omega / (4.0 * E * E)) * (n * n * n * n - 1.0));
  return {val, false};
}

// dGamma_pw/domega dphi_k split by linear polarization.
inline PolarizedRatePair spectral_angular_pw(const ElectronState& e,
                                             const Medium& med, double omega) {
  const double ct = cos_cherenkov_angle(e, med, omega);
  const double st2 = (1.0 - ct) * (1.0 + ct);
  const double n = med.refraction_index;
  const double E = e.total_energy;
  const double v = e.velocity;
  const double p2 = v * v * E * E;
  const double shared = omega * omega * (n * n - 1.0) / (4.0 * v * E * E);
  PolarizedRatePair r;
  r.parallel = (p2 * st2 / (v * E * E) + shared) / (2.0 * pi);
  r.perpendicular = shared / (2.0 * pi);
  return r;
}

// d in Eq. for P_l: the ratio of the spin-flip to the in-plane term.
inline double polarization_d_factor(const ElectronState& e, const Medium& med,
                                    double omega) {
  const double ct = cos_cherenkov_angle(e, med, omega);
  const double st2 = (1.0 - ct) * (1.0 + ct);
  const double n = med.refraction_index;
  const double q = omega / (e.velocity * e.total_energy);
  return 0.5 * q * q * (n * n - 1.0) / st2; // +inf at the cut-off
}

// P_l = 1/(1+d); returns the limit value 0 at the cut-off.
inline double linear_polarization_pw(const ElectronState& e, const Medium& med,
                                     double omega) {
  const double ct = cos_cherenkov_angle(e, med, omega);
  const double st2 = (1.0 - ct) * (1.0 + ct);
  const double n = med.refraction_index;
  const double q = omega / (e.velocity * e.total_energy);
  const double flip = 0.5 * q * q * (n * n - 1.0);
  return st2 / (st2 + flip);
}

// Spin-dependent extra term in |M_fi|^2 for a circularly polarized photon,
// in units of 8 pi alpha omega E (the helicity sign lambda_gamma included).
inline double spin_term_delta_M2(const ElectronState& e, const Medium& med,
                                 double omega, const SpinVector& zeta,
                                 int lambda_gamma, double phi_k) {
  if (zeta.norm() > 1.0 + 1e-12)
    throw std::domain_error("|zeta| must not exceed 1");
  if (lambda_gamma != 1 && lambda_gamma != -1)
    throw std::domain_error("photon helicity must be +1 or -1");
  const double ct = cos_cherenkov_angle(e, med, omega);
  const double st = std::sqrt((1.0 - ct) * (1.0 + ct));
  const double vn = e.velocity * med.refraction_index;
  // zeta_perp . k / (n omega) = sin(theta_0) (zeta_x cos phi + zeta_y sin phi)
  const double zeta_perp_khat =
      st * (zeta.x * std::cos(phi_k) + zeta.y * std::sin(phi_k));
  const double bracket = zeta.z * (vn - ct) -
                         (electron_mass_ev / e.total_energy) * zeta_perp_khat;
  return lambda_gamma * bracket;
}

// Degree of circular polarization for an electron with polarization zeta.
// Written so that the cut-off limit (sin theta_0 -> 0) stays finite.
inline double circular_polarization_pw(const ElectronState& e,
                                       const Medium& med, double omega,
                                       const SpinVector& zeta, double phi_k) {
  if (zeta.norm() > 1.0 + 1e-12)
    throw std::domain_error("|zeta| must not exceed 1");
  const double ct = cos_cherenkov_angle(e, med, omega);
  const double st2 = (1.0 - ct) * (1.0 + ct);
  const double st = std::sqrt(st2);
  const double n = med.refraction_index;
  const double E = e.total_energy;
  const double v = e.velocity;
  const double zeta_perp_khat =
      st * (zeta.x * std::cos(phi_k) + zeta.y * std::sin(phi_k));
  const double bracket =
      zeta.z * (v * n - ct) - (electron_mass_ev / E) * zeta_perp_khat;
  const double q = omega / (v * E);
  const double flip = 0.5 * q * q * (n * n - 1.0); // = d * sin^2(theta_0)
  return (omega / (E * v * v)) * bracket / (st2 + flip);
}

} // namespace vch
