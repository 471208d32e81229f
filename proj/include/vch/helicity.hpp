#pragma once

#include <cmath>
#include <complex>

#include "vch/dirac.hpp"
#include "vch/kinematics.hpp"
#include "vch/wigner.hpp"

// Fully polarized plane-wave amplitudes in the helicity basis, with the
// z axis along the initial electron. Helicities are passed as doubled
// integers: 2*lambda in {-1,+1} for electrons, lambda_gamma in {-1,+1}
// for the photon.

namespace vch {

// Photon spin-projection basis vectors chi_0, chi_{+-1} (spatial part).
inline FourVector chi_vector(int sigma_gamma) {
  const double inv_sqrt2 = 0.70710678118654752440;
  FourVector v;
  switch (sigma_gamma) {
    case 0: v.z = 1.0; break;
    case 1: v.x = -inv_sqrt2; v.y = cplx(0.0, -inv_sqrt2); break;
    case -1: v.x = inv_sqrt2; v.y = cplx(0.0, -inv_sqrt2); break;
    default: throw std::domain_error("photon spin projection in {-1,0,+1}");
  }
  return v;
}

// Helicity polarization vector for photon direction (theta_k, phi_k).
inline FourVector polarization_vector(double theta_k, double phi_k,
                                      int lambda_gamma) {
  const WignerDOne d(theta_k);
  FourVector e;
  for (int sg = -1; sg <= 1; ++sg) {
    const cplx phase = std::exp(cplx(0.0, -sg * phi_k));
    const cplx w = phase * d(sg, lambda_gamma);
    const FourVector chi = chi_vector(sg);
    e.x += w * chi.x;
    e.y += w * chi.y;
    e.z += w * chi.z;
  }
  return e;
}

// Linear basis: e_par in the (z, k) scattering plane, e_perp orthogonal.
inline FourVector polarization_parallel(double theta_k, double phi_k) {
  FourVector e;
  e.x = std::cos(theta_k) * std::cos(phi_k);
  e.y = std::cos(theta_k) * std::sin(phi_k);
  e.z = -std::sin(theta_k);
  return e;
}

inline FourVector polarization_perpendicular(double phi_k) {
  FourVector e;
  e.x = -std::sin(phi_k);
  e.y = std::cos(phi_k);
  return e;
}

// W^{(sigma sigma' sigma_gamma)} of the bispinor contraction
// Ubar (gamma . chi*) U; real in this basis.
inline double w_factor(double energy, double energy_final, int two_lambda,
                       int two_lambda_f, int two_sigma, int two_sigma_f,
                       int sigma_gamma) {
  if (sigma_gamma != (two_sigma - two_sigma_f) / 2 ||
      (two_sigma - two_sigma_f) % 2 != 0)
    return 0.0;
  if (energy < electron_mass_ev || energy_final < electron_mass_ev)
    throw std::domain_error("electron energy below rest mass");
  const double m = electron_mass_ev;
  const double bracket =
      two_lambda * std::sqrt((energy - m) * (energy_final + m)) +
      two_lambda_f * std::sqrt((energy_final - m) * (energy + m));
  const double spin = two_sigma == two_sigma_f
                          ? static_cast<double>(two_sigma)
                          : -std::sqrt(2.0) * two_sigma;
  return bracket * spin;
}

// On-cone kinematics for photon emission by an electron moving along z.
struct ConeKinematics {
  double energy = 0.0;       // E
  double energy_final = 0.0; // E' = E - omega
  double omega = 0.0;
  double theta_k = 0.0;  // Cherenkov angle
  double theta_pf = 0.0; // polar angle of the final electron
  double phi_k = 0.0;    // photon azimuth; final electron at phi_k + pi

  static ConeKinematics from(const ElectronState& e, const Medium& med,
                             double omega, double phi_k = 0.0) {
    ConeKinematics ck;
    ck.energy = e.total_energy;
    ck.energy_final = final_electron_energy(e, omega);
    ck.omega = omega;
    ck.theta_k = cherenkov_angle(e, med, omega);
    ck.phi_k = phi_k;
    const double kn = omega * med.refraction_index;
    const double pz = e.momentum() - kn * std::cos(ck.theta_k);
    ck.theta_pf = std::atan2(kn * std::sin(ck.theta_k), pz);
    return ck;
  }
};

// Helicity amplitude M_fi with theta_p = 0 (z along the initial
// electron). Units: eV times sqrt(4 pi alpha).
inline cplx amplitude_pw(const ConeKinematics& kin, int two_lambda,
                         int two_lambda_f, int lambda_gamma) {
  const double m = electron_mass_ev;
  const double E = kin.energy;
  const double Ef = kin.energy_final;
  if (E < m || Ef < m) throw std::domain_error("off-shell kinematics");
  const double bracket =
      std::sqrt((E - m) * (Ef + m)) +
      two_lambda * two_lambda_f * std::sqrt((Ef - m) * (E + m));
  const WignerDHalf dpf(kin.theta_pf);
  const WignerDOne dk(kin.theta_k);
  cplx sum{};
  for (int two_sf = -1; two_sf <= 1; two_sf += 2) {
    const int dg = (two_lambda - two_sf) / 2; // photon spin projection index
    const cplx phase = std::exp(cplx(0.0, pi * 0.5 * two_sf));
    const double spin = two_lambda == two_sf ? 1.0 : -std::sqrt(2.0);
    sum += phase * dpf(two_sf, two_lambda_f) * dk(dg, lambda_gamma) * spin;
  }
  const cplx outer = std::exp(cplx(0.0, 0.5 * two_lambda * kin.phi_k));
  return -std::sqrt(4.0 * pi * alpha_fs) * bracket * outer * sum;
}

// General-kinematics amplitude (initial electron at (theta_p, phi_p)),
// the double sum over intermediate spin projections.
inline cplx amplitude_general(double energy, double energy_final,
                              double theta_p, double phi_p, double theta_pf,
                              double phi_pf, double theta_k, double phi_k,
                              int two_lambda, int two_lambda_f,
                              int lambda_gamma) {
  const WignerDHalf dp(theta_p);
  const WignerDHalf dpf(theta_pf);
  const WignerDOne dk(theta_k);
  cplx sum{};
  for (int two_s = -1; two_s <= 1; two_s += 2)
    for (int two_sf = -1; two_sf <= 1; two_sf += 2) {
      const int sg = (two_s - two_sf) / 2;
      const double w = w_factor(energy, energy_final, two_lambda, two_lambda_f,
                                two_s, two_sf, sg);
      if (w == 0.0) continue;
      const cplx phase = std::exp(
          cplx(0.0, 0.5 * two_sf * phi_pf + sg * phi_k - 0.5 * two_s * phi_p));
      sum += phase * dp(two_s, two_lambda) * dpf(two_sf, two_lambda_f) *
             dk(sg, lambda_gamma) * w;
    }
  return -std::sqrt(4.0 * pi * alpha_fs) * sum;
}

// Surviving amplitude at the spectral cut-off (strictly forward final
// state): helicity flip, lambda' = -lambda, lambda_gamma = 2 lambda.
inline cplx forward_flip_amplitude(double energy, double energy_final,
                                   int two_lambda, double phi_k) {
  const double m = electron_mass_ev;
  if (energy < m || energy_final < m)
    throw std::domain_error("electron energy below rest mass");
  const double bracket = std::sqrt((energy - m) * (energy_final + m)) -
                         std::sqrt((energy_final - m) * (energy + m));
  const cplx phase = std::exp(cplx(0.0, 0.5 * two_lambda * (phi_k - pi)));
  return std::sqrt(8.0 * pi * alpha_fs) * bracket * phase;
}

// Helicity-averaged squared amplitude 4 pi alpha (4 |p.e|^2 + k^2 e*.e).
inline double unpolarized_square(const FourVector& p, const FourVector& pf,
                                 const FourVector& k, const FourVector& e) {
  (void)pf; // fixed by conservation; kept for the call-site contract
  const cplx pe = minkowski_dot(p, e);
  const cplx k2 = minkowski_dot(k, k);
  FourVector estar{std::conj(e.t), std::conj(e.x), std::conj(e.y),
                   std::conj(e.z)};
  const cplx ee = minkowski_dot(estar, e);
  return 4.0 * pi * alpha_fs *
         std::real(4.0 * pe * std::conj(pe) + k2 * ee);
}

} // namespace vch
