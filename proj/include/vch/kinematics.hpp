#pragma once

#include <cmath>
#include <string>

#include "vch/constants.hpp"
#include "vch/errors.hpp"

namespace vch {

// Guard for arccos arguments that drift slightly outside [-1, 1] from
// rounding; excursions beyond the tolerance are genuine domain errors.
inline double clamped_acos(double x, double tol = 1e-12) {
  if (x > 1.0) {
    if (x > 1.0 + tol) throw std::domain_error("acos argument " + std::to_string(x) + " > 1");
    x = 1.0;
  } else if (x < -1.0) {
    if (x < -1.0 - tol) throw std::domain_error("acos argument " + std::to_string(x) + " < -1");
    x = -1.0;
  }
  return std::acos(x);
}

// Relativistic electron, p = (E, p), v = |p|/E.
struct ElectronState {
  double total_energy = electron_mass_ev; // E [eV]
  double velocity = 0.0;                  // v, dimensionless

  double momentum() const { return velocity * total_energy; } // |p| [eV]

  static ElectronState from_kinetic(double kinetic_ev) {
    if (kinetic_ev < 0.0)
      throw std::domain_error("negative kinetic energy");
    ElectronState e;
    e.total_energy = kinetic_ev + electron_mass_ev;
    const double r = electron_mass_ev / e.total_energy;
    e.velocity = std::sqrt((1.0 - r) * (1.0 + r));
    return e;
  }

  static ElectronState from_velocity(double v) {
    if (v < 0.0 || v >= 1.0)
      throw std::domain_error("velocity must be in [0, 1)");
    ElectronState e;
    e.velocity = v;
    e.total_energy = electron_mass_ev / std::sqrt((1.0 - v) * (1.0 + v));
    return e;
  }
};

// Transparent medium with constant refraction index at the evaluation
// frequency. Dispersion n(omega) is the caller's business.
struct Medium {
  double refraction_index = 1.0;

  explicit Medium(double n) : refraction_index(n) {
    if (!(n > 0.0) || !std::isfinite(n))
      throw std::domain_error("refraction index must be finite and positive");
  }

  bool radiates(const ElectronState& e) const {
    return e.velocity * refraction_index > 1.0;
  }
};

// In-medium photon: |k| = omega*n, k^2 = -omega^2 (n^2 - 1).
struct PhotonKinematics {
  double frequency = 0.0; // omega [eV]
  double wavenumber = 0.0;
  double four_momentum_sq = 0.0;

  PhotonKinematics(double omega, const Medium& med)
      : frequency(omega),
        wavenumber(omega * med.refraction_index),
        four_momentum_sq(-omega * omega *
                         (med.refraction_index * med.refraction_index - 1.0)) {}
};

inline void require_radiating(const ElectronState& e, const Medium& med) {
  if (!med.radiates(e))
    throw NoRadiation("below Cherenkov threshold: v*n = " +
                      std::to_string(e.velocity * med.refraction_index));
}

// Maximal photon frequency allowed by energy-momentum conservation.
inline double cutoff_frequency(const ElectronState& e, const Medium& med) {
  require_radiating(e, med);
  const double n = med.refraction_index;
  return 2.0 * e.total_energy * (e.velocity * n - 1.0) / (n * n - 1.0);
}

inline double cos_cherenkov_angle(const ElectronState& e, const Medium& med,
                                  double omega) {
  require_radiating(e, med);
  const double n = med.refraction_index;
  const double vn = e.velocity * n;
  const double c =
      1.0 / vn + (omega / (2.0 * e.total_energy)) * (n * n - 1.0) / vn;
  if (c > 1.0 + 1e-12)
    throw AboveCutoff("frequency above spectral cut-off");
  return std::min(c, 1.0);
}

// Emission angle of the Cherenkov cone, 0 <= theta_0 < pi/2.
inline double cherenkov_angle(const ElectronState& e, const Medium& med,
                              double omega) {
  return std::acos(cos_cherenkov_angle(e, med, omega));
}

inline double final_electron_energy(const ElectronState& e, double omega) {
  if (omega >= e.total_energy - electron_mass_ev)
    throw std::domain_error("photon frequency exceeds electron kinetic energy");
  return e.total_energy - omega;
}

} // namespace vch
