#pragma once

#include <numbers>

// Natural units (hbar = c = 1); all energies and momenta in eV,
// angles in radians. Rate densities are quoted in units of the
// fine-structure constant alpha.

namespace vch {

inline constexpr double electron_mass_ev = 510998.9461;
inline constexpr double alpha_fs = 1.0 / 137.035999;

inline constexpr double pi = std::numbers::pi;

inline constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

} // namespace vch
