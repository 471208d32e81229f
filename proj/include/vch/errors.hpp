#pragma once

#include <stdexcept>
#include <string>

namespace vch {

// Thrown when the Cherenkov condition v*n > 1 is not met.
class NoRadiation : public std::domain_error {
public:
  explicit NoRadiation(const std::string& what)
      : std::domain_error(what) {}
};

// Thrown when the photon frequency exceeds the kinematic cut-off.
class AboveCutoff : public std::domain_error {
public:
  explicit AboveCutoff(const std::string& what)
      : std::domain_error(what) {}
};

// Photon direction outside the vortex emission annulus.
class OutsideAnnulus : public std::domain_error {
public:
  explicit OutsideAnnulus(const std::string& what)
      : std::domain_error(what) {}
};

} // namespace vch
