#pragma once

#include <cmath>
#include <stdexcept>

// Wigner d-matrices for j = 1/2 and j = 1 in their standard closed
// forms. Half-integer projections are handled as doubled integers
// (2*sigma in {-1, +1}) so index arithmetic stays exact.

namespace vch {

inline void require_polar_range(double theta) {
  if (theta < 0.0 || theta > 3.14159265358979323846 + 1e-12)
    throw std::domain_error("rotation angle must lie in [0, pi]");
}

// d^{1/2}_{sigma lambda}(theta), indices passed as doubled (+-1).
struct WignerDHalf {
  double c = 1.0, s = 0.0; // cos(theta/2), sin(theta/2)

  explicit WignerDHalf(double theta) {
    require_polar_range(theta);
    c = std::cos(0.5 * theta);
    s = std::sin(0.5 * theta);
  }

  double operator()(int two_sigma, int two_lambda) const {
    if ((two_sigma != 1 && two_sigma != -1) ||
        (two_lambda != 1 && two_lambda != -1))
      throw std::domain_error("spin-1/2 projections must be +-1 (doubled)");
    if (two_sigma == two_lambda) return c;
    return two_sigma > two_lambda ? -s : s;
  }
};

// d^1_{sigma lambda}(theta), indices in {-1, 0, +1}.
struct WignerDOne {
  double ct = 1.0, st = 0.0;

  explicit WignerDOne(double theta) {
    require_polar_range(theta);
    ct = std::cos(theta);
    st = std::sin(theta);
  }

  double operator()(int sigma, int lambda) const {
    if (sigma < -1 || sigma > 1 || lambda < -1 || lambda > 1)
      throw std::domain_error("spin-1 projections must be in {-1, 0, +1}");
    const double inv_sqrt2 = 0.70710678118654752440;
    if (sigma == 0 && lambda == 0) return ct;
    if (sigma == 0) return lambda * st * inv_sqrt2; // d_{0,+-1}
    if (lambda == 0) return -sigma * st * inv_sqrt2; // d_{+-1,0}
    if (sigma == lambda) return 0.5 * (1.0 + ct);
    return 0.5 * (1.0 - ct);
  }
};

} // namespace vch
