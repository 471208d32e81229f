#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "vch/dirac.hpp"
#include "vch/helicity.hpp"
#include "vch/vortex.hpp"

// Independent numerical ground truth used by the tests and the
// validation runner: Monte-Carlo azimuthal averaging, gamma-matrix
// traces, damped oscillatory quadrature, and singularity-aware angular
// integration. Nothing here shares code with the closed forms it checks.

namespace vch::oracles {

inline constexpr std::uint64_t default_seed = 0xC4E7;

// SplitMix64: tiny, fully specified, identical on every platform.
struct SplitMix64 {
  std::uint64_t state = default_seed;

  explicit SplitMix64(std::uint64_t seed = default_seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform() { return (next() >> 11) * 0x1.0p-53; } // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// ---------------------------------------------------------------------
// Quadrature

// Chebyshev-Gauss weighted mean over the annulus: the substitution
// x = cos(theta_k) turns F sin(theta_k) d(theta_k) into the Chebyshev
// weight exactly, so the endpoint singularity is handled by the nodes.
inline double annulus_integral(const std::function<double(double)>& f,
                               double theta_p, double theta_0, int nodes = 64) {
  const double a = std::cos(theta_p + theta_0);
  const double b = std::cos(theta_p - theta_0);
  double sum = 0.0;
  for (int i = 1; i <= nodes; ++i) {
    const double t = std::cos((2.0 * i - 1.0) * pi / (2.0 * nodes));
    const double x = 0.5 * (a + b) + 0.5 * (b - a) * t;
    sum += f(std::acos(std::clamp(x, -1.0, 1.0)));
  }
  return sum / nodes;
}

// Double-exponential (tanh-sinh) quadrature on (a, b); tolerates
// integrable endpoint singularities. Generic route, independent of the
// Chebyshev substitution above.
inline double tanh_sinh_integral(const std::function<double(double)>& f,
                                 double a, double b, int levels = 12) {
  const double half = 0.5 * (b - a);
  const double tmax = 6.5;
  // node_sum(t) covers the symmetric pair +-t (once for t = 0). The
  // abscissae are built from the exact distance to the nearer endpoint,
  // half*(1 - tanh u), so integrable endpoint singularities keep full
  // precision; non-finite integrand values at unresolvable points are
  // dropped.
  auto node_sum = [&](double t) {
    const double u = 0.5 * pi * std::sinh(t);
    const double ch = std::cosh(u);
    const double w = 0.5 * pi * std::cosh(t) / (ch * ch);
    const double dist = half * 2.0 / (std::exp(2.0 * u) + 1.0);
    double s = 0.0;
    const double xa = a + dist;
    if (dist > 0.0 && xa > a && xa < b) {
      const double v = f(xa);
      if (std::isfinite(v)) s += v * w;
    }
    const double xb = b - dist;
    if (t > 0.0 && dist > 0.0 && xb > a && xb < b) {
      const double v = f(xb);
      if (std::isfinite(v)) s += v * w;
    }
    return s;
  };
  double h = 1.0;
  double total = node_sum(0.0);
  for (double t = h; t <= tmax; t += h) total += node_sum(t);
  double prev = h * half * total;
  for (int level = 1; level < levels; ++level) {
    h *= 0.5;
    for (double t = h; t <= tmax; t += 2.0 * h) total += node_sum(t);
    const double val = h * half * total;
    if (level > 3 && std::abs(val - prev) < 1e-13 * std::abs(val) + 1e-300)
      return val;
    prev = val;
  }
  return prev;
}

// ---------------------------------------------------------------------
// Bessel J of integer order, fast enough for millions of tail
// evaluations: Stokes asymptotics for large argument, std::cyl_bessel_j
// otherwise.

inline double bessel_j_asymptotic(int n, double x) {
  const double mu = 4.0 * n * n;
  double p = 1.0, q = 0.0;
  double ak = 1.0;
  for (int k = 1; k <= 10; ++k) {
    const double odd = 2.0 * k - 1.0;
    ak *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(ak) < 1e-18) break;
    const int m = k / 2;
    const double sign = (m & 1) ? -1.0 : 1.0;
    if (k & 1)
      q += sign * ak;
    else
      p += sign * ak;
  }
  const double chi = x - (0.5 * n + 0.25) * pi;
  return std::sqrt(2.0 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

inline double bessel_j(int n, double x) {
  const int an = std::abs(n);
  const double sign = (n < 0 && (an & 1)) ? -1.0 : 1.0; // J_{-n} = (-1)^n J_n
  if (x > 40.0 + an * an) return sign * bessel_j_asymptotic(an, x);
  return sign * std::cyl_bessel_j(static_cast<double>(an), x);
}

// ---------------------------------------------------------------------
// Damped oscillatory quadrature for the triple-Bessel radial integral.

struct DampedResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};

// integral of J_l(k1 r) J_l'(k2 r) J_{l-l'}(k3 r) r exp(-eps r) dr on
// [0, 50/eps], composite Gauss-Legendre with oscillation-scaled panels.
inline double damped_triple_bessel(int l, int lp, double k1, double k2,
                                   double k3, double eps) {
  static const double gl_x[5] = {0.1488743389816312, 0.4333953941292472,
                                 0.6794095682990244, 0.8650633666889845,
                                 0.9739065285171717};
  static const double gl_w[5] = {0.2955242247147529, 0.2692667193099963,
                                 0.2190863625159820, 0.1494513491505806,
                                 0.0666713443086881};
  const double R = 50.0 / eps;
  const double ksum = k1 + k2 + k3;
  const double h = std::min(1.5 / ksum, R / 16.0);
  const long panels = static_cast<long>(std::ceil(R / h));
  const double hh = R / panels;
  auto f = [&](double r) {
    return bessel_j(l, k1 * r) * bessel_j(lp, k2 * r) *
           bessel_j(l - lp, k3 * r) * r * std::exp(-eps * r);
  };
  double sum = 0.0;
  for (long i = 0; i < panels; ++i) {
    const double c = (i + 0.5) * hh;
    double ps = 0.0;
    for (int j = 0; j < 5; ++j)
      ps += gl_w[j] * (f(c - 0.5 * hh * gl_x[j]) + f(c + 0.5 * hh * gl_x[j]));
    sum += ps * 0.5 * hh;
  }
  return sum;
}

// Extrapolates the damped integrals to eps -> 0 by repeated Aitken
// delta^2 over a geometric eps schedule.
inline DampedResult damped_quadrature_oracle(int l, int lp, double k1,
                                             double k2, double k3,
                                             int schedule_len = 7) {
  const double em = std::max({k1, k2, k3});
  std::vector<double> vals;
  for (int i = 0; i < schedule_len; ++i)
    vals.push_back(damped_triple_bessel(l, lp, k1, k2, k3,
                                        1e-2 * em / std::pow(2.0, i)));
  DampedResult out;
  std::vector<double> v = vals;
  while (v.size() >= 3) {
    std::vector<double> next;
    for (std::size_t i = 0; i + 2 < v.size(); ++i) {
      const double d1 = v[i + 1] - v[i];
      const double d2 = v[i + 2] - v[i + 1];
      const double den = d2 - d1;
      if (den == 0.0) {
        next.push_back(v[i + 2]);
        continue;
      }
      next.push_back(v[i + 2] - d2 * d2 / den);
    }
    out.error_estimate = std::abs(next.back() - v.back());
    v = next;
  }
  out.value = v.back();
  const double scale = std::max(std::abs(out.value), 1e-30);
  out.converged = out.error_estimate < 1e-3 * scale + 1e-12;
  return out;
}

// ---------------------------------------------------------------------
// Gamma-matrix trace oracle: 4 pi alpha * (1/2) Tr[(p-hat + m) e-hat
// (p'-hat + m) e-hat*], evaluated component by component.

inline double trace_oracle(const FourVector& p, const FourVector& pf,
                           const FourVector& k, const FourVector& e) {
  (void)k;
  const Mat4 pm = feynman_slash(p) + scaled(identity_mat4(), electron_mass_ev);
  const Mat4 pfm =
      feynman_slash(pf) + scaled(identity_mat4(), electron_mass_ev);
  const FourVector estar{std::conj(e.t), std::conj(e.x), std::conj(e.y),
                         std::conj(e.z)};
  const Mat4 prod =
      pm * feynman_slash(e) * pfm * feynman_slash(estar);
  return 4.0 * pi * alpha_fs * 0.5 * std::real(trace(prod));
}

// Levi-Civita contraction -8 pi alpha i m eps_{mu nu alpha beta}
// e*^mu e^nu k^alpha a^beta with eps_{0123} = +1 (so eps^{0123} = -1);
// the sign convention is anchored numerically against the
// helicity-amplitude route for the spin-flip term.
inline double levi_civita_spin_term(const FourVector& e, const FourVector& k,
                                    const FourVector& a) {
  const FourVector estar{std::conj(e.t), std::conj(e.x), std::conj(e.y),
                         std::conj(e.z)};
  auto comp = [](const FourVector& v, int i) {
    switch (i) {
      case 0: return v.t;
      case 1: return v.x;
      case 2: return v.y;
      default: return v.z;
    }
  };
  cplx sum{};
  int idx[4] = {0, 1, 2, 3};
  // sum over all permutations with their signs
  std::sort(idx, idx + 4);
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (idx[i] > idx[j]) ++inv;
    const double sign = (inv & 1) ? -1.0 : 1.0;
    sum += sign * comp(estar, idx[0]) * comp(e, idx[1]) * comp(k, idx[2]) *
           comp(a, idx[3]);
  } while (std::next_permutation(idx, idx + 4));
  const cplx val = cplx(0.0, 8.0 * pi * alpha_fs * electron_mass_ev) * sum;
  return std::real(val);
}

// ---------------------------------------------------------------------
// Monte-Carlo azimuthal-averaging oracle: samples the plane-wave cone
// azimuth and compares the resulting theta_k histogram with F sin(theta).

struct HistogramComparison {
  std::vector<double> edges;        // bin edges [rad]
  std::vector<long> counts;         // observed
  std::vector<double> expected;     // expected counts per bin
  std::vector<double> z_scores;     // per-bin normal z
  double sup_norm = 0.0;            // smoothed relative deviation
  double max_abs_z = 0.0;
  long total = 0;
};

// Exact probability of theta_k in [lo, hi] under the F sin(theta) pdf.
inline double annulus_bin_probability(double lo, double hi, double theta_p,
                                      double theta_0) {
  const double a = std::cos(theta_p + theta_0);
  const double b = std::cos(theta_p - theta_0);
  auto cdf_at = [&](double theta) { // P(theta_k <= theta)
    const double x = std::clamp(std::cos(theta), a, b);
    // integral of F sin = (1/pi) [pi/2 - arcsin((2x - a - b)/(b - a))]
    return 0.5 - std::asin((2.0 * x - a - b) / (b - a)) / pi;
  };
  return cdf_at(hi) - cdf_at(lo);
}

inline HistogramComparison mc_angular_oracle(double theta_p, double theta_0,
                                             long n_samples,
                                             std::uint64_t seed = default_seed,
                                             int n_bins = 60) {
  if (n_samples < 10000)
    throw std::domain_error("need at least 1e4 samples");
  SplitMix64 rng(seed);
  HistogramComparison h;
  h.total = n_samples;
  const AnnulusGeometry ann(theta_p, theta_0);
  // histogram over the full polar range so out-of-annulus leakage and
  // backward emission are visible
  const double lo = std::max(0.0, ann.theta_min - 0.1 * theta_0);
  const double hi = std::min(pi, ann.theta_max + 0.1 * theta_0);
  h.edges.resize(n_bins + 1);
  for (int i = 0; i <= n_bins; ++i)
    h.edges[i] = lo + (hi - lo) * i / n_bins;
  h.counts.assign(n_bins, 0);
  const double ctp = std::cos(theta_p), stp = std::sin(theta_p);
  const double ct0 = std::cos(theta_0), st0 = std::sin(theta_0);
  for (long s = 0; s < n_samples; ++s) {
    (void)rng.uniform(0.0, 2.0 * pi); // phi_p; theta_k does not depend on it
    const double psi = rng.uniform(0.0, 2.0 * pi);
    const double ctk = ctp * ct0 - stp * st0 * std::cos(psi);
    const double theta_k = std::acos(std::clamp(ctk, -1.0, 1.0));
    const int bin = static_cast<int>((theta_k - lo) / (hi - lo) * n_bins);
    if (bin >= 0 && bin < n_bins) ++h.counts[bin];
  }
  h.expected.resize(n_bins);
  h.z_scores.resize(n_bins);
  for (int i = 0; i < n_bins; ++i) {
    double p = 0.0;
    const double blo = h.edges[i], bhi = h.edges[i + 1];
    if (bhi > ann.theta_min && blo < ann.theta_max)
      p = annulus_bin_probability(std::max(blo, ann.theta_min),
                                  std::min(bhi, ann.theta_max), theta_p,
                                  theta_0);
    h.expected[i] = p * n_samples;
    const double var = n_samples * p * (1.0 - p);
    h.z_scores[i] =
        var > 0.0 ? (h.counts[i] - h.expected[i]) / std::sqrt(var)
                  : (h.counts[i] == 0 ? 0.0 : 1e9);
    h.max_abs_z = std::max(h.max_abs_z, std::abs(h.z_scores[i]));
  }
  // smoothed relative deviation: 5-bin moving average of (obs/exp - 1)
  // over bins with meaningful statistics
  for (int i = 0; i < n_bins; ++i) {
    double acc = 0.0;
    int used = 0;
    for (int j = std::max(0, i - 2); j <= std::min(n_bins - 1, i + 2); ++j) {
      if (h.expected[j] < 100.0) continue;
      acc += h.counts[j] / h.expected[j] - 1.0;
      ++used;
    }
    if (used == 5)
      h.sup_norm = std::max(h.sup_norm, std::abs(acc / used));
  }
  return h;
}

// Two-root evaluation of <|p.e|^2> (oracle path for the K-based closed
// form): averages the explicit phi_p = phi_k +- delta contributions.
inline double mean_p_dot_e_sq_roots(double p_mag, double theta_p,
                                    double theta_k, double phi_k, double delta,
                                    bool parallel) {
  double acc = 0.0;
  for (int sgn = -1; sgn <= 1; sgn += 2) {
    const double phi_p = phi_k + sgn * delta;
    const double px = p_mag * std::sin(theta_p) * std::cos(phi_p);
    const double py = p_mag * std::sin(theta_p) * std::sin(phi_p);
    const double pz = p_mag * std::cos(theta_p);
    double ex, ey, ez;
    if (parallel) {
      ex = std::cos(theta_k) * std::cos(phi_k);
      ey = std::cos(theta_k) * std::sin(phi_k);
      ez = -std::sin(theta_k);
    } else {
      ex = -std::sin(phi_k);
      ey = std::cos(phi_k);
      ez = 0.0;
    }
    const double dot = px * ex + py * ey + pz * ez;
    acc += dot * dot;
  }
  return 0.5 * acc;
}

} // namespace vch::oracles
