#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "vch/oracles.hpp"
#include "vch/planewave.hpp"
#include "vch/triple_bessel.hpp"
#include "vch/vortex.hpp"

// Self-contained validation runner: re-derives the documented worked
// examples and the cross-checks between independent computation routes.
// Used both by the `validate` CLI subcommand and by the acceptance
// test binary.

namespace vch::validation {

struct CheckResult {
  int criterion = 0;
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0; // relative unless abs_tolerance
  bool abs_tolerance = false;
  bool pass = false;
  bool informational = false;
};

struct CriterionTiming {
  int criterion = 0;
  double seconds = 0.0;
  double limit_seconds = 0.0; // 0 = no stated limit
  bool pass = true;
};

struct Report {
  std::vector<CheckResult> checks;
  std::vector<CriterionTiming> timings;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.informational && !c.pass) return false;
    for (const auto& t : timings)
      if (!t.pass) return false;
    return true;
  }
};

namespace detail {

inline void add(Report& r, int crit, const std::string& name, double computed,
                double expected, double tol, bool abs_tol = false,
                bool informational = false) {
  CheckResult c;
  c.criterion = crit;
  c.name = name;
  c.computed = computed;
  c.expected = expected;
  c.tolerance = tol;
  c.abs_tolerance = abs_tol;
  c.informational = informational;
  const double err = abs_tol ? std::abs(computed - expected)
                             : std::abs(computed - expected) /
                                   std::max(std::abs(expected), 1e-300);
  c.pass = informational || err <= tol;
  r.checks.push_back(c);
}

class Timer {
public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

inline void time_limit(Report& r, int crit, const Timer& t, double limit) {
  CriterionTiming ct;
  ct.criterion = crit;
  ct.seconds = t.seconds();
  ct.limit_seconds = limit;
  ct.pass = limit <= 0.0 || ct.seconds < limit;
  r.timings.push_back(ct);
}

} // namespace detail

// --- Criterion 1-3: worked plane-wave examples -------------------------

inline void check_example1(Report& r) {
  detail::Timer t;
  const auto e = ElectronState::from_velocity(0.9);
  const Medium med(1.46);
  const double omega = 2.25;
  const double vn1 = e.velocity * med.refraction_index - 1.0;
  const double dens = spectral_density_pw(e, med, omega).value;
  const double eta = quantum_correction_eta(e, med, omega);
  detail::time_limit(r, 1, t, 1e-3);
  detail::add(r, 1, "example1.vn_minus_1", vn1, 0.314, 0.005);
  detail::add(r, 1, "example1.spectral_density", dens, 0.38, 0.01);
  detail::add(r, 1, "example1.eta", eta, 3e-6, 0.20);
}

inline void check_example2(Report& r) {
  detail::Timer t;
  const auto e = ElectronState::from_velocity(0.685);
  const Medium med(1.45986);
  const double omega = 2.25;
  detail::add(r, 2, "example2.vn_minus_1",
              e.velocity * med.refraction_index - 1.0, 4.1e-6, 0.03);
  detail::add(r, 2, "example2.eta", quantum_correction_eta(e, med, omega),
              0.44, 0.02);
  detail::add(r, 2, "example2.spectral_density",
              spectral_density_pw(e, med, omega).value, 3.1e-6, 0.05);
  detail::add(r, 2, "example2.theta0_deg",
              rad_to_deg(cherenkov_angle(e, med, omega)), 0.12, 0.05);
  detail::add(r, 2, "example2.cutoff_ev", cutoff_frequency(e, med), 5.08,
              0.01);
  detail::add(r, 2, "example2.cutoff_density", cutoff_spectral_density(e, med),
              4.3e-11, 0.05);
  detail::time_limit(r, 2, t, 0.0);
}

inline void check_example3(Report& r) {
  detail::Timer t;
  const auto e = ElectronState::from_velocity(0.0202);
  const Medium med(50.0);
  const double omega = 2.25;
  detail::add(r, 3, "example3.vn_minus_1",
              e.velocity * med.refraction_index - 1.0, 0.01, 0.02);
  detail::add(r, 3, "example3.eta", quantum_correction_eta(e, med, omega),
              0.55, 0.02);
  detail::add(r, 3, "example3.spectral_density",
              spectral_density_pw(e, med, omega).value, 1.8e-4, 0.05);
  detail::add(r, 3, "example3.cutoff_ev", cutoff_frequency(e, med), 4.1, 0.03);
  // The quoted step height is not reproduced by the closed form (which
  // gives 3.96e-6 and agrees with the forward-amplitude route); kept as
  // stated so the discrepancy stays visible.
  detail::add(r, 3, "example3.cutoff_density", cutoff_spectral_density(e, med),
              1e-6, 0.10);
  detail::time_limit(r, 3, t, 0.0);
}

// --- Criterion 4: annulus kernel geometry --------------------------------------

inline void check_kernel_geometry(Report& r) {
  detail::Timer t;
  const auto e = ElectronState::from_kinetic(300e3);
  const Medium med(1.33);
  const double theta0 = cherenkov_angle(e, med, 2.25);
  detail::add(r, 4, "annulus.theta0_deg", rad_to_deg(theta0), 14.5, 0.005);
  for (double tp_deg : {10.0, 20.0, 30.0}) {
    const double tp = deg_to_rad(tp_deg);
    const double tk = std::acos(std::cos(tp) * std::cos(theta0));
    const double fmin = F_kernel(tk, tp, theta0);
    const double expect = 1.0 / (pi * std::sin(tp) * std::sin(theta0));
    detail::add(r, 4, "annulus.minF.thetap" + std::to_string(int(tp_deg)), fmin,
                expect, 1e-10);
  }
  detail::time_limit(r, 4, t, 0.0);
}

// --- Criterion 5: annulus normalization ---------------------------------

inline void check_normalization(Report& r, std::uint64_t seed) {
  detail::Timer t;
  oracles::SplitMix64 rng(seed ^ 0x5u);
  // weighted Chebyshev rule with F evaluated explicitly at the interior
  // nodes; the inverse-sqrt borders are absorbed by the node weights, so
  // the quadrature itself contributes < 1e-10
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double tp = rng.uniform(0.05, 1.5);
    const double t0 = rng.uniform(0.05, 1.5);
    const double a = std::cos(tp + t0), b = std::cos(tp - t0);
    const double val = oracles::annulus_integral(
        [&](double th) {
          const double x = std::cos(th);
          return F_kernel(th, tp, t0) * pi *
                 std::sqrt(std::max((x - a) * (b - x), 0.0));
        },
        tp, t0, 512);
    worst = std::max(worst, std::abs(val - 1.0));
  }
  detail::add(r, 5, "normalization.F_worst_deviation", worst, 0.0, 1e-8, true);

  double worst2 = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double tp = rng.uniform(0.05, 1.2);
    const double t0 = rng.uniform(0.05, 1.2);
    const AnnulusGeometry ann(tp, t0);
    const int dm = 1 + static_cast<int>(rng.uniform() * 5.0);
    const double c1 = rng.uniform(0.1, 0.9);
    const VortexState vs = VortexState::from_angle(
        electron_mass_ev * rng.uniform(1.2, 3.0), tp, 1, 1);
    const SuperpositionState sup(vs, 1 + 2 * dm, c1,
                                 std::sqrt(1.0 - c1 * c1),
                                 rng.uniform(0.0, 2.0 * pi));
    // 2D: theta via tanh-sinh, phi via periodic trapezoid
    const int nphi = 64;
    const double val = oracles::tanh_sinh_integral(
        [&](double th) {
          const double F = F_kernel(th, tp, t0);
          if (F == 0.0) return 0.0;
          const double d = delta_angle(th, tp, t0);
          double phi_avg = 0.0;
          for (int j = 0; j < nphi; ++j)
            phi_avg += superposition_factor(2.0 * pi * j / nphi, d, sup);
          return F * std::sin(th) * phi_avg * (2.0 * pi / nphi);
        },
        ann.theta_min, std::min(ann.theta_max, pi));
    worst2 = std::max(worst2, std::abs(val - 1.0));
  }
  detail::add(r, 5, "normalization.FPhi_worst_deviation", worst2, 0.0, 1e-6,
              true);
  detail::time_limit(r, 5, t, 1.0);
}

// --- Criterion 6: spectral identity -------------------------------------

inline void check_spectral_identity(Report& r, std::uint64_t seed) {
  detail::Timer t;
  oracles::SplitMix64 rng(seed ^ 0x6u);
  double worst_id = 0.0, worst_int = 0.0;
  for (int i = 0; i < 20; ++i) {
    double v, n;
    do {
      v = rng.uniform(0.1, 0.99);
      n = rng.uniform(1.05, 3.0);
    } while (v * n <= 1.02);
    const double tp = rng.uniform(0.05, 1.0);
    const auto pw = ElectronState::from_velocity(v);
    const VortexState vs =
        VortexState::from_angle(pw.total_energy, tp, 3, 1);
    const Medium med(n);
    const double omega =
        cutoff_frequency(vs.electron(), med) * rng.uniform(0.05, 0.95);
    const double dpw = spectral_density_pw(vs.electron(), med, omega).value;
    const double dtw = spectral_density_tw(vs, med, omega).value;
    worst_id = std::max(worst_id, std::abs(dtw - dpw) / dpw);

    const double t0 = cherenkov_angle(vs.electron(), med, omega);
    const AnnulusGeometry ann(tp, t0);
    const double integral = oracles::tanh_sinh_integral(
        [&](double th) {
          // phi-independent integrand: the azimuthal integral is 2 pi
          return spectral_angular_tw(vs, med, omega, th).total() *
                 std::sin(th) * 2.0 * pi;
        },
        ann.theta_min, std::min(ann.theta_max, pi));
    worst_int = std::max(worst_int, std::abs(integral - dpw) / dpw);
  }
  detail::add(r, 6, "spectral.tw_vs_pw_identity", worst_id, 0.0, 1e-12, true);
  detail::add(r, 6, "spectral.angular_integral", worst_int, 0.0, 1e-6, true);
  detail::time_limit(r, 6, t, 0.0);
}

// --- Criterion 7: polarization structure ---------------------------------

inline void check_polarization(Report& r, std::uint64_t seed) {
  detail::Timer t;
  oracles::SplitMix64 rng(seed ^ 0x7u);
  double worst_bound = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double tp = rng.uniform(0.05, 1.4);
    const double t0 = rng.uniform(0.05, 1.4);
    const AnnulusGeometry ann(tp, t0);
    const double tk =
        rng.uniform(ann.theta_min + 1e-9,
                    std::min(ann.theta_max, pi) - 1e-9);
    const double K = K_factor(tk, tp, t0);
    worst_bound = std::max(worst_bound, std::abs(K) - 1.0);
  }
  detail::add(r, 7, "polarization.K_bound_excess", worst_bound, 0.0, 1e-10,
              true);

  double worst_border = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double tp = rng.uniform(0.1, 1.2);
    const double t0 = rng.uniform(0.1, 1.2);
    const AnnulusGeometry ann(tp, t0);
    for (double tk : {ann.theta_min, std::min(ann.theta_max, pi)})
      if (tk > 1e-6)
        worst_border =
            std::max(worst_border, std::abs(K_factor(tk, tp, t0) - 1.0));
  }
  detail::add(r, 7, "polarization.K_border", worst_border, 0.0, 1e-8, true);

  double worst_min = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t0 = rng.uniform(0.1, 1.0);
    const double tp = rng.uniform(t0 + 0.05, std::min(1.4, t0 + 0.5) + 0.05);
    const double tk = std::acos(std::cos(tp) / std::cos(t0));
    worst_min = std::max(worst_min, std::abs(K_factor(tk, tp, t0) + 1.0));
  }
  detail::add(r, 7, "polarization.K_minimum", worst_min, 0.0, 1e-10, true);

  double worst_pl = 0.0;
  for (int i = 0; i < 100; ++i) {
    double v, n;
    do {
      v = rng.uniform(0.1, 0.99);
      n = rng.uniform(1.05, 3.0);
    } while (v * n <= 1.02);
    const auto e = ElectronState::from_velocity(v);
    const Medium med(n);
    const double omega = cutoff_frequency(e, med) * rng.uniform(0.05, 0.9);
    const double t0 = cherenkov_angle(e, med, omega);
    const double tp = rng.uniform(0.05, 1.0);
    const AnnulusGeometry ann(tp, t0);
    const double tk = rng.uniform(ann.theta_min + 1e-9,
                                  std::min(ann.theta_max, pi) - 1e-9);
    const double d = polarization_d_factor(e, med, omega);
    const double lhs = linear_polarization_tw(tk, tp, t0, d);
    const double rhs =
        K_factor(tk, tp, t0) * linear_polarization_pw(e, med, omega);
    worst_pl = std::max(worst_pl, std::abs(lhs - rhs));
  }
  detail::add(r, 7, "polarization.Pl_tw_identity", worst_pl, 0.0, 1e-12, true);
  detail::time_limit(r, 7, t, 0.0);
}

// --- Criterion 8: helicity amplitudes vs trace formula -------------------

inline void check_helicity(Report& r, std::uint64_t seed) {
  detail::Timer t;
  oracles::SplitMix64 rng(seed ^ 0x8u);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    double v, n;
    do {
      v = rng.uniform(0.1, 0.99);
      n = rng.uniform(1.05, 3.0);
    } while (v * n <= 1.02);
    const auto e = ElectronState::from_velocity(v);
    const Medium med(n);
    const double omega = cutoff_frequency(e, med) * rng.uniform(0.05, 0.95);
    const double phi_k = rng.uniform(0.0, 2.0 * pi);
    const auto kin = ConeKinematics::from(e, med, omega, phi_k);
    const double kn = omega * n;
    FourVector p, k;
    p.t = e.total_energy;
    p.z = e.momentum();
    k.t = omega;
    k.x = kn * std::sin(kin.theta_k) * std::cos(phi_k);
    k.y = kn * std::sin(kin.theta_k) * std::sin(phi_k);
    k.z = kn * std::cos(kin.theta_k);
    FourVector pf{p.t - k.t, p.x - k.x, p.y - k.y, p.z - k.z};
    for (int lg = -1; lg <= 1; lg += 2) {
      double hel_sum = 0.0;
      for (int tl = -1; tl <= 1; tl += 2)
        for (int tlf = -1; tlf <= 1; tlf += 2)
          hel_sum += std::norm(amplitude_pw(kin, tl, tlf, lg));
      hel_sum *= 0.5;
      const FourVector epol = polarization_vector(kin.theta_k, phi_k, lg);
      const double tr = unpolarized_square(p, pf, k, epol);
      worst = std::max(worst, std::abs(hel_sum - tr) / tr);
    }
  }
  detail::add(r, 8, "helicity.sum_vs_trace", worst, 0.0, 1e-10, true);

  // forward limit at the cut-off
  double worst_flip = 0.0, worst_nonflip = 0.0;
  for (auto [v, n] : {std::pair{0.685, 1.45986}, std::pair{0.0202, 50.0}}) {
    const auto e = ElectronState::from_velocity(v);
    const Medium med(n);
    const double wc = cutoff_frequency(e, med);
    ConeKinematics kin = ConeKinematics::from(e, med, wc, 0.3);
    kin.theta_k = 0.0; // exact forward configuration at the cut-off
    kin.theta_pf = 0.0;
    for (int tl = -1; tl <= 1; tl += 2) {
      const cplx flip = amplitude_pw(kin, tl, -tl, tl);
      const cplx ref =
          forward_flip_amplitude(kin.energy, kin.energy_final, tl, 0.3);
      worst_flip = std::max(worst_flip, std::abs(flip - ref) / std::abs(ref));
      for (int tlf = -1; tlf <= 1; tlf += 2)
        for (int lg = -1; lg <= 1; lg += 2)
          if (!(tlf == -tl && lg == tl))
            worst_nonflip =
                std::max(worst_nonflip,
                         std::abs(amplitude_pw(kin, tl, tlf, lg)) /
                             std::abs(ref));
    }
  }
  detail::add(r, 8, "helicity.forward_flip", worst_flip, 0.0, 1e-8, true);
  detail::add(r, 8, "helicity.forward_nonflip", worst_nonflip, 0.0, 1e-8,
              true);
  detail::time_limit(r, 8, t, 0.0);
}

// --- Criterion 9: triple-Bessel closed form vs quadrature ----------------

inline void check_triple_bessel(Report& r, std::uint64_t seed) {
  detail::Timer t;
  detail::add(r, 9, "triple_bessel.exact_345",
              triple_bessel_closed(0, 0, 3.0, 4.0, 5.0), 1.0 / (12.0 * pi),
              1e-14);
  oracles::SplitMix64 rng(seed ^ 0x9u);
  double worst = 0.0;
  int done = 0;
  while (done < 20) {
    const int l = static_cast<int>(rng.uniform(-5.0, 6.0));
    const int lp = static_cast<int>(rng.uniform(-5.0, 6.0));
    const double k1 = rng.uniform(0.5, 5.0);
    const double k2 = rng.uniform(0.5, 5.0);
    const double k3 = rng.uniform(0.5, 5.0);
    const auto tri = triangle_geometry(k1, k2, k3);
    if (tri.status != TriangleStatus::ok) continue;
    // skip nearly collinear triangles where the damped oracle itself
    // loses accuracy
    if (tri.area < 0.1 * k1 * k2) continue;
    const double closed = triple_bessel_closed(l, lp, k1, k2, k3);
    if (std::abs(closed) < 1e-3) continue; // relative tolerance needs scale
    const auto oracle = oracles::damped_quadrature_oracle(l, lp, k1, k2, k3);
    worst = std::max(worst,
                     std::abs(oracle.value - closed) / std::abs(closed));
    ++done;
  }
  detail::add(r, 9, "triple_bessel.random_vs_oracle", worst, 0.0, 1e-4, true);
  detail::time_limit(r, 9, t, 30.0);
}

// --- Criterion 10: Monte-Carlo angular oracle ----------------------------

inline void check_mc_angular(Report& r, std::uint64_t seed) {
  int idx = 0;
  for (auto [tp_deg, t0_deg] :
       {std::pair{25.0, 14.5}, std::pair{7.0, 14.5}, std::pair{14.5, 14.5}}) {
    detail::Timer t;
    const auto h = oracles::mc_angular_oracle(
        deg_to_rad(tp_deg), deg_to_rad(t0_deg), 1000000, seed + idx);
    const std::string tag = "mc.case" + std::to_string(idx);
    detail::add(r, 10, tag + ".max_abs_z", h.max_abs_z, 0.0, 4.0, true);
    detail::add(r, 10, tag + ".sup_norm", h.sup_norm, 0.0, 0.03, true);
    // bins fully outside the annulus must be empty
    long outside = 0;
    for (std::size_t i = 0; i < h.counts.size(); ++i)
      if (h.expected[i] == 0.0) outside += h.counts[i];
    detail::add(r, 10, tag + ".outside_counts", double(outside), 0.0, 0.0,
                true);
    detail::time_limit(r, 10, t, 10.0);
    ++idx;
  }
  // backward emission when theta_p + theta_0 > pi/2
  const auto h = oracles::mc_angular_oracle(deg_to_rad(80.0),
                                            deg_to_rad(14.5), 1000000, seed);
  long backward = 0;
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    if (h.edges[i] >= 0.5 * pi) backward += h.counts[i];
  detail::add(r, 10, "mc.backward_counts_present", backward > 0 ? 1.0 : 0.0,
              1.0, 0.0, true);
}

// --- Criterion 11: circular polarization ----------------------------------

inline void check_circular(Report& r, std::uint64_t seed) {
  detail::Timer t;
  const auto e = ElectronState::from_velocity(0.0202);
  const Medium med(50.0);
  const double wc = cutoff_frequency(e, med);
  detail::add(r, 11, "circular.zero_for_unpolarized",
              circular_polarization_pw(e, med, 0.5 * wc, SpinVector{}, 0.7),
              0.0, 1e-15, true);
  detail::add(r, 11, "circular.cutoff_limit",
              circular_polarization_pw(e, med, wc, SpinVector{0, 0, 1.0}, 0.0),
              1.0, 1e-6, true);
  oracles::SplitMix64 rng(seed ^ 0xBu);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    double v, n;
    do {
      v = rng.uniform(0.1, 0.99);
      n = rng.uniform(1.05, 3.0);
    } while (v * n <= 1.02);
    const auto el = ElectronState::from_velocity(v);
    const Medium m(n);
    const double omega = cutoff_frequency(el, m) * rng.uniform(0.02, 1.0);
    SpinVector z;
    const double ct = rng.uniform(-1.0, 1.0);
    const double st = std::sqrt(1.0 - ct * ct);
    const double ph = rng.uniform(0.0, 2.0 * pi);
    const double mag = rng.uniform();
    z.x = mag * st * std::cos(ph);
    z.y = mag * st * std::sin(ph);
    z.z = mag * ct;
    const double pc =
        circular_polarization_pw(el, m, omega, z, rng.uniform(0.0, 2.0 * pi));
    worst = std::max(worst, std::abs(pc) - 1.0);
  }
  detail::add(r, 11, "circular.bound_excess", worst, 0.0, 1e-9, true);
  detail::time_limit(r, 11, t, 0.0);
}

// --- Criterion 12: informational cut-off comparison ----------------------

inline double forward_amplitude_density(const ElectronState& e, const Medium& med) {
  const double wc = cutoff_frequency(e, med);
  const double E = e.total_energy;
  const double Ef = E - wc;
  const double m = electron_mass_ev;
  const double num = e.velocity * E - med.refraction_index * (E + m);
  return (0.5 / e.velocity) * (wc / E) * (wc / E) * num * num /
         ((E + m) * (Ef + m));
}

inline void check_cutoff_comparison(Report& r) {
  for (auto [v, n, tag] : {std::tuple{0.685, 1.45986, std::string("example2")},
                           std::tuple{0.0202, 50.0, std::string("example3")}}) {
    const auto e = ElectronState::from_velocity(v);
    const Medium med(n);
    const double step = cutoff_spectral_density(e, med);
    const double fwd = forward_amplitude_density(e, med);
    detail::add(r, 12, "cutoff_comparison." + tag + ".rel_difference",
                std::abs(fwd - step) / step, 0.0, 0.0, true,
                /*informational=*/true);
  }
}

inline Report run_all(std::uint64_t seed = oracles::default_seed) {
  Report r;
  check_example1(r);
  check_example2(r);
  check_example3(r);
  check_kernel_geometry(r);
  check_normalization(r, seed);
  check_spectral_identity(r, seed);
  check_polarization(r, seed);
  check_helicity(r, seed);
  check_triple_bessel(r, seed);
  check_mc_angular(r, seed);
  check_circular(r, seed);
  check_cutoff_comparison(r);
  return r;
}

} // namespace vch::validation
