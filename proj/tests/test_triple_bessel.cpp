#include <catch2/catch_amalgamated.hpp>

#include "vch/oracles.hpp"
#include "vch/triple_bessel.hpp"

using namespace vch;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("transverse triangle geometry") {
  const auto t = triangle_geometry(3.0, 4.0, 5.0);
  REQUIRE(t.status == TriangleStatus::ok);
  CHECK_THAT(t.area, WithinRel(6.0, 1e-14));
  // right triangle: angle opposite the hypotenuse-side kappa=5 is pi/2,
  // but here kappa=3 -> beta = asin(3/5)
  CHECK_THAT(std::sin(t.beta), WithinRel(0.6, 1e-14));
  CHECK_THAT(std::sin(t.beta_f), WithinRel(0.8, 1e-14));
  CHECK(triangle_geometry(1.0, 1.0, 3.0).status == TriangleStatus::no_triangle);
  CHECK(triangle_geometry(1.0, 2.0, 3.0).status == TriangleStatus::degenerate);
  CHECK_THROWS_AS(triangle_geometry(-1.0, 2.0, 2.0), std::domain_error);
}

TEST_CASE("closed form reference values") {
  CHECK_THAT(triple_bessel_closed(0, 0, 3.0, 4.0, 5.0),
             WithinRel(1.0 / (12.0 * pi), 1e-14));
  CHECK(triple_bessel_closed(2, -1, 1.0, 1.0, 3.0) == 0.0);
  CHECK_THROWS_AS(triple_bessel_closed(0, 0, 1.0, 2.0, 3.0),
                  std::domain_error);
}

TEST_CASE("closed form is bounded by 1/(2 pi area)") {
  oracles::SplitMix64 rng;
  int done = 0;
  while (done < 200) {
    const double k1 = rng.uniform(0.5, 5.0);
    const double k2 = rng.uniform(0.5, 5.0);
    const double k3 = rng.uniform(0.5, 5.0);
    const auto t = triangle_geometry(k1, k2, k3);
    if (t.status != TriangleStatus::ok) continue;
    const int l = int(rng.uniform(-5.0, 6.0));
    const int lp = int(rng.uniform(-5.0, 6.0));
    CHECK(std::abs(triple_bessel_closed(l, lp, k1, k2, k3)) <=
          1.0 / (2.0 * pi * t.area) + 1e-15);
    ++done;
  }
}

TEST_CASE("closed form matches the damped quadrature oracle") {
  // cheap spot checks; the acceptance suite runs the randomized sweep
  for (auto [l, lp, k1, k2, k3] :
       {std::tuple{0, 0, 3.0, 4.0, 5.0}, std::tuple{2, -1, 3.0, 4.0, 5.0},
        std::tuple{1, 3, 2.0, 2.5, 1.7}}) {
    const double closed = triple_bessel_closed(l, lp, k1, k2, k3);
    const auto oracle = oracles::damped_quadrature_oracle(l, lp, k1, k2, k3);
    CHECK(oracle.converged);
    CHECK_THAT(oracle.value, WithinRel(closed, 1e-4));
  }
}

TEST_CASE("twisted kernel conserves the angular momentum projection") {
  TwistedKernelArgs a;
  a.two_m = 5;
  a.two_mf = 1;
  a.m_gamma = 1; // violates m = m' + m_gamma
  a.two_lambda = 1;
  a.two_lambda_f = 1;
  a.lambda_gamma = 1;
  a.energy = 8e5;
  a.energy_final = 7.9e5;
  a.theta_p = 0.3;
  a.theta_pf = 0.31;
  a.theta_k = 0.2;
  a.kappa = 3.0;
  a.kappa_f = 4.0;
  a.kappa_g = 5.0;
  CHECK(s3tw_kernel(a) == 0.0);
  a.m_gamma = 2; // now m = m' + m_gamma
  const double val = s3tw_kernel(a);
  CHECK(std::isfinite(val));
  CHECK(val != 0.0);
  // scales with sqrt of the transverse momenta product
  TwistedKernelArgs b = a;
  b.kappa = 4.0 * a.kappa;
  b.kappa_f = 4.0 * a.kappa_f;
  b.kappa_g = 4.0 * a.kappa_g;
  // triangle scaled uniformly: angles unchanged, area scales by 16, the
  // Bessel factor by 8, so the kernel picks up 8/16 = 1/2
  CHECK_THAT(s3tw_kernel(b), WithinRel(0.5 * val, 1e-12));
  TwistedKernelArgs c = a;
  c.two_m = 4;
  CHECK_THROWS_AS(s3tw_kernel(c), std::domain_error);
  c = a;
  c.energy = 1.0;
  CHECK_THROWS_AS(s3tw_kernel(c), std::domain_error);
}

TEST_CASE("twisted kernel reduces to a single triple-Bessel term when only "
          "one spin route survives") {
  // theta_p = theta_pf = 0 forces sigma = lambda and sigma' = lambda'
  TwistedKernelArgs a;
  a.two_m = 1;
  a.two_mf = -1;
  a.m_gamma = 1;
  a.two_lambda = 1;
  a.two_lambda_f = -1;
  a.lambda_gamma = 1;
  a.energy = 8e5;
  a.energy_final = 7.9e5;
  a.theta_p = 0.0;
  a.theta_pf = 0.0;
  a.theta_k = 0.2;
  a.kappa = 3.0;
  a.kappa_f = 4.0;
  a.kappa_g = 5.0;
  const double bracket =
      std::sqrt((a.energy - electron_mass_ev) *
                (a.energy_final + electron_mass_ev)) -
      std::sqrt((a.energy_final - electron_mass_ev) *
                (a.energy + electron_mass_ev));
  const double expected =
      bracket * std::sqrt(a.kappa * a.kappa_f * a.kappa_g) *
      WignerDOne(a.theta_k)(1, 1) *
      triple_bessel_closed(0, 0, a.kappa, a.kappa_f, a.kappa_g) *
      (-std::sqrt(2.0));
  CHECK_THAT(s3tw_kernel(a), WithinRel(expected, 1e-13));
}
