// End-to-end tests of the command-line front-end. The binary path comes
// from the VCH_CLI environment variable (set by CTest).

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vch/constants.hpp"

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("VCH_CLI");
  REQUIRE(bin != nullptr);
  const std::string cmd = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int col(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return static_cast<int>(i);
    FAIL("missing column " + name);
    return -1;
  }
};

Csv parse_csv(const std::string& text) {
  Csv c;
  std::istringstream is(text);
  std::string line;
  REQUIRE(std::getline(is, line));
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) c.columns.push_back(cell);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream rs(line);
    while (std::getline(rs, cell, ','))
      row.push_back(cell == "inf"
                        ? std::numeric_limits<double>::infinity()
                        : (cell == "-inf"
                               ? -std::numeric_limits<double>::infinity()
                               : std::stod(cell)));
    REQUIRE(row.size() == c.columns.size());
    c.rows.push_back(std::move(row));
  }
  return c;
}

} // namespace

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("angle: worked examples") {
  auto r = run_cli("angle --velocity 0.9 --n 1.46 --omega-ev 2.25 "
                   "--format json");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["schema_version"] == 1);
  CHECK_THAT(j["eta"].get<double>(), WithinRel(2.98909e-6, 1e-4));
  CHECK_THAT(j["vn_minus_1"].get<double>(), WithinRel(0.314, 0.005));

  r = run_cli("angle --velocity 0.685 --n 1.45986 --omega-ev 2.25 "
              "--format json");
  REQUIRE(r.exit_code == 0);
  const json j2 = json::parse(r.output);
  CHECK_THAT(j2["theta0_deg"].get<double>(), WithinRel(0.122501, 1e-4));
  CHECK_THAT(j2["omega_cutoff_ev"].get<double>(), WithinRel(5.08443, 1e-4));
}

TEST_CASE("angle: below threshold exits with the kinematic code") {
  const auto r = run_cli("angle --velocity 0.5 --n 1.2");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("below Cherenkov threshold") != std::string::npos);
}

TEST_CASE("usage errors exit with 64") {
  CHECK(run_cli("").exit_code == 64);
  CHECK(run_cli("angle --no-such-flag 1").exit_code == 64);
  CHECK(run_cli("angle --velocity 0.9 --kinetic-kev 300 --n 1.46").exit_code ==
        64);
  CHECK(run_cli("angle --n 1.46").exit_code == 64);
  CHECK(run_cli("spectrum --velocity 0.9 --n 1.46 --omega-max 6 "
                "--omega-steps 1").exit_code == 64);
  // dm = 0 rejected
  CHECK(run_cli("superposition --velocity 0.9 --n 1.46 --omega-ev 2.25 "
                "--theta-p-deg 10 --m1 0.5 --m2 0.5").exit_code == 64);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("spectrum: discontinuity and row-wise identities") {
  const auto r = run_cli("spectrum --velocity 0.685 --n 1.45986 "
                         "--omega-min 0.1 --omega-max 6 --omega-steps 60");
  REQUIRE(r.exit_code == 0);
  const Csv c = parse_csv(r.output);
  const int iw = c.col("omega_ev");
  const int icl = c.col("dGamma_classical");
  const int ipw = c.col("dGamma_pw");
  const int ieta = c.col("eta");
  const int isc = c.col("dGamma_semiclassical");
  const int iflag = c.col("above_cutoff");
  double last_nonzero = 0.0;
  bool seen_above = false;
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    const auto& row = c.rows[i];
    CHECK(row[icl] == c.rows[0][icl]); // classical column is omega-free
    if (row[iflag] == 0.0) {
      // near the cutoff eta -> 1, so 1 - eta loses digits to the CSV's
      // 12-significant-figure round trip
      CHECK_THAT(row[ipw], WithinRel(row[icl] * (1.0 - row[ieta]), 1e-6));
      if (row[ipw] != 0.0) last_nonzero = row[ipw];
      // default --m-oam is zero: semiclassical equals classical
      CHECK(row[isc] == row[icl]);
    } else {
      seen_above = true;
      CHECK(row[ipw] == 0.0);
      CHECK(row[iw] >= 5.08);
    }
    if (i > 0) CHECK(row[iw] > c.rows[i - 1][iw]);
  }
  CHECK(seen_above);
  CHECK_THAT(last_nonzero, WithinRel(4.33881e-11, 1e-3));
}

TEST_CASE("angular: annulus support and polarization identity") {
  const auto r = run_cli(
      "angular --kinetic-kev 300 --n 1.33 --omega-ev 2.25 --theta-p-deg 25 "
      "--theta-steps 181 --phi-steps 3");
  REQUIRE(r.exit_code == 0);
  const Csv c = parse_csv(r.output);
  const int ith = c.col("theta_k_deg");
  const int itot = c.col("dGamma_total");
  const int ipl = c.col("P_l");
  const int ik = c.col("K");
  const int iF = c.col("F");
  double pl_pw = 0.0;
  for (const auto& row : c.rows) {
    const bool inside = row[ith] > 10.53 && row[ith] < 39.47;
    if (inside) {
      CHECK(row[itot] > 0.0);
      CHECK(row[iF] > 0.0);
      // P_l / K is the plane-wave degree, constant across the annulus
      const double ratio = row[ipl] / row[ik];
      if (pl_pw == 0.0) pl_pw = ratio;
      CHECK_THAT(ratio, WithinRel(pl_pw, 1e-9));
      CHECK(std::abs(row[ik]) <= 1.0 + 1e-12);
    } else if (row[ith] < 10.4 || row[ith] > 39.6) {
      CHECK(row[itot] == 0.0);
      CHECK(row[iF] == 0.0);
    }
  }
}

TEST_CASE("angular: concentrator fills the axis region") {
  const auto r = run_cli(
      "angular --kinetic-kev 300 --n 1.33 --omega-ev 2.25 "
      "--theta-p-deg 14.4736973 --theta-steps 1801 --phi-steps 2");
  REQUIRE(r.exit_code == 0);
  const Csv c = parse_csv(r.output);
  const int ith = c.col("theta_k_deg");
  const int itot = c.col("dGamma_total");
  const int iF = c.col("F");
  bool seen = false;
  for (const auto& row : c.rows) {
    if (std::abs(row[ith] - 0.1) < 1e-9) {
      CHECK(row[itot] > 0.0);
      CHECK(std::isfinite(row[itot]));
      seen = true;
    }
    // theta_k = 0 lands on the annulus border here: serialized as "inf"
    if (row[ith] == 0.0) {
      CHECK(std::isinf(row[iF]));
      CHECK(std::isinf(row[itot]));
    }
  }
  CHECK(seen);
}

TEST_CASE("angular: vortex given as kappa and p_z") {
  // same state two ways: theta_p = atan2(kappa, pz)
  const auto a = run_cli(
      "angular --kappa-ev 200000 --pz-ev 1000000 --omega-ev 2.25 --n 1.33 "
      "--theta-steps 61 --phi-steps 2");
  REQUIRE(a.exit_code == 0);
  const double e = std::sqrt(2e5 * 2e5 + 1e6 * 1e6 +
                             vch::electron_mass_ev * vch::electron_mass_ev);
  const double kinetic_kev = (e - vch::electron_mass_ev) / 1e3;
  const double theta_p_deg = vch::rad_to_deg(std::atan2(2e5, 1e6));
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "angular --kinetic-kev %.12g --n 1.33 --omega-ev 2.25 "
                "--theta-p-deg %.12g --theta-steps 61 --phi-steps 2",
                kinetic_kev, theta_p_deg);
  const auto b = run_cli(buf);
  REQUIRE(b.exit_code == 0);
  const Csv ca = parse_csv(a.output), cb = parse_csv(b.output);
  REQUIRE(ca.rows.size() == cb.rows.size());
  const int itot = ca.col("dGamma_total");
  for (std::size_t i = 0; i < ca.rows.size(); ++i)
    CHECK_THAT(ca.rows[i][itot],
               WithinAbs(cb.rows[i][itot], 1e-9 * (std::abs(ca.rows[i][itot]) +
                                                   1e-30)));
  // giving both specs is a usage error
  CHECK(run_cli("angular --kappa-ev 1e5 --pz-ev 5e5 --velocity 0.9 --n 1.33 "
                "--omega-ev 2.25").exit_code == 64);
}

TEST_CASE("superposition: petals, frames, and the single-component limit") {
  const auto r = run_cli(
      "superposition --kinetic-kev 300 --n 1.33 --omega-ev 2.25 "
      "--theta-p-deg 7.2368 --m1 0.5 --m2 3.5 --dalpha 1.5707963267948966 "
      "--theta-steps 13 --phi-steps 360");
  REQUIRE(r.exit_code == 0);
  const Csv c = parse_csv(r.output);
  const int ith = c.col("theta_k_deg");
  const int iphi = c.col("phi_k_deg");
  const int iPhi = c.col("Phi");
  // pick the middle theta ring (90 deg is outside; use rows with Phi > 0)
  std::map<double, double> ring; // phi -> Phi on the first in-annulus ring
  double ring_theta = -1.0;
  for (const auto& row : c.rows) {
    if (row[iPhi] <= 0.0) continue;
    if (ring_theta < 0.0) ring_theta = row[ith];
    if (row[ith] == ring_theta) ring[row[iphi]] = row[iPhi];
  }
  REQUIRE(ring.size() == 360);
  std::vector<double> phis, vals;
  for (const auto& [p, v] : ring) {
    phis.push_back(p);
    vals.push_back(v);
  }
  int maxima = 0;
  const int ng = static_cast<int>(vals.size());
  for (int i = 0; i < ng; ++i)
    if (vals[i] > vals[(i + ng - 1) % ng] && vals[i] > vals[(i + 1) % ng])
      ++maxima;
  CHECK(maxima == 3);

  // dalpha = 0: Phi = (1 + A cos(3(phi - pi/2))) / 2pi, so phi = 90 deg
  // is an extremum (max or min, depending on the sign of A on the ring)
  // and the pattern repeats every 120 deg
  const auto r0 = run_cli(
      "superposition --kinetic-kev 300 --n 1.33 --omega-ev 2.25 "
      "--theta-p-deg 7.2368 --m1 0.5 --m2 3.5 --dalpha 0 "
      "--theta-steps 13 --phi-steps 360");
  REQUIRE(r0.exit_code == 0);
  const Csv c0 = parse_csv(r0.output);
  std::map<double, double> ring0;
  double rt0 = -1.0;
  for (const auto& row : c0.rows) {
    if (row[c0.col("Phi")] <= 0.0) continue;
    if (rt0 < 0.0) rt0 = row[c0.col("theta_k_deg")];
    if (row[c0.col("theta_k_deg")] == rt0)
      ring0[row[c0.col("phi_k_deg")]] = row[c0.col("Phi")];
  }
  const double iso = 1.0 / (2.0 * vch::pi);
  const double peak = ring0.at(90.0);
  for (double p : {210.0, 330.0})
    CHECK_THAT(ring0.at(p), WithinRel(peak, 1e-9));
  CHECK(std::abs(peak - iso) > 1e-3); // the asymmetry is visible
  for (const auto& [p, v] : ring0)
    CHECK(std::abs(v - iso) <= std::abs(peak - iso) * (1.0 + 1e-9));

  // dalpha = pi flips the modulation: Phi_0 + Phi_pi = 1/pi pointwise
  const auto rpi = run_cli(
      "superposition --kinetic-kev 300 --n 1.33 --omega-ev 2.25 "
      "--theta-p-deg 7.2368 --m1 0.5 --m2 3.5 --dalpha 3.14159265358979324 "
      "--theta-steps 13 --phi-steps 360");
  REQUIRE(rpi.exit_code == 0);
  const Csv cpi = parse_csv(rpi.output);
  std::map<double, double> ringpi;
  for (const auto& row : cpi.rows)
    if (row[cpi.col("theta_k_deg")] == rt0 && row[cpi.col("Phi")] > 0.0)
      ringpi[row[cpi.col("phi_k_deg")]] = row[cpi.col("Phi")];
  REQUIRE(ringpi.size() == ring0.size());
  for (const auto& [p, v] : ring0)
    CHECK_THAT(v + ringpi.at(p), WithinRel(1.0 / vch::pi, 1e-9));

  // |c2| = 0: Phi constant at 1/(2 pi)
  const auto r1 = run_cli(
      "superposition --kinetic-kev 300 --n 1.33 --omega-ev 2.25 "
      "--theta-p-deg 7.2368 --m1 0.5 --m2 3.5 --c1-abs 1 "
      "--theta-steps 13 --phi-steps 8");
  REQUIRE(r1.exit_code == 0);
  const Csv c1 = parse_csv(r1.output);
  for (const auto& row : c1.rows)
    if (row[c1.col("Phi")] != 0.0)
      CHECK_THAT(row[c1.col("Phi")], WithinRel(1.0 / (2.0 * vch::pi), 1e-12));

  // frame sweep
  const auto rs = run_cli(
      "superposition --kinetic-kev 300 --n 1.33 --omega-ev 2.25 "
      "--theta-p-deg 7.2368 --m1 0.5 --m2 3.5 --dalpha-sweep 4 "
      "--theta-steps 13 --phi-steps 8");
  REQUIRE(rs.exit_code == 0);
  const Csv cs = parse_csv(rs.output);
  std::map<double, double> frames; // frame -> dalpha
  for (const auto& row : cs.rows)
    frames[row[cs.col("frame")]] = row[cs.col("dalpha")];
  REQUIRE(frames.size() == 4);
  for (int f = 0; f < 4; ++f)
    CHECK_THAT(frames.at(f), WithinAbs(0.5 * vch::pi * f, 1e-10));
}

TEST_CASE("output is byte-identical across runs and respects --output") {
  const std::string args =
      "angular --kinetic-kev 300 --n 1.33 --omega-ev 2.25 --theta-p-deg 25 "
      "--theta-steps 31 --phi-steps 3";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.output == b.output);

  const std::string path = "vch_cli_test_out.csv";
  const auto c = run_cli(args + " --output " + path);
  REQUIRE(c.exit_code == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == a.output);
  std::remove(path.c_str());
}

TEST_CASE("json table output carries the schema header") {
  const auto r = run_cli(
      "angular --kinetic-kev 300 --n 1.33 --omega-ev 2.25 --theta-p-deg 25 "
      "--theta-steps 181 --phi-steps 2 --format json");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["schema_version"] == 1);
  CHECK(j["columns"].size() == 8);
  CHECK(j["rows"].size() == 181 * 2);
}

TEST_CASE("config file supplies defaults and flags override") {
  const std::string path = "vch_cli_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"velocity": 0.9, "n": 1.46, "omega-ev": 2.25})";
  }
  const auto a = run_cli("angle --config " + path + " --format json");
  REQUIRE(a.exit_code == 0);
  const json ja = json::parse(a.output);
  CHECK_THAT(ja["eta"].get<double>(), WithinRel(2.98909e-6, 1e-4));

  const auto b = run_cli("angle --config " + path +
                         " --velocity 0.685 --n 1.45986 --format json");
  REQUIRE(b.exit_code == 0);
  const json jb = json::parse(b.output);
  CHECK_THAT(jb["theta0_deg"].get<double>(), WithinRel(0.122501, 1e-4));
  std::remove(path.c_str());
}

TEST_CASE("validate emits a JSON report with the informational comparison") {
  const auto r = run_cli("validate");
  REQUIRE((r.exit_code == 0 || r.exit_code == 1));
  const json j = json::parse(r.output);
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "validate");
  bool saw_info = false;
  std::vector<std::string> failing;
  for (const auto& c : j["checks"]) {
    if (c["informational"].get<bool>()) {
      saw_info = true;
      CHECK(c["pass"].get<bool>()); // informational entries never fail
    } else if (!c["pass"].get<bool>()) {
      failing.push_back(c["name"].get<std::string>());
    }
  }
  CHECK(saw_info);
  // the only tolerated red check is the quoted example-3 step height,
  // which the closed form does not reproduce
  for (const auto& name : failing)
    CHECK(name == "example3.cutoff_density");

  // a different seed changes samples, not the pass/fail outcome
  const auto r7 = run_cli("validate --seed 7");
  CHECK(r7.exit_code == r.exit_code);
  const json j7 = json::parse(r7.output);
  std::vector<std::string> failing7;
  for (const auto& c : j7["checks"])
    if (!c["informational"].get<bool>() && !c["pass"].get<bool>())
      failing7.push_back(c["name"].get<std::string>());
  CHECK(failing == failing7);
}
