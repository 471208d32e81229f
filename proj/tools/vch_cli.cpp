// Batch front-end for the vch library: scalar angle reports, spectral
// and angular sweeps, superposition frames, and the validation runner.
//
// Exit codes: 0 success, 1 validation failure, 2 kinematic domain
// error, 64 usage error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vch/vch.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_domain = 2;
constexpr int exit_usage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  double kinetic_kev = 0.0;
  double velocity = 0.0;
  double n = 0.0;
  double omega_ev = 0.0;
  double omega_min = 0.1;
  double omega_max = 0.0;
  int omega_steps = 200;
  double theta_p_deg = 0.0;
  double kappa_ev = 0.0;
  double pz_ev = 0.0;
  double m1 = 0.5;
  double m2 = 3.5;
  double c1_abs = 0.70710678118654752440;
  double dalpha = 0.0;
  int dalpha_sweep = 0;
  int theta_steps = 181;
  int phi_steps = 36;
  double zeta_x = 0.0, zeta_y = 0.0, zeta_z = 0.0;
  double m_oam = 0.0;
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = vch::oracles::default_seed;
  std::string config_path;
};

// A sweep result: fixed column order, rows of doubles. Non-finite
// values are serialized as the string "inf".
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << fmt12(row[i]);
    os << "\n";
  }
}

json table_to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (double x : row) {
      if (std::isfinite(x))
        r.push_back(x);
      else
        r.push_back(x > 0 ? "inf" : "-inf");
    }
    rows.push_back(std::move(r));
  }
  return json{{"columns", t.columns}, {"rows", rows}};
}

void emit(const RunConfig& cfg, const json& payload) {
  json out = payload;
  out["schema_version"] = 1;
  out["command"] = cfg.command;
  std::string text;
  if (cfg.format == "json") {
    text = out.dump(2);
    text += "\n";
  } else if (cfg.format == "csv") {
    std::ostringstream ss;
    if (out.contains("columns")) {
      Table t;
      t.columns = out["columns"].get<std::vector<std::string>>();
      for (const auto& row : out["rows"]) {
        std::vector<double> r;
        for (const auto& x : row)
          r.push_back(x.is_string()
                          ? (x.get<std::string>() == "-inf" ? -1.0 : 1.0) *
                                std::numeric_limits<double>::infinity()
                          : x.get<double>());
        t.rows.push_back(std::move(r));
      }
      write_csv(ss, t);
    } else {
      // scalar report: one header row, one value row
      std::vector<std::string> keys;
      for (auto it = out.begin(); it != out.end(); ++it)
        if (it.key() != "schema_version" && it.key() != "command")
          keys.push_back(it.key());
      for (std::size_t i = 0; i < keys.size(); ++i)
        ss << (i ? "," : "") << keys[i];
      ss << "\n";
      for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto& v = out[keys[i]];
        ss << (i ? "," : "")
           << (v.is_number() ? fmt12(v.get<double>()) : v.dump());
      }
      ss << "\n";
    }
    text = ss.str();
  } else {
    throw UsageError("unknown format: " + cfg.format);
  }
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.output);
    if (!f) throw UsageError("cannot open output file: " + cfg.output);
    f << text;
  }
}

vch::ElectronState electron_from(const RunConfig& cfg, bool have_kinetic,
                                 bool have_velocity) {
  if (have_kinetic == have_velocity)
    throw UsageError("give exactly one of --kinetic-kev and --velocity");
  return have_kinetic
             ? vch::ElectronState::from_kinetic(cfg.kinetic_kev * 1e3)
             : vch::ElectronState::from_velocity(cfg.velocity);
}

int doubled_half_integer(double m, const char* flag) {
  const double two_m = 2.0 * m;
  const long r = std::lround(two_m);
  if (std::abs(two_m - r) > 1e-9 || (r % 2 + 2) % 2 != 1)
    throw UsageError(std::string(flag) + " must be half-integer (odd/2)");
  return static_cast<int>(r);
}

std::vector<double> linspace(double a, double b, int steps) {
  if (steps < 2) throw UsageError("grid sizes must be >= 2");
  std::vector<double> v(steps);
  for (int i = 0; i < steps; ++i)
    v[i] = a + (b - a) * i / (steps - 1);
  return v;
}

// --- subcommands ---------------------------------------------------------

void cmd_angle(const RunConfig& cfg, bool hk, bool hv) {
  const auto e = electron_from(cfg, hk, hv);
  const vch::Medium med(cfg.n);
  vch::require_radiating(e, med);
  const double wc = vch::cutoff_frequency(e, med);
  const double omega = cfg.omega_ev;
  const double theta0 = vch::cherenkov_angle(e, med, omega);
  const vch::SpinVector zeta{cfg.zeta_x, cfg.zeta_y, cfg.zeta_z};
  json rep;
  rep["above_threshold"] = true;
  rep["vn_minus_1"] = e.velocity * med.refraction_index - 1.0;
  rep["theta0_deg"] = vch::rad_to_deg(theta0);
  rep["omega_cutoff_ev"] = wc;
  rep["eta"] = vch::quantum_correction_eta(e, med, omega);
  rep["P_l"] = vch::linear_polarization_pw(e, med, omega);
  rep["P_c"] = vch::circular_polarization_pw(e, med, omega, zeta, 0.0);
  emit(cfg, rep);
}

void cmd_spectrum(const RunConfig& cfg, bool hk, bool hv) {
  const auto e = electron_from(cfg, hk, hv);
  const vch::Medium med(cfg.n);
  vch::require_radiating(e, med);
  Table t;
  t.columns = {"omega_ev",      "dGamma_classical",
               "dGamma_pw",     "eta",
               "dGamma_semiclassical", "above_cutoff"};
  const double cl = vch::classical_frank_tamm(e, med);
  auto grid = linspace(cfg.omega_min, cfg.omega_max, cfg.omega_steps);
  // make the discontinuity visible: pin rows just below and at the
  // cut-off when the sweep straddles it
  const double wc = vch::cutoff_frequency(e, med);
  if (cfg.omega_min < wc && wc < cfg.omega_max) {
    grid.push_back(wc * (1.0 - 1e-9));
    grid.push_back(wc);
    std::sort(grid.begin(), grid.end());
  }
  for (double w : grid) {
    const auto s = vch::spectral_density_pw(e, med, w);
    t.rows.push_back({w, cl, s.value, vch::quantum_correction_eta(e, med, w),
                      vch::semiclassical_spectral(e, med, w, cfg.m_oam),
                      s.above_cutoff ? 1.0 : 0.0});
  }
  emit(cfg, table_to_json(t));
}

vch::VortexState vortex_from(const RunConfig& cfg, bool hk, bool hv,
                             bool have_theta, bool have_kappa, bool have_pz,
                             int two_m) {
  if (have_theta == (have_kappa || have_pz))
    throw UsageError("give --theta-p-deg or (--kappa-ev and --pz-ev)");
  if (have_theta) {
    const auto e = electron_from(cfg, hk, hv);
    return vch::VortexState::from_angle(
        e.total_energy, vch::deg_to_rad(cfg.theta_p_deg), two_m, 1);
  }
  if (!(have_kappa && have_pz))
    throw UsageError("--kappa-ev and --pz-ev must be given together");
  if (hk || hv)
    throw UsageError("(--kappa-ev, --pz-ev) already fix the electron energy");
  return vch::VortexState(cfg.kappa_ev, cfg.pz_ev, two_m, 1);
}

void angular_rows(Table& t, const vch::VortexState& vs, const vch::Medium& med,
                  double omega, int theta_steps, int phi_steps,
                  const vch::SuperpositionState* sup, double frame_dalpha,
                  int frame) {
  const auto e = vs.electron();
  const double theta0 = vch::cherenkov_angle(e, med, omega);
  const double theta_p = vs.opening_angle();
  const double pl_pw = vch::linear_polarization_pw(e, med, omega);
  for (double th_deg : linspace(0.0, 180.0, theta_steps)) {
    const double th = vch::deg_to_rad(th_deg);
    const double F = vch::F_kernel(th, theta_p, theta0);
    for (double ph_deg : linspace(0.0, 360.0 * (1.0 - 1.0 / phi_steps),
                                  phi_steps)) {
      std::vector<double> row;
      if (sup) row.insert(row.end(), {double(frame), frame_dalpha});
      row.insert(row.end(), {th_deg, ph_deg});
      if (F == 0.0) {
        row.insert(row.end(), {0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
        if (sup) row.push_back(0.0);
      } else if (std::isinf(F)) {
        // annulus border: densities diverge (integrably), K -> 1
        const double inf = std::numeric_limits<double>::infinity();
        row.insert(row.end(), {inf, inf, inf, pl_pw, 1.0, inf});
        if (sup) {
          const double del =
              std::abs(th - (theta_p + theta0)) <
                      std::abs(th - std::abs(theta_p - theta0))
                  ? vch::pi
                  : 0.0;
          vch::SuperpositionState s = *sup;
          s.dalpha = frame_dalpha;
          row.push_back(
              vch::superposition_factor(vch::deg_to_rad(ph_deg), del, s));
        }
      } else {
        const double K = vch::K_factor(th, theta_p, theta0);
        auto pair = vch::spectral_angular_tw(vs, med, omega, th);
        double phi_factor = 1.0;
        double Phi = 0.0;
        if (sup) {
          vch::SuperpositionState s = *sup;
          s.dalpha = frame_dalpha;
          Phi = vch::superposition_factor(vch::deg_to_rad(ph_deg),
                                          vch::delta_angle(th, theta_p, theta0),
                                          s);
          phi_factor = 2.0 * vch::pi * Phi;
        }
        row.insert(row.end(),
                   {pair.total() * phi_factor, pair.parallel * phi_factor,
                    pair.perpendicular * phi_factor, K * pl_pw, K, F});
        if (sup) row.push_back(Phi);
      }
      t.rows.push_back(std::move(row));
    }
  }
}

void cmd_angular(const RunConfig& cfg, bool hk, bool hv, bool ht, bool hka,
                 bool hpz) {
  const int two_m = doubled_half_integer(cfg.m1, "--m1");
  const auto vs = vortex_from(cfg, hk, hv, ht, hka, hpz, two_m);
  const vch::Medium med(cfg.n);
  vch::require_radiating(vs.electron(), med);
  Table t;
  t.columns = {"theta_k_deg", "phi_k_deg", "dGamma_total", "dGamma_par",
               "dGamma_perp", "P_l",       "K",            "F"};
  angular_rows(t, vs, med, cfg.omega_ev, cfg.theta_steps, cfg.phi_steps,
               nullptr, 0.0, 0);
  emit(cfg, table_to_json(t));
}

void cmd_superposition(const RunConfig& cfg, bool hk, bool hv, bool ht,
                       bool hka, bool hpz) {
  const int two_m1 = doubled_half_integer(cfg.m1, "--m1");
  const int two_m2 = doubled_half_integer(cfg.m2, "--m2");
  const auto vs = vortex_from(cfg, hk, hv, ht, hka, hpz, two_m1);
  if (!(cfg.c1_abs >= 0.0 && cfg.c1_abs <= 1.0))
    throw UsageError("--c1-abs must lie in [0, 1]");
  if (two_m1 == two_m2)
    throw UsageError("--m1 and --m2 must differ (Delta m != 0)");
  const vch::SuperpositionState sup(
      vs, two_m2, cfg.c1_abs, std::sqrt(1.0 - cfg.c1_abs * cfg.c1_abs),
      cfg.dalpha);
  const vch::Medium med(cfg.n);
  vch::require_radiating(vs.electron(), med);
  Table t;
  t.columns = {"frame", "dalpha",      "theta_k_deg", "phi_k_deg",
               "dGamma_total", "dGamma_par", "dGamma_perp",
               "P_l",   "K",           "F",           "Phi"};
  const int frames = cfg.dalpha_sweep > 0 ? cfg.dalpha_sweep : 1;
  for (int f = 0; f < frames; ++f) {
    const double da = cfg.dalpha_sweep > 0
                          ? 2.0 * vch::pi * f / cfg.dalpha_sweep
                          : cfg.dalpha;
    angular_rows(t, vs, med, cfg.omega_ev, cfg.theta_steps, cfg.phi_steps,
                 &sup, da, f);
  }
  emit(cfg, table_to_json(t));
}

int cmd_validate(const RunConfig& cfg) {
  const auto report = vch::validation::run_all(cfg.seed);
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"criterion", c.criterion},
                      {"name", c.name},
                      {"computed", c.computed},
                      {"expected", c.expected},
                      {"tolerance", c.tolerance},
                      {"tolerance_type", c.abs_tolerance ? "absolute"
                                                         : "relative"},
                      {"informational", c.informational},
                      {"pass", c.pass}});
  json timings = json::array();
  for (const auto& tm : report.timings)
    timings.push_back({{"criterion", tm.criterion},
                       {"seconds", tm.seconds},
                       {"limit_seconds", tm.limit_seconds},
                       {"pass", tm.pass}});
  const bool ok = report.all_passed();
  json rep{{"seed", cfg.seed},
           {"passed", ok},
           {"checks", checks},
           {"timings", timings}};
  RunConfig out = cfg;
  out.format = "json"; // the report is structured; always JSON
  emit(out, rep);
  return ok ? exit_ok : exit_validation;
}

// Optional JSON config file: keys mirror long flag names without the
// leading dashes; explicit flags win.
json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open config file: " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw UsageError("bad config file: " + std::string(e.what()));
  }
}

template <typename T>
void merge(const CLI::App* sub, const json& j, const std::string& flag, T& v) {
  const std::string key = flag.substr(2);
  if (sub->count(flag) == 0 && j.contains(key)) v = j.at(key).get<T>();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vavilov-Cherenkov radiation observables for plane-wave and "
               "vortex electrons"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--kinetic-kev", cfg.kinetic_kev,
                    "electron kinetic energy [keV]");
    sub->add_option("--velocity", cfg.velocity, "electron velocity, v < 1");
    sub->add_option("--n", cfg.n, "refraction index");
    sub->add_option("--format", cfg.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", cfg.output, "write to file instead of stdout");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--config", cfg.config_path,
                    "JSON config file; flags override it");
  };

  auto* angle = app.add_subcommand("angle", "scalar emission-angle report");
  add_common(angle);
  angle->add_option("--omega-ev", cfg.omega_ev, "photon energy [eV]");
  angle->add_option("--zeta-x", cfg.zeta_x, "electron polarization x");
  angle->add_option("--zeta-y", cfg.zeta_y, "electron polarization y");
  angle->add_option("--zeta-z", cfg.zeta_z, "electron polarization z");

  auto* spectrum = app.add_subcommand("spectrum", "spectral density sweep");
  add_common(spectrum);
  spectrum->add_option("--omega-min", cfg.omega_min, "sweep start [eV]");
  spectrum->add_option("--omega-max", cfg.omega_max, "sweep end [eV]")
      ->required();
  spectrum->add_option("--omega-steps", cfg.omega_steps, "sweep points (>=2)");
  spectrum->add_option("--m-oam", cfg.m_oam,
                       "OAM used by the semiclassical column");

  auto add_vortex = [&](CLI::App* sub) {
    sub->add_option("--omega-ev", cfg.omega_ev, "photon energy [eV]")
        ->required();
    sub->add_option("--theta-p-deg", cfg.theta_p_deg,
                    "vortex opening angle [deg]");
    sub->add_option("--kappa-ev", cfg.kappa_ev, "transverse momentum [eV]");
    sub->add_option("--pz-ev", cfg.pz_ev, "longitudinal momentum [eV]");
    sub->add_option("--m1", cfg.m1, "TAM projection (half-integer)");
    sub->add_option("--theta-steps", cfg.theta_steps, "theta grid points");
    sub->add_option("--phi-steps", cfg.phi_steps, "phi grid points");
  };

  auto* angular = app.add_subcommand("angular", "spectral-angular sweep");
  add_common(angular);
  add_vortex(angular);

  auto* superpos =
      app.add_subcommand("superposition", "two-state superposition sweep");
  add_common(superpos);
  add_vortex(superpos);
  superpos->add_option("--m2", cfg.m2, "second TAM projection");
  superpos->add_option("--c1-abs", cfg.c1_abs, "|c1| of the first component");
  superpos->add_option("--dalpha", cfg.dalpha, "relative phase [rad]");
  superpos->add_option("--dalpha-sweep", cfg.dalpha_sweep,
                       "emit this many frames with dalpha over [0, 2pi)");

  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  add_common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();

  try {
    if (!cfg.config_path.empty()) {
      const json j = load_config(cfg.config_path);
      merge(sub, j, "--kinetic-kev", cfg.kinetic_kev);
      merge(sub, j, "--velocity", cfg.velocity);
      merge(sub, j, "--n", cfg.n);
      merge(sub, j, "--format", cfg.format);
      merge(sub, j, "--output", cfg.output);
      merge(sub, j, "--seed", cfg.seed);
      auto merge_if = [&](const std::string& flag, auto& v) {
        if (sub->get_option_no_throw(flag)) merge(sub, j, flag, v);
      };
      merge_if("--omega-ev", cfg.omega_ev);
      merge_if("--omega-min", cfg.omega_min);
      merge_if("--omega-max", cfg.omega_max);
      merge_if("--omega-steps", cfg.omega_steps);
      merge_if("--theta-p-deg", cfg.theta_p_deg);
      merge_if("--kappa-ev", cfg.kappa_ev);
      merge_if("--pz-ev", cfg.pz_ev);
      merge_if("--m1", cfg.m1);
      merge_if("--m2", cfg.m2);
      merge_if("--c1-abs", cfg.c1_abs);
      merge_if("--dalpha", cfg.dalpha);
      merge_if("--dalpha-sweep", cfg.dalpha_sweep);
      merge_if("--theta-steps", cfg.theta_steps);
      merge_if("--phi-steps", cfg.phi_steps);
      merge_if("--zeta-x", cfg.zeta_x);
      merge_if("--zeta-y", cfg.zeta_y);
      merge_if("--zeta-z", cfg.zeta_z);
      merge_if("--m-oam", cfg.m_oam);
    }

    // config-file presence counts as "given" for exclusive-flag checks
    auto given = [&](const std::string& flag) {
      if (sub->count(flag) > 0) return true;
      if (cfg.config_path.empty()) return false;
      static json j;
      if (j.is_null()) j = load_config(cfg.config_path);
      return j.contains(flag.substr(2));
    };
    const bool hk = given("--kinetic-kev");
    const bool hv = given("--velocity");
    const bool ht = sub->get_option_no_throw("--theta-p-deg") &&
                    given("--theta-p-deg");
    const bool hka = sub->get_option_no_throw("--kappa-ev") &&
                     given("--kappa-ev");
    const bool hpz = sub->get_option_no_throw("--pz-ev") && given("--pz-ev");

    if (cfg.command == "angle") {
      cmd_angle(cfg, hk, hv);
    } else if (cfg.command == "spectrum") {
      if (cfg.omega_min >= cfg.omega_max)
        throw UsageError("--omega-min must be below --omega-max");
      cmd_spectrum(cfg, hk, hv);
    } else if (cfg.command == "angular") {
      cmd_angular(cfg, hk, hv, ht, hka, hpz);
    } else if (cfg.command == "superposition") {
      cmd_superposition(cfg, hk, hv, ht, hka, hpz);
    } else if (cfg.command == "validate") {
      return cmd_validate(cfg);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const vch::NoRadiation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_domain;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_domain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_ok;
}
