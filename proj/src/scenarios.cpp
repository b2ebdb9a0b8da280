#include "casimir/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "casimir/config.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/response.hpp"

namespace casimir {

namespace {

namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

class CsvBuilder {
 public:
  void comment(const std::string& line) { body_ += "# " + line + "\n"; }
  void columns(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) body_ += (i ? "," : "") + names[i];
    body_ += "\n";
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) body_ += (i ? "," : "") + fmt(values[i]);
    body_ += "\n";
  }
  const std::string& str() const { return body_; }

 private:
  std::string body_;
};

void write_atomic(const fs::path& dir, const std::string& name, const std::string& content,
                  std::vector<std::string>& written) {
  fs::create_directories(dir);
  const fs::path tmp = dir / (".tmp_" + name);
  const fs::path final_path = dir / name;
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, final_path);
  written.push_back(final_path.string());
}

std::string echo_config(const Config& cfg) {
  std::string out = "# effective configuration (defaults resolved)\n";
  for (const auto& [k, v] : cfg.effective()) out += k + " = " + v + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// shared config fragments
// ---------------------------------------------------------------------------

struct CommonSetup {
  double temperature;
  EngineOptions opts;
  std::string materials_dir;
};

CommonSetup parse_common(Config& cfg, const std::string& subcommand, int threads_override,
                         std::optional<double> tolerance_override) {
  const int version = cfg.get_int("version", 1);
  if (version != 1) throw ConfigError("unsupported config version " + std::to_string(version));
  const std::string scen = cfg.get_string("scenario", subcommand);
  if (scen != subcommand)
    throw ConfigError("config is for scenario '" + scen + "', invoked as '" + subcommand + "'");

  CommonSetup s;
  s.temperature = cfg.get_double("temperature_k", 300.0);
  s.opts.k_integral_reltol = cfg.get_double("tolerance.k_integral", 1e-8);
  s.opts.thermal_reltol = cfg.get_double("tolerance.thermal", 1e-9);
  s.opts.truncation_rel = cfg.get_double("tolerance.truncation", 1e-10);
  if (tolerance_override) s.opts.k_integral_reltol = *tolerance_override;
  s.opts.threads = threads_override > 0 ? threads_override : 0;  // 0 = hardware

  std::string dir = cfg.get_string("materials_dir", "");
  if (dir.empty()) {
    const char* env = std::getenv("CASIMIR_MATERIALS_DIR");
    dir = env ? env : std::string(CASIMIR_DATA_DIR) + "/materials";
  }
  s.materials_dir = dir;
  return s;
}

GrapheneParams parse_graphene(Config& cfg, double default_delta_ev) {
  GrapheneParams g;
  g.gap_j = cfg.get_double("graphene.delta_ev", default_delta_ev) * electron_volt;
  g.vf_ratio = cfg.get_double("graphene.vf_ratio", default_fermi_velocity / constants.c);
  g.alpha = cfg.get_double("graphene.alpha", constants.alpha);
  g.validate();
  return g;
}

LayerStack parse_body(Config& cfg, const MaterialLibrary& lib, const std::string& prefix,
                      const GrapheneParams& g, bool default_graphene,
                      const std::string& default_substrate) {
  LayerStack s;
  if (cfg.get_bool(prefix + ".graphene", default_graphene)) s.graphene = g;
  for (int j = 1;; ++j) {
    const std::string fp = prefix + ".film" + std::to_string(j);
    if (!cfg.has(fp + ".material")) break;
    const std::string mat = cfg.require_string(fp + ".material");
    const double d_nm = cfg.require_double(fp + ".thickness_nm");
    if (!(d_nm > 0.0)) throw ConfigError(fp + ".thickness_nm must be positive");
    s.films.push_back({lib.get(mat), d_nm * 1e-9});
  }
  const std::string sub = cfg.get_string(prefix + ".substrate", default_substrate);
  if (sub == "vacuum") {
    s.substrate = LayerStack::Substrate::Vacuum;
  } else if (sub == "ideal_metal") {
    s.substrate = LayerStack::Substrate::IdealMetal;
  } else {
    s.substrate = LayerStack::Substrate::Material;
    s.substrate_model = lib.get(sub);
  }
  s.validate();
  return s;
}

std::vector<double> parse_grid(Config& cfg, double def_min_nm, double def_max_nm,
                               int def_points, const std::string& def_spacing) {
  const double min_nm = cfg.get_double("grid.min_nm", def_min_nm);
  const double max_nm = cfg.get_double("grid.max_nm", def_max_nm);
  const int points = cfg.get_int("grid.points", def_points);
  const std::string spacing = cfg.get_string("grid.spacing", def_spacing);
  if (!(min_nm > 0.0) || !(max_nm > min_nm))
    throw ConfigError("grid: need 0 < min_nm < max_nm");
  if (points < 2) throw ConfigError("grid.points must be >= 2");
  std::vector<double> a(points);
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    double nm;
    if (spacing == "log")
      nm = min_nm * std::exp(f * std::log(max_nm / min_nm));
    else if (spacing == "linear")
      nm = min_nm + f * (max_nm - min_nm);
    else
      throw ConfigError("grid.spacing must be 'linear' or 'log'");
    a[i] = nm * 1e-9;
  }
  return a;
}

EvaluationMethod parse_method(Config& cfg, const std::string& def) {
  const std::string m = cfg.get_string("method", def);
  if (m == "exact") return EvaluationMethod::EXACT;
  if (m == "asymptotic") return EvaluationMethod::ASYMPTOTIC_L_GE_1;
  if (m == "zero_t_tensor") return EvaluationMethod::ZERO_T_TENSOR_AT_MATSUBARA;
  if (m == "zero_t_all") return EvaluationMethod::ZERO_T_TENSOR_ALL_L;
  if (m == "zero_temperature") return EvaluationMethod::ZERO_TEMPERATURE;
  throw ConfigError("unknown method '" + m + "'");
}

double nan_or(const std::optional<double>& v) {
  return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------------------
// scenario runners
// ---------------------------------------------------------------------------

using Runner = std::function<void(Config&, const CommonSetup&, const fs::path&,
                                  std::vector<std::string>&)>;

void run_fig1(Config& cfg, const CommonSetup& cs, const fs::path& out,
              std::vector<std::string>& written) {
  const GrapheneParams g = parse_graphene(cfg, 0.0);
  const double k_fac = cfg.get_double("fig1.k_over_k1", 10.0);
  const double xi_max = cfg.get_double("fig1.xi_max_over_xi1", 10.0);
  const int points = cfg.get_int("fig1.points", 200);
  cfg.fail_on_unknown();
  if (points < 2) throw ConfigError("fig1.points must be >= 2");

  const double xi1 = matsubara_frequency(1, cs.temperature);
  const double k = k_fac * xi1 / constants.c;
  // C = 16 alpha c k_B T / vF^2 (the Fig. 1 normalization); the returned
  // tensor values are Pi/hbar, so divide by C/hbar.
  const double c_over_hbar = 16.0 * g.alpha * constants.k_B * cs.temperature /
                             (constants.hbar * constants.c * g.vf_ratio * g.vf_ratio);
  CsvBuilder csv;
  csv.comment("thermal correction to the 00-component of the graphene polarization tensor");
  csv.comment("k_perp = " + format_double(k_fac) + " xi_1/c, T = " +
              format_double(cs.temperature) + " K, gap = " +
              format_double(g.gap_j / electron_volt) + " eV");
  csv.comment("columns: xi/xi_1 [1], Delta_T Pi00 / C [1] with C = 16 alpha c k_B T / vF^2");
  csv.columns({"xi_over_xi1", "dpi00_over_c"});
  for (int i = 0; i < points; ++i) {
    const double x = xi_max * i / (points - 1);
    const auto d = thermal_correction(x * xi1, k, cs.temperature, g, cs.opts.thermal_reltol);
    csv.row({x, d.d_pi00_over_hbar / c_over_hbar});
  }
  write_atomic(out, "fig1.csv", csv.str(), written);
}

void run_fig3(Config& cfg, const CommonSetup& cs, const fs::path& out,
              std::vector<std::string>& written) {
  const GrapheneParams g = parse_graphene(cfg, 0.0);
  if (g.gap_j != 0.0)
    throw ConfigError("fig3: the asymptotic method is defined for gapless sheets only");
  const auto grid = parse_grid(cfg, 10.0, 100.0, 60, "log");
  cfg.fail_on_unknown();

  const LifshitzEngine engine(cs.opts);
  const LayerStack sheet = LayerStack::free_graphene(g);
  CsvBuilder csv;
  csv.comment("relative errors of the approximate Casimir-pressure methods,");
  csv.comment("two free-standing gapless graphene sheets, T = " +
              format_double(cs.temperature) + " K");
  csv.comment("delta_p^k = (P - P^k)/P in percent; k=1 asymptotic l>=1, k=2 zero-T tensor l>=1");
  csv.columns({"a_nm", "delta_p1_percent", "delta_p2_percent"});
  for (const double a : grid) {
    const double p = *engine.pressure(a, cs.temperature, sheet, sheet,
                                      EvaluationMethod::EXACT).pressure;
    const double p1 = *engine.pressure(a, cs.temperature, sheet, sheet,
                                       EvaluationMethod::ASYMPTOTIC_L_GE_1).pressure;
    const double p2 = *engine.pressure(a, cs.temperature, sheet, sheet,
                                       EvaluationMethod::ZERO_T_TENSOR_AT_MATSUBARA).pressure;
    csv.row({a * 1e9, 100.0 * (p - p1) / p, 100.0 * (p - p2) / p});
  }
  write_atomic(out, "fig3.csv", csv.str(), written);
}

void run_fig4(Config& cfg, const CommonSetup& cs, const fs::path& out,
              std::vector<std::string>& written) {
  const GrapheneParams g = parse_graphene(cfg, 0.0);
  const auto grid = parse_grid(cfg, 20.0, 600.0, 60, "log");
  cfg.fail_on_unknown();

  const LifshitzEngine engine(cs.opts);
  const LayerStack sheet = LayerStack::free_graphene(g);
  CsvBuilder csv;
  csv.comment("normalized Casimir pressure |P|/B between two graphene sheets, B = k_B T/(8 pi a^3)");
  csv.comment("T = " + format_double(cs.temperature) + " K; exact tensor, zero-T tensor at the");
  csv.comment("Matsubara frequencies (implicit temperature only), and genuine T = 0");
  csv.columns({"a_nm", "p_over_b_exact", "p_over_b_implicit", "p_over_b_t0"});
  for (const double a : grid) {
    const double B = constants.k_B * cs.temperature / (8.0 * pi * a * a * a);
    const double pe = *engine.pressure(a, cs.temperature, sheet, sheet,
                                       EvaluationMethod::EXACT).pressure;
    const double pi_ = *engine.pressure(a, cs.temperature, sheet, sheet,
                                        EvaluationMethod::ZERO_T_TENSOR_ALL_L).pressure;
    const double p0 = *engine.pressure(a, cs.temperature, sheet, sheet,
                                       EvaluationMethod::ZERO_TEMPERATURE).pressure;
    csv.row({a * 1e9, std::abs(pe) / B, std::abs(pi_) / B, std::abs(p0) / B});
  }
  write_atomic(out, "fig4.csv", csv.str(), written);
}

void run_thermal(Config& cfg, const CommonSetup& cs, const fs::path& out,
                 std::vector<std::string>& written) {
  const GrapheneParams g = parse_graphene(cfg, 0.0);
  const MaterialLibrary lib(cs.materials_dir);
  const LayerStack b1 = parse_body(cfg, lib, "body1", g, true, "vacuum");
  const LayerStack b2 = parse_body(cfg, lib, "body2", g, true, "vacuum");
  const auto grid = parse_grid(cfg, 50.0, 500.0, 20, "log");
  cfg.fail_on_unknown();

  const LifshitzEngine engine(cs.opts);
  CsvBuilder csv;
  csv.comment("explicit/implicit decomposition of the thermal Casimir pressure [Pa]");
  csv.comment("T = " + format_double(cs.temperature) + " K");
  csv.columns({"a_nm", "total_pressure_pa", "pressure_t0_pa", "pressure_implicit_only_pa",
               "explicit_effect_pa", "implicit_effect_pa", "total_effect_pa"});
  for (const double a : grid) {
    const auto d = engine.thermal_decomposition(a, cs.temperature, b1, b2);
    csv.row({a * 1e9, d.total_pressure, d.pressure_T0, d.pressure_implicit_only,
             d.explicit_effect, d.implicit_effect, d.total_effect});
  }
  write_atomic(out, "thermal.csv", csv.str(), written);
}

void run_experiment(Config& cfg, const CommonSetup& cs, const fs::path& out,
                    std::vector<std::string>& written) {
  const GrapheneParams g = parse_graphene(cfg, 0.05);
  const MaterialLibrary lib(cs.materials_dir);
  const double radius = cfg.get_double("experiment.radius_um", 54.1) * 1e-6;
  const double sio2_nm = cfg.get_double("experiment.sio2_thickness_nm", 300.0);
  const std::string sub = cfg.get_string("experiment.substrate", "si_bdoped");
  const std::string sphere_mat = cfg.get_string("experiment.sphere_material", "au");
  const auto grid = parse_grid(cfg, 224.0, 500.0, 15, "linear");
  cfg.fail_on_unknown();

  const LayerStack sphere = LayerStack::half_space(lib.get(sphere_mat));
  LayerStack plate;
  plate.graphene = g;
  plate.films.push_back({lib.get("sio2"), sio2_nm * 1e-9});
  plate.substrate = LayerStack::Substrate::Material;
  plate.substrate_model = lib.get(sub);
  LayerStack bare = plate;
  bare.graphene.reset();

  const LifshitzEngine engine(cs.opts);
  CsvBuilder csv;
  csv.comment("PFA force gradient, Au sphere (R = " + format_double(radius * 1e6) +
              " um) over SiO2(" + format_double(sio2_nm) + " nm)/" + sub);
  csv.comment("T = " + format_double(cs.temperature) + " K, graphene gap = " +
              format_double(g.gap_j / electron_volt) + " eV");
  csv.columns({"a_nm", "grad_with_graphene_n_per_m", "grad_no_graphene_n_per_m"});
  for (const double a : grid) {
    const auto with = engine.force_gradient_sphere_plate(a, cs.temperature, radius, sphere, plate);
    const auto without = engine.force_gradient_sphere_plate(a, cs.temperature, radius, sphere, bare);
    csv.row({a * 1e9, with.gradient, without.gradient});
  }
  write_atomic(out, "experiment.csv", csv.str(), written);
}

void run_responses(Config& cfg, const CommonSetup& cs, const fs::path& out,
                   std::vector<std::string>& written) {
  const GrapheneParams g = parse_graphene(cfg, 0.0);
  const auto l_list = cfg.get_double_list("responses.l", {0, 1, 2, 5});
  const auto k_list = cfg.get_double_list("responses.k_over_k1", {0.5, 1, 2, 5});
  cfg.fail_on_unknown();

  const double xi1 = matsubara_frequency(1, cs.temperature);
  CsvBuilder csv;
  csv.comment("graphene response functions from the polarization tensor (exact, T = " +
              format_double(cs.temperature) + " K)");
  csv.comment("alpha/eps dimensionless; chi in " + std::string(ResponseSet::chi_units) +
              "; sigma in " + std::string(ResponseSet::sigma_units));
  csv.comment("transverse and conductivity entries are undefined at l = 0 (nan)");
  csv.columns({"l", "xi_rad_per_s", "k_rad_per_m", "alpha_par", "alpha_perp", "eps_par",
               "eps_perp", "chi_par", "chi_perp", "sigma_par", "sigma_perp"});
  for (const double lv : l_list) {
    const int l = static_cast<int>(lv);
    if (l < 0 || lv != l) throw ConfigError("responses.l must list non-negative integers");
    for (const double kf : k_list) {
      const double k = kf * xi1 / constants.c;
      const auto pt = pol_tensor(l, k, cs.temperature, g, EvaluationMethod::EXACT,
                                 cs.opts.thermal_reltol);
      const auto r = responses_from_tensor(pt);
      csv.row({static_cast<double>(l), pt.xi, k, r.alpha_par, nan_or(r.alpha_perp), r.eps_par,
               nan_or(r.eps_perp), r.chi_par, nan_or(r.chi_perp), nan_or(r.sigma_par),
               nan_or(r.sigma_perp)});
    }
  }
  write_atomic(out, "responses.csv", csv.str(), written);
}

void run_pressure(Config& cfg, const CommonSetup& cs, const fs::path& out,
                  std::vector<std::string>& written) {
  const GrapheneParams g = parse_graphene(cfg, 0.0);
  const MaterialLibrary lib(cs.materials_dir);
  const LayerStack b1 = parse_body(cfg, lib, "body1", g, true, "vacuum");
  const LayerStack b2 = parse_body(cfg, lib, "body2", g, true, "vacuum");
  const double a = cfg.get_double("separation_nm", 100.0) * 1e-9;
  const EvaluationMethod method = parse_method(cfg, "exact");
  cfg.fail_on_unknown();
  if (!(a > 0.0)) throw ConfigError("separation_nm must be positive");

  const LifshitzEngine engine(cs.opts);
  const auto pres = engine.pressure(a, cs.temperature, b1, b2, method);
  const auto free = engine.free_energy(a, cs.temperature, b1, b2, method);

  CsvBuilder csv;
  csv.comment("single-point evaluation with diagnostics");
  csv.columns({"a_nm", "temperature_k", "pressure_pa", "free_energy_j_per_m2", "l_max_used",
               "quadrature_evals", "max_rel_err_estimate", "truncation_estimate_pa"});
  csv.row({a * 1e9, cs.temperature, *pres.pressure, *free.free_energy_per_area,
           static_cast<double>(pres.l_max_used),
           static_cast<double>(pres.diagnostics.neval), pres.diagnostics.max_rel_err,
           pres.truncation_estimate});
  write_atomic(out, "pressure.csv", csv.str(), written);

  std::printf("pressure = %s Pa\nfree energy = %s J/m^2\nl_max = %ld, evals = %llu\n",
              fmt(*pres.pressure).c_str(), fmt(*free.free_energy_per_area).c_str(),
              pres.l_max_used, pres.diagnostics.neval);
  for (const auto& w : pres.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> map = {
      {"fig1", run_fig1},       {"fig3", run_fig3},
      {"fig4", run_fig4},       {"thermal", run_thermal},
      {"experiment", run_experiment}, {"responses", run_responses},
      {"pressure", run_pressure},
  };
  return map;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : runners()) n.push_back(k);
    return n;
  }();
  return names;
}

std::vector<std::string> run_scenario(const std::string& subcommand,
                                      const std::string& config_path,
                                      const std::string& out_dir, int threads_override,
                                      std::optional<double> tolerance_override) {
  auto it = runners().find(subcommand);
  if (it == runners().end()) throw ConfigError("unknown subcommand '" + subcommand + "'");
  Config cfg = Config::parse_file(config_path);
  const CommonSetup cs = parse_common(cfg, subcommand, threads_override, tolerance_override);
  std::vector<std::string> written;
  const fs::path out(out_dir);
  it->second(cfg, cs, out, written);
  write_atomic(out, "effective_config.cfg", echo_config(cfg), written);
  return written;
}

}  // namespace casimir
