#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "casimir/errors.hpp"
#include "casimir/scenarios.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Casimir free energy, pressure and sphere-plate force gradients for\n"
               "graphene systems via the Lifshitz formula and the (2+1)D polarization tensor"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = ".";
  int threads = 0;
  double tolerance = 0.0;
  bool tolerance_set = false;

  static const std::map<std::string, std::string> descriptions = {
      {"fig1", "thermal correction to Pi00 vs continuous frequency"},
      {"fig3", "relative errors of the approximate pressure methods"},
      {"fig4", "normalized pressure: exact / implicit-only / T = 0"},
      {"thermal", "explicit vs implicit thermal decomposition vs separation"},
      {"experiment", "sphere-plate force gradient for the graphene-coated substrate"},
      {"responses", "polarizabilities, permittivities, correlations, conductivities"},
      {"pressure", "single-point evaluation with diagnostics"},
  };

  for (const auto& name : casimir::scenario_names()) {
    auto it = descriptions.find(name);
    CLI::App* sub = app.add_subcommand(name, it != descriptions.end() ? it->second : "");
    sub->add_option("--config", config, "scenario configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (default: current)");
    sub->add_option("--threads", threads, "worker threads (0 = hardware)");
    sub->add_option("--tolerance", tolerance, "override tolerance.k_integral")
        ->each([&](const std::string&) { tolerance_set = true; });
  }

  CLI11_PARSE(app, argc, argv);

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    const auto written = casimir::run_scenario(
        subcommand, config, out_dir, threads,
        tolerance_set ? std::optional<double>(tolerance) : std::nullopt);
    for (const auto& p : written) std::fprintf(stderr, "wrote %s\n", p.c_str());
    return 0;
  } catch (const casimir::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  }
}
