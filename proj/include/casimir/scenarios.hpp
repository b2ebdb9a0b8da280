#ifndef CASIMIR_SCENARIOS_HPP
#define CASIMIR_SCENARIOS_HPP

#include <optional>
#include <string>
#include <vector>

namespace casimir {

/// Executes one CLI subcommand: reads the scenario config, runs the
/// computation, writes the CSV outputs plus the default-resolved
/// effective_config.cfg into out_dir (atomically), and returns the paths
/// written. Throws ConfigError (exit 2) and NumericalError (exit 3).
std::vector<std::string> run_scenario(const std::string& subcommand,
                                      const std::string& config_path,
                                      const std::string& out_dir,
                                      int threads_override = 0,
                                      std::optional<double> tolerance_override = std::nullopt);

/// Known subcommand names, for CLI help and validation.
const std::vector<std::string>& scenario_names();

}  // namespace casimir

#endif
