#ifndef HOLOFORM_CLI_HPP
#define HOLOFORM_CLI_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "holoform/report.hpp"
#include "holoform/surface.hpp"
#include "holoform/torus_morita.hpp"

namespace holoform {

/// One verification scenario: backend + surface + seeds (+ theta/planck for
/// the torus pipeline). Unknown config keys are rejected.
struct ScenarioConfig {
  std::string backend_name = "abelian_double";
  int backend_n = 2;
  std::string backend_h = "su2";

  std::string surface_builtin;             // set when using a builtin
  std::vector<std::string> surface_word;   // side tokens otherwise
  std::map<std::string, std::string> coloring;

  std::vector<std::uint64_t> seeds = {1};
  double scale = 0.2;
  std::map<std::string, double> tolerances;
  std::string mode = "float";

  bool has_theta = false;
  QMat theta;
  Rat planck = Rat(1);
};

ScenarioConfig parse_config(const nlohmann::json& j);

/// Named tolerance: explicit override, else default scaled by
/// HOLOFORM_DEFAULT_TOL (picked up once per process call via env_scale).
double tolerance(const ScenarioConfig& cfg, const std::string& name, double env_scale);

Backend backend_from_config(const ScenarioConfig& cfg);
ColoredPolygon surface_from_config(const ScenarioConfig& cfg, const Backend& backend);

Report cmd_validate(const ScenarioConfig& cfg, double env_scale);
Report cmd_dim(const ScenarioConfig& cfg, double env_scale);
Report cmd_omega(const ScenarioConfig& cfg, double env_scale);
Report cmd_check(const ScenarioConfig& cfg, const std::string& which, double env_scale);
Report cmd_torus_morita(const ScenarioConfig& cfg, double env_scale);

/// Full command-line entry point; returns the process exit code
/// (0 pass, 1 check failures, 2 config errors, 3 internal errors).
int run_cli(int argc, char** argv);

}  // namespace holoform

#endif
