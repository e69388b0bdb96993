#pragma once

// Flat dotted-key run configuration, read from a JSON object such as
//
//   {"m": 2, "grid.points": 401, "initial.kind": "barenblatt",
//    "initial.params.C": 0.0833, "checks": ["mass", "ab_time"]}
//
// Command-line flags are applied as key overrides before validation.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "pmelab/solver.hpp"

namespace pmelab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Simulate, Verify, Barenblatt, CompareHeat, Inequalities };

Command parse_command(const std::string& name);
std::string command_name(Command c);

struct RunConfig {
  double m = 2.0;
  int n = 1;
  std::vector<double> eta_sequence;
  double half_width = 4.0;
  int points = 401;
  double t0 = 1.0;
  double t1 = 2.0;
  std::vector<double> snapshots;
  std::string initial_kind = "barenblatt";
  std::map<std::string, double> initial_params;
  std::string initial_file;
  std::vector<std::string> checks;
  std::optional<double> holder_h;
  double holder_tau = 0.0;
  std::optional<double> holder_K;
  int holder_levels = 2;
  std::optional<double> beta;
  std::optional<double> metric_beta;
  std::optional<double> positivity_threshold;
  std::uint64_t seed = 20240229;
  std::string output_dir = "out";
  std::optional<double> label_m;
  std::optional<double> mass;
  std::vector<double> heat_m_values{1.5, 1.25, 1.1, 1.0};
  std::vector<double> heat_k_values{10.0};
  std::uint64_t inequality_cases = 1000000;
  /// "solver" or "analytic" (sampled source solution; barenblatt data only).
  std::string source = "solver";

  /// Exponent the checks are told the data satisfies (label.m, else m).
  double check_m() const { return label_m.value_or(m); }
};

/// Names accepted in "checks".
const std::vector<std::string>& known_checks();

/// Parses a flat JSON object. Unknown keys and ill-typed values raise
/// ConfigError naming the key.
RunConfig parse_config(const nlohmann::json& flat);

/// Cross-field validation for one command, before any run starts.
void validate_config(const RunConfig& config, Command command);

/// Reads a JSON file into a flat object (nested objects are flattened with dots).
nlohmann::json load_config_file(const std::string& path);

/// Splits "1,2,4" into numbers; the key is used in error messages.
std::vector<double> parse_number_list(const std::string& text, const std::string& key);

/// PMEProblem and grid for the configured run (η = smallest entry of eta_sequence, or 0).
PMEProblem make_problem(const RunConfig& config);
Grid make_grid(const RunConfig& config, int refinement = 0);

}  // namespace pmelab
