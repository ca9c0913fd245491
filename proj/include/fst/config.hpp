#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fst/diagnostics.hpp"
#include "fst/grid.hpp"
#include "fst/transport.hpp"
#include "fst/velocity_law.hpp"

namespace fst {

/// Initial datum: a named preset (see preset_initial_datum) scaled by
/// `amplitude`.
struct InitialSpec {
  std::string preset = "random_smooth";
  double amplitude = 1.0;
  double epsilon = 0.1;   // perturbation size for perturbed_stratification
  double k0 = 4.0;        // spectral decay scale of the random presets
  std::string profile = "sin";  // R(x_d) for perturbed_stratification
  std::string file;       // from_file

  friend bool operator==(const InitialSpec&, const InitialSpec&) = default;
};

/// Optional stratified background; perturbation mode adds -d_d R u_d.
struct EquilibriumSpec {
  std::string profile = "none";  // none | sin | cos
  double amplitude = 1.0;

  friend bool operator==(const EquilibriumSpec&, const EquilibriumSpec&) = default;
};

struct SimConfig {
  double alpha = 1.0;
  Grid grid{2, 64};
  double t_end = 1.0;

  DtRule dt_rule = DtRule::cfl_adaptive;
  double dt = 1e-2;
  double cfl = 0.5;
  long max_steps = 10'000'000;
  Regularization regularization;

  InitialSpec initial;
  EquilibriumSpec equilibrium;
  DiagnosticsSpec diagnostics;
  std::vector<double> snapshot_times;

  std::uint64_t seed = 0;
  std::string output_dir;

  /// Throws ConfigError listing every violated range or missing file.
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Every problem found while reading or validating a configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Line-oriented `key = value` text with dotted section keys and '#'
/// comments. Unset keys keep their defaults. Throws ConfigError with one
/// message per problem, each naming its line.
SimConfig parse_config(std::string_view text);

SimConfig load_config(const std::string& path);

/// Every key with its resolved value; parse_config() reproduces the config.
std::string serialize_config(const SimConfig& config);

/// Parses "s,p,r" (p and r may be "inf").
BesovParams parse_besov_triple(std::string_view text);

/// Named profiles of the gravity coordinate: "sin", "cos".
double evaluate_profile(const std::string& name, double x);

}  // namespace fst
