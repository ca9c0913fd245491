#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fst/config.hpp"
#include "fst/diagnostics.hpp"
#include "fst/transport.hpp"

namespace fst {

/// Deterministic initial datum for (preset, parameters, seed):
///  - stratified_sin:           amplitude * R(x_d) with R = sin
///  - shear_sin:                amplitude * sin(x_1)
///  - perturbed_stratification: amplitude * (R(x_d) + epsilon * noise)
///  - random_smooth:            amplitude * noise
///  - from_file:                amplitude * snapshot
/// `noise` has a Gaussian-decay spectrum exp(-|k|^2 / (2 k0^2)) restricted to
/// the 2/3 dealiasing box, zero mean and unit max norm.
RealField preset_initial_datum(const InitialSpec& spec, const Grid& grid, std::uint64_t seed);

/// Band-limited zero-mean random field with unit max norm.
RealField random_smooth_field(const Grid& grid, double k0, std::uint64_t seed);

enum class RunStatus { completed, blowup_proxy, diverged, step_limit };

const char* to_string(RunStatus status);

struct RunResult {
  RunStatus status = RunStatus::completed;
  DiagnosticsSeries series;
  SolverState final_state;
  LifespanEstimate lifespan;
  std::vector<std::filesystem::path> snapshots;
};

/// Integrates from t = 0 to t_end or until the proxy fires. When
/// config.output_dir is set, writes config.resolved, diagnostics.csv,
/// criterion.txt and rho_t{time:.6f}.fstf snapshots there.
RunResult run(const SimConfig& config);

enum class ScanVariable { alpha, amplitude };

struct ScanSpec {
  SimConfig base;
  ScanVariable variable = ScanVariable::alpha;
  std::vector<double> values;

  void validate() const;
};

struct ScanRow {
  double value = 0.0;
  std::string status;  // completed | blowup_proxy | diverged | step_limit | error
  std::optional<double> t_star_proxy;
  double int_V_at_stop = 0.0;
  double int_dircrit_at_stop = 0.0;
  double final_l2 = 0.0;
  double final_linf = 0.0;
  std::string message;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

struct ScanResult {
  ScanVariable variable = ScanVariable::alpha;
  std::vector<ScanRow> rows;
  /// alpha scans: t_star_proxy against log(1 + 1/(1 - alpha)) over fired rows.
  std::optional<LinearFit> lifespan_fit;
  /// amplitude scans: max / min of t_star_proxy * amplitude over fired rows.
  std::optional<double> product_spread;

  std::string table_csv() const;
  std::string summary() const;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

/// Runs every value (up to `workers` at a time). A failing row is recorded
/// with status "error" and the scan continues. With base.output_dir set, each
/// row writes into row_<index>/ and the table goes to scan.csv.
ScanResult run_scan(const ScanSpec& spec, int workers = 1);

}  // namespace fst
