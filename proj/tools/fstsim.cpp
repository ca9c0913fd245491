// fstsim: run, scan and inspect fractional Stokes-transport simulations.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fst/config.hpp"
#include "fst/littlewood_paley.hpp"
#include "fst/norms.hpp"
#include "fst/simulation.hpp"
#include "fst/snapshot.hpp"

namespace {

int report_config_error(const fst::ConfigError& e) {
  for (const auto& msg : e.errors()) std::cerr << "config error: " << msg << '\n';
  return 1;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw std::invalid_argument("bad scan value '" + item + "'");
    }
    values.push_back(v);
  }
  return values;
}

int exit_code(fst::RunStatus status) {
  switch (status) {
    case fst::RunStatus::completed: return 0;
    case fst::RunStatus::blowup_proxy:
    case fst::RunStatus::diverged: return 2;
    case fst::RunStatus::step_limit: return 1;
  }
  return 1;
}

double evaluate_norm(const fst::DyadicFilterBank& bank, const fst::RealField& f, const std::string& diag) {
  const auto colon = diag.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("diagnostic '" + diag + "' needs kind:args");
  const std::string kind = diag.substr(0, colon);
  const std::string args = diag.substr(colon + 1);
  if (kind == "besov" || kind == "hbesov") {
    fst::BesovParams params = fst::parse_besov_triple(args);
    params.homogeneous = kind == "hbesov";
    return fst::besov_norm(bank, params, f);
  }
  if (kind == "ll") return fst::log_lipschitz_norm(bank, std::stod(args), f);
  if (kind == "lp") return fst::lp_norm(f, args == "inf" ? fst::kInfinity : std::stod(args));
  throw std::invalid_argument("unknown diagnostic kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral fractional Stokes-transport simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, var = "alpha", values_text, snapshot_path;
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<std::string> diags;

  auto* run_cmd = app.add_subcommand("run", "Integrate one configuration");
  run_cmd->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_dir, "Output directory (overrides output.dir)");
  run_cmd->add_option("--seed", seed, "Random seed (overrides seed)");

  auto* scan_cmd = app.add_subcommand("scan", "Sweep alpha or the initial amplitude");
  scan_cmd->add_option("config", config_path, "Base configuration file")->required()->check(CLI::ExistingFile);
  scan_cmd->add_option("--var", var, "Scanned variable")->check(CLI::IsMember({"alpha", "amplitude"}));
  scan_cmd->add_option("--values", values_text, "Comma-separated values")->required();
  scan_cmd->add_option("--out", out_dir, "Output directory (overrides output.dir)");
  scan_cmd->add_option("--workers", workers, "Concurrent runs")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--seed", seed, "Random seed (overrides seed)");

  auto* norms_cmd = app.add_subcommand("norms", "Evaluate norms of a snapshot");
  norms_cmd->add_option("snapshot", snapshot_path, "Snapshot file")->required()->check(CLI::ExistingFile);
  norms_cmd->add_option("--diag", diags, "besov:s,p,r | hbesov:s,p,r | ll:a | lp:p")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd || *scan_cmd) {
      fst::SimConfig config = fst::load_config(config_path);
      if (!out_dir.empty()) config.output_dir = out_dir;
      if (run_cmd->count("--seed") || scan_cmd->count("--seed")) config.seed = seed;

      if (*run_cmd) {
        const fst::RunResult result = fst::run(config);
        std::cout << "status: " << fst::to_string(result.status) << '\n'
                  << "t: " << fst::format_double(result.final_state.t) << '\n'
                  << "steps: " << result.final_state.step_count << '\n';
        if (result.lifespan.t_star_proxy) {
          std::cout << "t_star_proxy: " << fst::format_double(*result.lifespan.t_star_proxy) << " ("
                    << fst::to_string(result.lifespan.trigger) << ")\n";
        }
        return exit_code(result.status);
      }

      fst::ScanSpec spec;
      spec.base = config;
      spec.variable = var == "alpha" ? fst::ScanVariable::alpha : fst::ScanVariable::amplitude;
      spec.values = parse_values(values_text);
      const fst::ScanResult result = fst::run_scan(spec, workers);
      std::cout << result.table_csv() << result.summary();
      for (const auto& row : result.rows) {
        if (row.status == "error") return 1;
      }
      return 0;
    }

    const fst::RealField f = fst::read_snapshot(snapshot_path);
    const fst::DyadicFilterBank bank(f.grid);
    for (const auto& diag : diags) {
      std::cout << diag << ' ' << fst::format_double(evaluate_norm(bank, f, diag)) << '\n';
    }
    return 0;
  } catch (const fst::ConfigError& e) {
    return report_config_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
