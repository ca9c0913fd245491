#include "fst/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "fst/fft.hpp"
#include "fst/littlewood_paley.hpp"
#include "fst/norms.hpp"
#include "fst/snapshot.hpp"

namespace fst {

RealField random_smooth_field(const Grid& grid, double k0, std::uint64_t seed) {
  const Lattice& lat = lattice(grid);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField coeffs(grid);
  for (Eigen::Index i = 0; i < coeffs.coeffs.size(); ++i) {
    const double re = normal(gen);
    const double im = normal(gen);
    if (i == 0 || lat.dealias_mask(i) == 0.0) continue;
    coeffs.coeffs(i) = std::complex<double>(re, im) * std::exp(-lat.k2(i) / (2.0 * k0 * k0));
  }
  RealField f = inverse_transform(coeffs);
  f.values -= mean(f);
  const double peak = f.values.abs().maxCoeff();
  if (peak > 0.0) f.values /= peak;
  return f;
}

RealField preset_initial_datum(const InitialSpec& spec, const Grid& grid, std::uint64_t seed) {
  const int g = grid.gravity_axis();
  RealField f(grid);
  if (spec.preset == "stratified_sin") {
    f = sample_function(grid, [&](const auto& x) { return std::sin(x[g]); });
  } else if (spec.preset == "shear_sin") {
    f = sample_function(grid, [](const auto& x) { return std::sin(x[0]); });
  } else if (spec.preset == "perturbed_stratification") {
    f = sample_function(grid, [&](const auto& x) { return evaluate_profile(spec.profile, x[g]); });
    if (spec.epsilon != 0.0) f.values += spec.epsilon * random_smooth_field(grid, spec.k0, seed).values;
  } else if (spec.preset == "random_smooth") {
    f = random_smooth_field(grid, spec.k0, seed);
  } else if (spec.preset == "from_file") {
    f = read_snapshot(spec.file);
    if (!(f.grid == grid)) {
      throw ConfigError({"initial.file: snapshot grid (d = " + std::to_string(f.grid.d) + ", n = " +
                         std::to_string(f.grid.n) + ") does not match the configured grid"});
    }
  } else {
    throw ConfigError({"unknown initial preset '" + spec.preset + "'"});
  }
  f.values *= spec.amplitude;
  return f;
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_proxy: return "blowup_proxy";
    case RunStatus::diverged: return "diverged";
    case RunStatus::step_limit: return "step_limit";
  }
  return "unknown";
}

namespace {

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "rho_t%.6f.fstf", t);
  return buf;
}

}  // namespace

RunResult run(const SimConfig& config) {
  config.validate();
  const Grid grid(config.grid.d, config.grid.n);
  const StokesOperator op(grid, config.alpha, config.regularization);
  const DyadicFilterBank bank(grid);

  SchemeConfig scheme;
  scheme.dt_rule = config.dt_rule;
  scheme.dt = config.dt;
  scheme.cfl = config.cfl;
  if (config.equilibrium.profile != "none") {
    const auto& eq = config.equilibrium;
    scheme.equilibrium = EquilibriumProfile::from_function(
        grid, [&](double x) { return eq.amplitude * evaluate_profile(eq.profile, x); });
  }

  RealField rho0 = preset_initial_datum(config.initial, grid, config.seed);
  if (config.regularization.kind == RegularizationKind::friedrichs) {
    rho0.values = detail::inverse_real(grid, detail::forward(grid, rho0.values) * op.outer_filter());
  }

  const std::filesystem::path out_dir = config.output_dir;
  std::ofstream csv;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(out_dir / "config.resolved") << serialize_config(config);
    csv.open(out_dir / "diagnostics.csv");
    if (!csv) throw std::runtime_error("cannot write " + (out_dir / "diagnostics.csv").string());
  }

  std::vector<double> snap_times = config.snapshot_times;
  std::sort(snap_times.begin(), snap_times.end());
  snap_times.erase(std::unique(snap_times.begin(), snap_times.end()), snap_times.end());
  std::erase_if(snap_times, [&](double t) { return t > config.t_end; });
  std::size_t next_snap = 0;

  RunResult result;
  result.series = DiagnosticsSeries(config.diagnostics);
  SolverState state;
  state.rho = rho0;
  state.cfl = config.cfl;
  const double reference = proxy_norm(bank, config.alpha, rho0);

  const auto record = [&](DiagnosticsRecord rec) {
    if (!result.series.empty() && !(rec.time > result.series.back().time)) {
      rec.time = std::nextafter(result.series.back().time, kInfinity);
    }
    result.series.append(std::move(rec));
    if (csv.is_open()) {
      if (result.series.records().size() == 1) csv << result.series.csv_header() << '\n';
      csv << DiagnosticsSeries::csv_row(result.series.back()) << '\n' << std::flush;
    }
    return result.series.back().proxy_state;
  };
  const auto take_snapshots = [&] {
    while (next_snap < snap_times.size() && state.t >= snap_times[next_snap]) {
      if (!out_dir.empty()) {
        const auto path = out_dir / snapshot_name(state.t);
        write_snapshot(path, state.rho);
        result.snapshots.push_back(path);
      }
      ++next_snap;
    }
  };

  take_snapshots();
  ProxyState proxy = record(sample(state, op, bank, config.diagnostics, reference));

  while (proxy == ProxyState::ok && state.t < config.t_end) {
    if (state.step_count >= config.max_steps) {
      result.status = RunStatus::step_limit;
      break;
    }
    double target = config.t_end;
    if (next_snap < snap_times.size()) target = std::min(target, snap_times[next_snap]);
    const double cap = target - state.t;
    state = step(state, scheme, op, cap);
    if (state.diverged) {
      proxy = record(sample(state, op, bank, config.diagnostics, reference));
      break;
    }
    if (state.dt == cap) state.t = target;  // land exactly on the requested time
    take_snapshots();
    if (state.step_count % config.diagnostics.cadence == 0 || state.t >= config.t_end) {
      proxy = record(sample(state, op, bank, config.diagnostics, reference));
    }
  }

  if (proxy == ProxyState::diverged) {
    result.status = RunStatus::diverged;
  } else if (proxy != ProxyState::ok) {
    result.status = RunStatus::blowup_proxy;
  }
  result.final_state = state;
  result.lifespan = lifespan_estimate(result.series);
  if (!out_dir.empty()) {
    std::ofstream(out_dir / "criterion.txt") << criterion_report(result.series).to_text()
                                              << "# status: " << to_string(result.status) << '\n';
  }
  return result;
}

void ScanSpec::validate() const {
  base.validate();
  std::vector<std::string> errors;
  if (values.empty()) errors.push_back("scan values must not be empty");
  if (variable == ScanVariable::alpha) {
    for (double a : values) {
      if (!(a >= 0.0 && a <= base.grid.d)) errors.push_back("scan value alpha = " + format_double(a) + " outside [0, d]");
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit fit;
  fit.points = x.size();
  if (x.size() < 2 || x.size() != y.size()) return fit;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

ScanResult run_scan(const ScanSpec& spec, int workers) {
  spec.validate();
  ScanResult result;
  result.variable = spec.variable;
  result.rows.resize(spec.values.size());

  const std::filesystem::path out_dir = spec.base.output_dir;
  const auto run_row = [&](std::size_t i) {
    ScanRow& row = result.rows[i];
    row.value = spec.values[i];
    SimConfig cfg = spec.base;
    if (spec.variable == ScanVariable::alpha) {
      cfg.alpha = row.value;
    } else {
      cfg.initial.amplitude = row.value;
    }
    cfg.output_dir = out_dir.empty() ? std::string() : (out_dir / ("row_" + std::to_string(i))).string();
    try {
      const RunResult r = run(cfg);
      row.status = to_string(r.status);
      row.t_star_proxy = r.lifespan.t_star_proxy;
      const auto& last = r.series.back();
      row.int_V_at_stop = last.int_V;
      row.int_dircrit_at_stop = last.int_dir_crit;
      row.final_l2 = last.l2;
      row.final_linf = last.linf;
    } catch (const std::exception& e) {
      row.status = "error";
      row.message = e.what();
    }
  };

  const int pool = std::max(1, std::min<int>(workers, static_cast<int>(spec.values.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  for (int w = 0; w < pool; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < spec.values.size(); i = next++) run_row(i);
    });
  }
  for (auto& t : threads) t.join();

  std::vector<double> xs, ys, products;
  for (const auto& row : result.rows) {
    if (!row.t_star_proxy || row.status != "blowup_proxy") continue;
    if (spec.variable == ScanVariable::alpha) {
      if (row.value >= 1.0) continue;
      xs.push_back(std::log(1.0 + 1.0 / (1.0 - row.value)));
      ys.push_back(*row.t_star_proxy);
    } else {
      products.push_back(*row.t_star_proxy * std::abs(row.value));
    }
  }
  if (spec.variable == ScanVariable::alpha) {
    if (xs.size() >= 2) result.lifespan_fit = least_squares(xs, ys);
  } else if (!products.empty()) {
    const auto [lo, hi] = std::minmax_element(products.begin(), products.end());
    result.product_spread = *lo > 0.0 ? *hi / *lo : kInfinity;
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(out_dir / "scan.csv") << result.table_csv();
    std::ofstream(out_dir / "scan_summary.txt") << result.summary();
  }
  return result;
}

std::string ScanResult::table_csv() const {
  std::ostringstream os;
  os << "value,status,t_star_proxy,int_V_at_stop,int_dircrit_at_stop\n";
  for (const auto& r : rows) {
    os << format_double(r.value) << ',' << r.status << ','
       << (r.t_star_proxy ? format_double(*r.t_star_proxy) : std::string("none")) << ','
       << format_double(r.int_V_at_stop) << ',' << format_double(r.int_dircrit_at_stop) << '\n';
  }
  return os.str();
}

std::string ScanResult::summary() const {
  std::ostringstream os;
  os << "variable: " << (variable == ScanVariable::alpha ? "alpha" : "amplitude") << '\n';
  for (const auto& r : rows) {
    os << "value " << format_double(r.value) << ": " << r.status;
    if (r.t_star_proxy) os << ", t_star_proxy = " << format_double(*r.t_star_proxy);
    os << ", final l2 = " << format_double(r.final_l2) << ", final linf = " << format_double(r.final_linf);
    if (!r.message.empty()) os << " (" << r.message << ")";
    os << '\n';
  }
  if (lifespan_fit) {
    os << "fit t_star_proxy ~ log(1 + 1/(1 - alpha)): slope = " << format_double(lifespan_fit->slope)
       << ", intercept = " << format_double(lifespan_fit->intercept)
       << ", R^2 = " << format_double(lifespan_fit->r_squared) << ", points = " << lifespan_fit->points << '\n';
  }
  if (product_spread) {
    os << "t_star_proxy * amplitude spread (max/min) = " << format_double(*product_spread) << '\n';
  }
  os << "t_star_proxy is a fixed-grid surrogate for the lifespan, not a certified blow-up time.\n";
  return os.str();
}

}  // namespace fst
