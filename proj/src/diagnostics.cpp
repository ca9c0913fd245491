#include "fst/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fst/fft.hpp"
#include "fst/norms.hpp"
#include "fst/operators.hpp"

namespace fst {

void BlowupProxyConfig::validate() const {
  if (!(norm_factor > 1.0)) throw std::invalid_argument("proxy norm factor must exceed 1");
  if (!(tail_threshold > 0.0 && tail_threshold < 1.0)) {
    throw std::invalid_argument("proxy tail threshold must lie in (0, 1)");
  }
}

void DiagnosticsSpec::validate(int d) const {
  for (double p : lp) {
    if (!(p >= 1.0)) throw std::invalid_argument("Lebesgue exponents must be >= 1");
  }
  for (const auto& b : besov) b.validate(d);
  for (double a : log_lipschitz) {
    if (!(a >= 0.0)) throw std::invalid_argument("log-Lipschitz exponents must be >= 0");
  }
  if (cadence < 1) throw std::invalid_argument("diagnostics cadence must be >= 1");
  proxy.validate();
}

const char* to_string(ProxyState state) {
  switch (state) {
    case ProxyState::ok: return "ok";
    case ProxyState::fired_norm: return "fired_norm";
    case ProxyState::fired_tail: return "fired_tail";
    case ProxyState::diverged: return "diverged";
  }
  return "unknown";
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string label(double value) {
  if (std::isinf(value)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

}  // namespace

void DiagnosticsSeries::append(DiagnosticsRecord record) {
  if (!records_.empty()) {
    const DiagnosticsRecord& prev = records_.back();
    if (!(record.time > prev.time)) throw std::invalid_argument("diagnostics times must increase");
    const double h = record.time - prev.time;
    record.int_V = prev.int_V + 0.5 * h * (prev.V + record.V);
    record.int_dir_crit = prev.int_dir_crit + 0.5 * h * (prev.dir_crit + record.dir_crit);
  } else {
    record.int_V = 0.0;
    record.int_dir_crit = 0.0;
  }
  records_.push_back(std::move(record));
}

std::string DiagnosticsSeries::csv_header() const {
  std::ostringstream os;
  os << "time,dt,l2,linf";
  for (double p : spec_.lp) os << ",lp:" << label(p);
  for (const auto& b : spec_.besov) {
    os << ',' << (b.homogeneous ? "hbesov:" : "besov:") << label(b.s) << '_' << label(b.p) << '_' << label(b.r);
  }
  for (double a : spec_.log_lipschitz) os << ",ll:" << label(a);
  os << ",V,int_V,dir_crit,int_dir_crit,tail_frac,proxy_state";
  return os.str();
}

std::string DiagnosticsSeries::csv_row(const DiagnosticsRecord& r) {
  std::ostringstream os;
  os << format_double(r.time) << ',' << format_double(r.dt) << ',' << format_double(r.l2) << ','
     << format_double(r.linf);
  for (double v : r.lp) os << ',' << format_double(v);
  for (double v : r.besov) os << ',' << format_double(v);
  for (double v : r.log_lipschitz) os << ',' << format_double(v);
  os << ',' << format_double(r.V) << ',' << format_double(r.int_V) << ',' << format_double(r.dir_crit) << ','
     << format_double(r.int_dir_crit) << ',' << format_double(r.tail_frac) << ',' << to_string(r.proxy_state);
  return os.str();
}

void DiagnosticsSeries::write_csv(std::ostream& os) const {
  os << csv_header() << '\n';
  for (const auto& r : records_) os << csv_row(r) << '\n';
}

double spectral_tail_fraction(const RealField& f) {
  const Lattice& lat = lattice(f.grid);
  Eigen::ArrayXd energy = detail::forward(f.grid, f.values).abs2();
  energy(0) = 0.0;
  const double total = pairwise_sum(energy);
  if (total == 0.0) return 0.0;
  const Eigen::ArrayXd tail = (lat.kabs > f.grid.n / 3.0).select(energy, 0.0);
  return pairwise_sum(tail) / total;
}

double proxy_norm(const DyadicFilterBank& bank, double alpha, const RealField& rho) {
  return besov_norm(bank, BesovParams{1.0 - alpha, kInfinity, 1.0, false}, rho);
}

DiagnosticsRecord sample(const SolverState& state, const StokesOperator& op, const DyadicFilterBank& bank,
                         const DiagnosticsSpec& spec, double reference_norm) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const RealField& rho = state.rho;
  require_same_grid(op.grid(), rho.grid, "sample");
  require_same_grid(bank.grid(), rho.grid, "sample");

  DiagnosticsRecord rec;
  rec.time = state.t;
  rec.dt = state.dt;
  if (state.diverged || !rho.values.allFinite()) {
    rec.l2 = rec.linf = rec.V = rec.dir_crit = rec.tail_frac = rec.proxy_norm = nan;
    rec.lp.assign(spec.lp.size(), nan);
    rec.besov.assign(spec.besov.size(), nan);
    rec.log_lipschitz.assign(spec.log_lipschitz.size(), nan);
    rec.proxy_state = ProxyState::diverged;
    if (state.diverged && std::isfinite(state.diverged_time)) rec.time = state.diverged_time;
    return rec;
  }

  const Grid& grid = rho.grid;
  const double alpha = op.alpha();
  rec.l2 = lp_norm(rho, 2.0);
  rec.linf = lp_norm(rho, kInfinity);
  for (double p : spec.lp) rec.lp.push_back(lp_norm(rho, p));

  // Block norms of rho, shared by every Besov column with the same p.
  const std::vector<RealField> blocks = dyadic_blocks(bank, rho);
  std::map<double, std::vector<double>> norms_by_p;
  const auto norms_for = [&](double p) -> const std::vector<double>& {
    auto it = norms_by_p.find(p);
    if (it == norms_by_p.end()) {
      std::vector<double> norms;
      for (const auto& b : blocks) norms.push_back(lp_norm(b, p));
      it = norms_by_p.emplace(p, std::move(norms)).first;
    }
    return it->second;
  };
  for (const auto& b : spec.besov) {
    if (b.homogeneous) {
      rec.besov.push_back(besov_norm(bank, b, rho));
    } else {
      rec.besov.push_back(besov_from_block_norms(norms_for(b.p), b.s, b.r));
    }
  }
  rec.proxy_norm = besov_from_block_norms(norms_for(kInfinity), 1.0 - alpha, 1.0);
  for (double a : spec.log_lipschitz) rec.log_lipschitz.push_back(log_lipschitz_norm(bank, a, rho));

  const double tracking_s = spec.tracking_s.value_or(1.0 - alpha);
  const VectorField u = stokes_velocity(op, rho);
  rec.V = jacobian_linf(u);
  if (tracking_s >= 1.0) rec.V += gradient_linf(rho);

  const RealField d_rho = partial_derivative(rho, grid.gravity_axis());
  rec.dir_crit = besov_norm(bank, BesovParams{-alpha, kInfinity, 1.0, false}, d_rho);
  rec.tail_frac = spectral_tail_fraction(rho);

  const bool finite = std::isfinite(rec.V) && std::isfinite(rec.dir_crit) && std::isfinite(rec.proxy_norm) &&
                      std::isfinite(rec.tail_frac);
  if (!finite) {
    rec.proxy_state = ProxyState::diverged;
  } else if (reference_norm > 0.0 && rec.proxy_norm > spec.proxy.norm_factor * reference_norm) {
    rec.proxy_state = ProxyState::fired_norm;
  } else if (rec.tail_frac > spec.proxy.tail_threshold) {
    rec.proxy_state = ProxyState::fired_tail;
  }
  return rec;
}

LifespanEstimate lifespan_estimate(const DiagnosticsSeries& series) {
  if (series.empty()) throw std::invalid_argument("lifespan_estimate: empty series");
  for (const auto& r : series.records()) {
    if (r.proxy_state != ProxyState::ok) return {r.time, r.proxy_state};
  }
  return {};
}

CriterionReport criterion_report(const DiagnosticsSeries& series) {
  CriterionReport report;
  for (const auto& r : series.records()) {
    const CriterionPoint point{r.time, r.int_V, r.int_dir_crit};
    report.history.push_back(point);
    if (r.proxy_state != ProxyState::ok && !report.at_fire) {
      report.at_fire = point;
      report.trigger = r.proxy_state;
    }
  }
  return report;
}

std::string CriterionReport::to_text() const {
  std::ostringstream os;
  os << "time,int_V,int_dir_crit\n";
  for (const auto& p : history) {
    os << format_double(p.time) << ',' << format_double(p.int_V) << ',' << format_double(p.int_dir_crit) << '\n';
  }
  if (at_fire) {
    os << "# proxy (" << to_string(trigger) << ") at t = " << format_double(at_fire->time)
       << ": int_V = " << format_double(at_fire->int_V)
       << ", int_dir_crit = " << format_double(at_fire->int_dir_crit) << '\n';
  } else {
    os << "# proxy did not fire\n";
  }
  return os.str();
}

}  // namespace fst
