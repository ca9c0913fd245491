#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fst/littlewood_paley.hpp"
#include "fst/transport.hpp"
#include "fst/velocity_law.hpp"

namespace fst {

/// Discrete surrogate for loss of regularity. Fires when
/// ||rho||_{B^{1-alpha}_{inf,1}} exceeds norm_factor times its initial value,
/// or when the fraction of fluctuation energy in |k| > n/3 exceeds
/// tail_threshold, whichever comes first.
struct BlowupProxyConfig {
  double norm_factor = 100.0;
  double tail_threshold = 0.1;

  void validate() const;
  friend bool operator==(const BlowupProxyConfig&, const BlowupProxyConfig&) = default;
};

struct DiagnosticsSpec {
  std::vector<double> lp = {4.0};
  std::vector<BesovParams> besov = {BesovParams{0.0, kInfinity, 1.0, false}};
  std::vector<double> log_lipschitz;
  /// Regularity tracked by V(t); unset means 1 - alpha.
  std::optional<double> tracking_s;
  int cadence = 10;
  BlowupProxyConfig proxy;

  void validate(int d) const;
  friend bool operator==(const DiagnosticsSpec&, const DiagnosticsSpec&) = default;
};

enum class ProxyState { ok, fired_norm, fired_tail, diverged };

const char* to_string(ProxyState state);

struct DiagnosticsRecord {
  double time = 0.0;
  double dt = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  std::vector<double> lp;
  std::vector<double> besov;
  std::vector<double> log_lipschitz;
  double V = 0.0;
  double int_V = 0.0;
  double dir_crit = 0.0;
  double int_dir_crit = 0.0;
  double tail_frac = 0.0;
  double proxy_norm = 0.0;  // ||rho||_{B^{1-alpha}_{inf,1}}
  ProxyState proxy_state = ProxyState::ok;
};

/// Time-ordered records with running trapezoid integrals of V and dir_crit.
class DiagnosticsSeries {
 public:
  DiagnosticsSeries() = default;
  explicit DiagnosticsSeries(DiagnosticsSpec spec) : spec_(std::move(spec)) {}

  /// Fills int_V and int_dir_crit from the previous record. Throws if time
  /// does not increase.
  void append(DiagnosticsRecord record);

  const DiagnosticsSpec& spec() const { return spec_; }
  const std::vector<DiagnosticsRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  const DiagnosticsRecord& back() const { return records_.back(); }

  std::string csv_header() const;
  static std::string csv_row(const DiagnosticsRecord& record);
  void write_csv(std::ostream& os) const;

 private:
  DiagnosticsSpec spec_;
  std::vector<DiagnosticsRecord> records_;
};

/// Fraction of the non-mean energy carried by modes with |k| > n/3.
double spectral_tail_fraction(const RealField& f);

/// ||rho||_{B^{1-alpha}_{inf,1}}, the norm watched by the proxy.
double proxy_norm(const DyadicFilterBank& bank, double alpha, const RealField& rho);

/// One record for `state`. `reference_norm` is proxy_norm of the initial
/// datum; a zero reference disables the norm trigger. Non-finite values flip
/// the proxy state to diverged instead of throwing.
DiagnosticsRecord sample(const SolverState& state, const StokesOperator& op, const DyadicFilterBank& bank,
                         const DiagnosticsSpec& spec, double reference_norm);

struct LifespanEstimate {
  std::optional<double> t_star_proxy;
  ProxyState trigger = ProxyState::ok;
};

/// First sampled time at which the proxy fired (no interpolation).
LifespanEstimate lifespan_estimate(const DiagnosticsSeries& series);

struct CriterionPoint {
  double time = 0.0;
  double int_V = 0.0;
  double int_dir_crit = 0.0;
};

struct CriterionReport {
  std::vector<CriterionPoint> history;
  std::optional<CriterionPoint> at_fire;
  ProxyState trigger = ProxyState::ok;

  std::string to_text() const;
};

CriterionReport criterion_report(const DiagnosticsSeries& series);

/// printf("%.17g") with "inf"/"nan" spelled out.
std::string format_double(double value);

}  // namespace fst
