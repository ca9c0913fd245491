#include "fst/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "fst/littlewood_paley.hpp"

namespace fst {

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error([&] {
        std::string joined = "invalid configuration:";
        for (const auto& e : errors) joined += "\n  " + e;
        return joined;
      }()),
      errors_(std::move(errors)) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s == "inf" || s == "+inf") return kInfinity;
  if (s == "-inf") return -kInfinity;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

template <typename Int>
std::optional<Int> to_integer(std::string_view s) {
  s = trim(s);
  Int value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::optional<std::vector<double>> to_double_list(std::string_view s) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  for (auto part : split(s, ',')) {
    const auto v = to_double(part);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + format_double(values[i]);
  return out;
}

const char* regularization_name(RegularizationKind kind) {
  switch (kind) {
    case RegularizationKind::none: return "none";
    case RegularizationKind::friedrichs: return "friedrichs";
    case RegularizationKind::bandpass: return "bandpass";
  }
  return "none";
}

bool known_preset(const std::string& name) {
  return name == "stratified_sin" || name == "shear_sin" || name == "perturbed_stratification" ||
         name == "random_smooth" || name == "from_file";
}

bool known_profile(const std::string& name) { return name == "sin" || name == "cos"; }

using Issue = std::pair<std::string, std::string>;  // key, message

std::vector<Issue> validation_issues(const SimConfig& c) {
  std::vector<Issue> issues;
  const auto check = [&](bool ok, const char* key, std::string message) {
    if (!ok) issues.emplace_back(key, std::move(message));
  };
  const bool grid_ok = c.grid.d >= 2 && c.grid.d <= kMaxDim;
  check(grid_ok, "grid.d", "grid.d must be 2 or 3");
  check(c.grid.n >= 8 && (c.grid.n & (c.grid.n - 1)) == 0, "grid.n", "grid.n must be a power of two >= 8");
  check(c.alpha >= 0.0 && c.alpha <= c.grid.d, "alpha", "alpha must lie in [0, d]");
  check(c.t_end >= 0.0 && std::isfinite(c.t_end), "t_end", "t_end must be finite and >= 0");
  check(c.dt > 0.0, "scheme.dt", "scheme.dt must be positive");
  check(c.cfl > 0.0 && c.cfl <= 1.0, "scheme.cfl", "scheme.cfl must lie in (0, 1]");
  check(c.max_steps >= 1, "scheme.max_steps", "scheme.max_steps must be >= 1");
  if (c.regularization.kind == RegularizationKind::friedrichs) {
    check(c.regularization.n_cut > 0.0, "scheme.n_cut", "scheme.n_cut must be positive");
  }
  if (c.regularization.kind == RegularizationKind::bandpass && c.grid.n >= 8 && (c.grid.n & (c.grid.n - 1)) == 0) {
    const int j_max = static_cast<int>(std::ceil(std::log2(c.grid.n / 2.0)));
    check(c.regularization.bandpass_n >= 0 && c.regularization.bandpass_n <= j_max, "scheme.bandpass_n",
          "scheme.bandpass_n must lie in [0, " + std::to_string(j_max) + "]");
  }
  check(known_preset(c.initial.preset), "initial.preset",
        "unknown initial preset '" + c.initial.preset +
            "' (stratified_sin, shear_sin, perturbed_stratification, random_smooth, from_file)");
  check(std::isfinite(c.initial.amplitude), "initial.amplitude", "initial.amplitude must be finite");
  check(c.initial.epsilon >= 0.0, "initial.epsilon", "initial.epsilon must be >= 0");
  check(c.initial.k0 > 0.0, "initial.k0", "initial.k0 must be positive");
  check(known_profile(c.initial.profile), "initial.profile", "initial.profile must be sin or cos");
  if (c.initial.preset == "from_file") {
    check(!c.initial.file.empty() && std::filesystem::exists(c.initial.file), "initial.file",
          "initial.file '" + c.initial.file + "' does not exist");
  }
  check(c.equilibrium.profile == "none" || known_profile(c.equilibrium.profile), "equilibrium.profile",
        "equilibrium.profile must be none, sin or cos");
  check(std::isfinite(c.equilibrium.amplitude), "equilibrium.amplitude", "equilibrium.amplitude must be finite");
  for (double t : c.snapshot_times) check(t >= 0.0, "output.snapshots", "snapshot times must be >= 0");
  if (grid_ok) {
    try {
      c.diagnostics.validate(c.grid.d);
    } catch (const std::exception& e) {
      issues.emplace_back("diagnostics", e.what());
    }
  }
  return issues;
}

struct Parser {
  SimConfig config;
  std::vector<std::string> errors;
  std::map<std::string, int> seen;  // key -> line
  int line = 0;

  void error(const std::string& message) { errors.push_back("line " + std::to_string(line) + ": " + message); }

  void mismatch(const std::string& key, const char* expected, std::string_view value) {
    error("key '" + key + "' expects " + expected + ", got '" + std::string(value) + "'");
  }

  void set_double(const std::string& key, std::string_view v, double& out) {
    if (auto d = to_double(v)) out = *d; else mismatch(key, "a number", v);
  }
  template <typename Int>
  void set_int(const std::string& key, std::string_view v, Int& out) {
    if (auto i = to_integer<Int>(v)) out = *i; else mismatch(key, "an integer", v);
  }
  void set_double_list(const std::string& key, std::string_view v, std::vector<double>& out) {
    if (auto l = to_double_list(v)) out = *l; else mismatch(key, "a comma-separated list of numbers", v);
  }

  void assign(const std::string& key, std::string_view v) {
    SimConfig& c = config;
    if (key == "alpha") set_double(key, v, c.alpha);
    else if (key == "t_end") set_double(key, v, c.t_end);
    else if (key == "seed") set_int(key, v, c.seed);
    else if (key == "grid.d") set_int(key, v, c.grid.d);
    else if (key == "grid.n") set_int(key, v, c.grid.n);
    else if (key == "scheme.dt_rule") {
      if (v == "cfl") c.dt_rule = DtRule::cfl_adaptive;
      else if (v == "fixed") c.dt_rule = DtRule::fixed;
      else mismatch(key, "'cfl' or 'fixed'", v);
    } else if (key == "scheme.dt") set_double(key, v, c.dt);
    else if (key == "scheme.cfl") set_double(key, v, c.cfl);
    else if (key == "scheme.max_steps") set_int(key, v, c.max_steps);
    else if (key == "scheme.regularization") {
      if (v == "none") c.regularization.kind = RegularizationKind::none;
      else if (v == "friedrichs") c.regularization.kind = RegularizationKind::friedrichs;
      else if (v == "bandpass") c.regularization.kind = RegularizationKind::bandpass;
      else mismatch(key, "'none', 'friedrichs' or 'bandpass'", v);
    } else if (key == "scheme.n_cut") set_double(key, v, c.regularization.n_cut);
    else if (key == "scheme.bandpass_n") set_int(key, v, c.regularization.bandpass_n);
    else if (key == "initial.preset") c.initial.preset = std::string(v);
    else if (key == "initial.amplitude") set_double(key, v, c.initial.amplitude);
    else if (key == "initial.epsilon") set_double(key, v, c.initial.epsilon);
    else if (key == "initial.k0") set_double(key, v, c.initial.k0);
    else if (key == "initial.profile") c.initial.profile = std::string(v);
    else if (key == "initial.file") c.initial.file = std::string(v);
    else if (key == "equilibrium.profile") c.equilibrium.profile = std::string(v);
    else if (key == "equilibrium.amplitude") set_double(key, v, c.equilibrium.amplitude);
    else if (key == "diagnostics.cadence") set_int(key, v, c.diagnostics.cadence);
    else if (key == "diagnostics.lp") set_double_list(key, v, c.diagnostics.lp);
    else if (key == "diagnostics.ll") set_double_list(key, v, c.diagnostics.log_lipschitz);
    else if (key == "diagnostics.besov") {
      std::vector<BesovParams> list;
      bool ok = true;
      if (!trim(v).empty()) {
        for (auto triple : split(v, ';')) {
          try {
            list.push_back(parse_besov_triple(triple));
          } catch (const std::exception&) {
            ok = false;
          }
        }
      }
      if (ok) c.diagnostics.besov = list; else mismatch(key, "'s,p,r' triples separated by ';'", v);
    } else if (key == "diagnostics.tracking_s") {
      if (v == "auto") c.diagnostics.tracking_s.reset();
      else if (auto d = to_double(v)) c.diagnostics.tracking_s = *d;
      else mismatch(key, "a number or 'auto'", v);
    } else if (key == "proxy.norm_factor") set_double(key, v, c.diagnostics.proxy.norm_factor);
    else if (key == "proxy.tail_threshold") set_double(key, v, c.diagnostics.proxy.tail_threshold);
    else if (key == "output.dir") c.output_dir = std::string(v);
    else if (key == "output.snapshots") set_double_list(key, v, c.snapshot_times);
    else error("unknown key '" + key + "'");
  }
};

}  // namespace

BesovParams parse_besov_triple(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw std::invalid_argument("Besov triple needs three entries 's,p,r'");
  const auto s = to_double(parts[0]), p = to_double(parts[1]), r = to_double(parts[2]);
  if (!s || !p || !r) throw std::invalid_argument("Besov triple entries must be numbers");
  return BesovParams{*s, *p, *r, false};
}

double evaluate_profile(const std::string& name, double x) {
  if (name == "sin") return std::sin(x);
  if (name == "cos") return std::cos(x);
  throw std::invalid_argument("unknown profile '" + name + "'");
}

void SimConfig::validate() const {
  std::vector<std::string> messages;
  for (const auto& [key, message] : validation_issues(*this)) messages.push_back(key + ": " + message);
  if (!messages.empty()) throw ConfigError(std::move(messages));
}

SimConfig parse_config(std::string_view text) {
  Parser parser;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++parser.line;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (!raw.empty()) {
      const auto eq = raw.find('=');
      if (eq == std::string_view::npos) {
        parser.error("expected 'key = value', got '" + std::string(raw) + "'");
      } else {
        const std::string key(trim(raw.substr(0, eq)));
        if (parser.seen.count(key)) {
          parser.error("duplicate key '" + key + "' (first set on line " + std::to_string(parser.seen[key]) + ")");
        } else {
          parser.seen[key] = parser.line;
          parser.assign(key, trim(raw.substr(eq + 1)));
        }
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  // Range checks only make sense on values that parsed.
  for (const auto& [key, message] : validation_issues(parser.config)) {
    auto it = parser.seen.find(key);
    if (it == parser.seen.end() && key == "diagnostics") {
      for (const auto& [k, l] : parser.seen) {
        if (k.rfind("diagnostics.", 0) == 0 || k.rfind("proxy.", 0) == 0) { it = parser.seen.find(k); break; }
      }
    }
    if (it != parser.seen.end()) {
      parser.errors.push_back("line " + std::to_string(it->second) + ": " + message);
    } else {
      parser.errors.push_back("default " + key + ": " + message);
    }
  }
  if (!parser.errors.empty()) throw ConfigError(std::move(parser.errors));
  return parser.config;
}

SimConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError({"cannot open config file '" + path + "'"});
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const SimConfig& c) {
  std::ostringstream os;
  os << "# resolved configuration\n";
  os << "alpha = " << format_double(c.alpha) << '\n';
  os << "t_end = " << format_double(c.t_end) << '\n';
  os << "seed = " << c.seed << '\n';
  os << "grid.d = " << c.grid.d << '\n';
  os << "grid.n = " << c.grid.n << '\n';
  os << "scheme.dt_rule = " << (c.dt_rule == DtRule::fixed ? "fixed" : "cfl") << '\n';
  os << "scheme.dt = " << format_double(c.dt) << '\n';
  os << "scheme.cfl = " << format_double(c.cfl) << '\n';
  os << "scheme.max_steps = " << c.max_steps << '\n';
  os << "scheme.regularization = " << regularization_name(c.regularization.kind) << '\n';
  os << "scheme.n_cut = " << format_double(c.regularization.n_cut) << '\n';
  os << "scheme.bandpass_n = " << c.regularization.bandpass_n << '\n';
  os << "initial.preset = " << c.initial.preset << '\n';
  os << "initial.amplitude = " << format_double(c.initial.amplitude) << '\n';
  os << "initial.epsilon = " << format_double(c.initial.epsilon) << '\n';
  os << "initial.k0 = " << format_double(c.initial.k0) << '\n';
  os << "initial.profile = " << c.initial.profile << '\n';
  os << "initial.file = " << c.initial.file << '\n';
  os << "equilibrium.profile = " << c.equilibrium.profile << '\n';
  os << "equilibrium.amplitude = " << format_double(c.equilibrium.amplitude) << '\n';
  os << "diagnostics.cadence = " << c.diagnostics.cadence << '\n';
  os << "diagnostics.lp = " << join(c.diagnostics.lp) << '\n';
  os << "diagnostics.besov = ";
  for (std::size_t i = 0; i < c.diagnostics.besov.size(); ++i) {
    const auto& b = c.diagnostics.besov[i];
    os << (i ? "; " : "") << format_double(b.s) << ", " << format_double(b.p) << ", " << format_double(b.r);
  }
  os << '\n';
  os << "diagnostics.ll = " << join(c.diagnostics.log_lipschitz) << '\n';
  os << "diagnostics.tracking_s = "
     << (c.diagnostics.tracking_s ? format_double(*c.diagnostics.tracking_s) : std::string("auto")) << '\n';
  os << "proxy.norm_factor = " << format_double(c.diagnostics.proxy.norm_factor) << '\n';
  os << "proxy.tail_threshold = " << format_double(c.diagnostics.proxy.tail_threshold) << '\n';
  os << "output.dir = " << c.output_dir << '\n';
  os << "output.snapshots = " << join(c.snapshot_times) << '\n';
  return os.str();
}

}  // namespace fst
