#include "fst/multiplier.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fst {

namespace {

double norm2(const Wavevector& k) {
  return static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] +
         static_cast<double>(k[2]) * k[2];
}

std::string describe(const Wavevector& k, int d) {
  std::ostringstream os;
  os << '(';
  for (int a = 0; a < d; ++a) os << (a ? "," : "") << k[a];
  os << ')';
  return os.str();
}

std::complex<double> zero_mode(const MultiplierSpec& spec) {
  switch (spec.zero_mode_rule) {
    case ZeroModeRule::zero: return {0.0, 0.0};
    case ZeroModeRule::identity: return {1.0, 0.0};
    case ZeroModeRule::explicit_value: return spec.zero_mode_value;
  }
  return {0.0, 0.0};
}

}  // namespace

MultiplierSpec MultiplierSpec::fractional_laplacian(double s) {
  MultiplierSpec spec;
  spec.symbol = [s](const Wavevector& k) { return std::complex<double>(std::pow(norm2(k), s / 2.0)); };
  spec.zero_mode_rule = s == 0.0 ? ZeroModeRule::identity : ZeroModeRule::zero;
  return spec;
}

MultiplierSpec MultiplierSpec::derivative(int axis, int n) {
  MultiplierSpec spec;
  spec.symbol = [axis, n](const Wavevector& k) {
    const int ka = k[axis] == -n / 2 ? 0 : k[axis];
    return std::complex<double>(0.0, ka);
  };
  spec.zero_mode_rule = ZeroModeRule::zero;
  return spec;
}

MultiplierSpec MultiplierSpec::leray_entry(int i, int j) {
  MultiplierSpec spec;
  spec.symbol = [i, j](const Wavevector& k) {
    const double delta = i == j ? 1.0 : 0.0;
    return std::complex<double>(delta - static_cast<double>(k[i]) * k[j] / norm2(k));
  };
  spec.zero_mode_rule = i == j ? ZeroModeRule::identity : ZeroModeRule::zero;
  return spec;
}

MultiplierSpec compose(const MultiplierSpec& a, const MultiplierSpec& b) {
  MultiplierSpec out;
  out.symbol = [sa = a.symbol, sb = b.symbol](const Wavevector& k) { return sa(k) * sb(k); };
  out.zero_mode_rule = ZeroModeRule::explicit_value;
  out.zero_mode_value = zero_mode(a) * zero_mode(b);
  return out;
}

Eigen::ArrayXcd tabulate(const MultiplierSpec& spec, const Grid& grid) {
  Eigen::ArrayXcd table(static_cast<Eigen::Index>(grid.size()));
  table(0) = zero_mode(spec);
  for (Eigen::Index idx = 1; idx < table.size(); ++idx) {
    const Wavevector k = wavevector(grid, static_cast<std::size_t>(idx));
    const std::complex<double> value = spec.symbol(k);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw std::domain_error("multiplier symbol is not finite at k = " + describe(k, grid.d));
    }
    table(idx) = value;
  }
  return table;
}

SpectralField apply_multiplier(const MultiplierSpec& spec, const SpectralField& f) {
  SpectralField out(f.grid);
  out.coeffs(0) = zero_mode(spec) * f.coeffs(0);
  for (Eigen::Index idx = 1; idx < f.coeffs.size(); ++idx) {
    if (f.coeffs(idx) == std::complex<double>(0.0, 0.0)) continue;
    const Wavevector k = wavevector(f.grid, static_cast<std::size_t>(idx));
    const std::complex<double> value = spec.symbol(k);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw std::domain_error("multiplier symbol is not finite at k = " + describe(k, f.grid.d));
    }
    out.coeffs(idx) = value * f.coeffs(idx);
  }
  return out;
}

}  // namespace fst
