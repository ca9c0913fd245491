#pragma once

#include <complex>
#include <functional>

#include <Eigen/Core>

#include "fst/field.hpp"

namespace fst {

enum class ZeroModeRule { zero, identity, explicit_value };

/// Fourier multiplier: a symbol on nonzero wavevectors plus an explicit rule
/// for k = 0.
struct MultiplierSpec {
  std::function<std::complex<double>(const Wavevector&)> symbol;
  ZeroModeRule zero_mode_rule = ZeroModeRule::zero;
  std::complex<double> zero_mode_value{0.0, 0.0};

  /// |k|^s, the symbol of (-Delta)^{s/2}. Identity at k = 0 only when s = 0.
  static MultiplierSpec fractional_laplacian(double s);
  /// i k_axis with the Nyquist plane mapped to 0.
  static MultiplierSpec derivative(int axis, int n);
  /// Entry (i, j) of Id - k k^T / |k|^2; the zero mode passes through on the
  /// diagonal.
  static MultiplierSpec leray_entry(int i, int j);
};

/// Pointwise product of two multipliers (symbols and zero-mode values).
MultiplierSpec compose(const MultiplierSpec& a, const MultiplierSpec& b);

/// Evaluates the multiplier on the whole lattice. Throws std::domain_error
/// naming the wavevector when a symbol value is not finite.
Eigen::ArrayXcd tabulate(const MultiplierSpec& spec, const Grid& grid);

SpectralField apply_multiplier(const MultiplierSpec& spec, const SpectralField& f);

}  // namespace fst
