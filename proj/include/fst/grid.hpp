#pragma once

#include <array>
#include <cstddef>
#include <numbers>

#include <Eigen/Core>

namespace fst {

inline constexpr int kMaxDim = 3;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Integer wavevector; entries past the grid dimension are zero.
using Wavevector = std::array<int, kMaxDim>;

/// Uniform periodic grid on [0, 2pi)^d, n points per axis.
///
/// Storage is row-major: axis 0 (x_1) varies slowest and the last axis, which
/// is also the gravity axis, varies fastest.
struct Grid {
  int d = 2;
  int n = 64;

  Grid() = default;
  Grid(int d, int n);

  std::size_t size() const;
  double spacing() const { return kTwoPi / n; }
  double cell_volume() const;
  double volume() const;
  int gravity_axis() const { return d - 1; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Wavevector carried by flat index `flat` of a spectral array, components in
/// {-n/2, ..., n/2 - 1}.
Wavevector wavevector(const Grid& grid, std::size_t flat);

/// Inverse of wavevector(); components are reduced modulo n first.
std::size_t flat_index(const Grid& grid, const Wavevector& k);

/// Per-grid tables used by every multiplier. Built once and shared.
struct Lattice {
  std::array<Eigen::ArrayXd, kMaxDim> k;      // signed wavenumber per axis
  std::array<Eigen::ArrayXd, kMaxDim> k_odd;  // same, Nyquist plane zeroed
  std::array<Eigen::ArrayXd, kMaxDim> x;      // physical coordinate per axis
  Eigen::ArrayXd k2;                          // |k|^2
  Eigen::ArrayXd k2_odd;                      // sum of k_odd^2
  Eigen::ArrayXd kabs;                        // |k|
  Eigen::ArrayXd dealias_mask;                // 1 where every |k_a| <= n/3
};

/// Cached lattice tables for `grid`; thread-safe, references stay valid.
const Lattice& lattice(const Grid& grid);

}  // namespace fst
